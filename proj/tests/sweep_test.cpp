#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qdiscord/sweep.hpp"

namespace qdiscord {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(SweepGrid, EndpointsAndSpacing) {
  const auto grid = sweep_grid(0.0, kPi / 4, 5);
  ASSERT_EQ(grid.size(), 5u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), kPi / 4);
  EXPECT_NEAR(grid[2], kPi / 8, 1e-15);
}

TEST(SweepGrid, Validation) {
  EXPECT_THROW(sweep_grid(0.0, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(sweep_grid(0.5, 0.1, 4), std::invalid_argument);
  EXPECT_THROW(sweep_grid(0.0, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(sweep_grid(-0.1, 0.5, 4), std::invalid_argument);
}

TEST(FormatCsvValue, SnapsTinyValuesToZero) {
  EXPECT_EQ(format_csv_value(0.0), "0");
  EXPECT_EQ(format_csv_value(-3e-13), "0");
  EXPECT_EQ(format_csv_value(0.5), "0.5");
  EXPECT_EQ(format_csv_value(0.399123963307), "0.399123963");
}

TEST(EvaluateRecord, PiOver8) {
  const SweepRecord r = evaluate_record(kPi / 8);
  EXPECT_NEAR(r.mutual_info, 0.600876036693, 1e-11);
  EXPECT_NEAR(r.classical_info, 0.399123963307, 1e-9);
  EXPECT_NEAR(r.clone_info, 0.417645341181, 1e-11);
  EXPECT_NEAR(r.diff, r.classical_info - r.clone_info, 0.0);
  EXPECT_TRUE(record_invariants_hold(r));
}

TEST(EvaluatePoint, ReportsBothRoutes) {
  const PointReport p = evaluate_point(0.05 * kPi);
  EXPECT_NEAR(p.record.classical_info, p.classical_info_kw, 1e-4);
}

TEST(RecordInvariants, DetectBrokenIdentity) {
  SweepRecord r{0.1, 1.0, 0.6, 0.3, 0.5, 0.1};
  EXPECT_FALSE(record_invariants_hold(r));
  r.discord = 0.4;
  EXPECT_TRUE(record_invariants_hold(r));
  r.clone_info = -0.1;
  EXPECT_FALSE(record_invariants_hold(r));
}

TEST(RunSweep, OrderedAndMatchesSerialEvaluation) {
  const auto grid = sweep_grid(0.0, kPi / 4, 9);
  const auto records = run_sweep(grid);
  ASSERT_EQ(records.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SweepRecord serial = evaluate_record(grid[i]);
    EXPECT_EQ(records[i].theta, grid[i]);
    EXPECT_EQ(records[i].classical_info, serial.classical_info);
    EXPECT_EQ(records[i].clone_info, serial.clone_info);
  }
}

TEST(WriteSweepCsv, HeaderAndRows) {
  const std::vector<SweepRecord> records{{0.0, 1.0, 1.0, 0.0, 1.0, 0.0},
                                         {0.5, 0.25, 0.125, 0.125, 0.0625, 0.0625}};
  std::ostringstream out;
  write_sweep_csv(out, records);
  EXPECT_EQ(out.str(),
            "theta,I,Ic,discord,I_clone,diff\n"
            "0,1,1,0,1,0\n"
            "0.5,0.25,0.125,0.125,0.0625,0.0625\n");
}

TEST(CountSignChanges, IgnoresZeroBand) {
  const std::vector<double> a{1.0, 0.5, 1e-13, -0.2, -0.4};
  EXPECT_EQ(count_sign_changes(a), 1);
  const std::vector<double> b{1.0, -1.0, 1.0};
  EXPECT_EQ(count_sign_changes(b), 2);
  const std::vector<double> c{0.0, 0.0};
  EXPECT_EQ(count_sign_changes(c), 0);
}

}  // namespace
}  // namespace qdiscord
