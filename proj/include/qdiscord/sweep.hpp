#pragma once

// Per-angle records for the example family and their CSV serialization.

#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qdiscord/correlations.hpp"
#include "qdiscord/koashi_winter.hpp"
#include "qdiscord/protocols.hpp"

namespace qdiscord {

struct SweepRecord {
  double theta = 0.0;
  double mutual_info = 0.0;     // I(S:A)
  double classical_info = 0.0;  // I^c, optimizer route
  double discord = 0.0;
  double clone_info = 0.0;      // I(S:R1) under state-dependent cloning
  double diff = 0.0;            // classical_info - clone_info
};

struct PointReport {
  SweepRecord record;
  double classical_info_kw = 0.0;  // I^c, Koashi-Winter route
};

inline SweepRecord evaluate_record(double theta, const CorrelationOptions& options = {}) {
  const ExampleStateParams params(theta);
  const CorrelationReport report = classical_correlation(example_state(params), options);
  SweepRecord r;
  r.theta = params.theta();
  r.mutual_info = report.mutual_info;
  r.classical_info = report.classical_info;
  r.discord = report.discord;
  r.clone_info = cloning_recipient_info(params.theta());
  r.diff = r.classical_info - r.clone_info;
  return r;
}

inline PointReport evaluate_point(double theta, const CorrelationOptions& options = {}) {
  PointReport p;
  p.record = evaluate_record(theta, options);
  p.classical_info_kw = classical_correlation_kw(example_state(p.record.theta));
  return p;
}

/// I^c + discord = I and every entropic field >= -tolerance.
inline bool record_invariants_hold(const SweepRecord& r, double tolerance = 1e-8) {
  if (std::abs(r.classical_info + r.discord - r.mutual_info) > tolerance) return false;
  for (double v : {r.mutual_info, r.classical_info, r.discord, r.clone_info})
    if (v < -tolerance) return false;
  return true;
}

/// Uniform grid of `steps` angles from theta_min to theta_max inclusive.
inline std::vector<double> sweep_grid(double theta_min, double theta_max, int steps) {
  constexpr double kSlack = 1e-12;
  if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
  if (!(theta_min >= -kSlack && theta_min < theta_max && theta_max <= kMaxExampleAngle + kSlack)) {
    throw std::invalid_argument("sweep: need 0 <= theta_min < theta_max <= pi/4");
  }
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    grid[static_cast<std::size_t>(i)] =
        i == steps - 1 ? theta_max : theta_min + (theta_max - theta_min) * i / (steps - 1);
  return grid;
}

/// Rows are evaluated concurrently and returned in grid order.
inline std::vector<SweepRecord> run_sweep(std::span<const double> grid,
                                          const CorrelationOptions& options = {}) {
  std::vector<SweepRecord> records(grid.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), grid.size()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < grid.size(); i += workers)
        records[i] = evaluate_record(grid[i], options);
    }));
  }
  for (auto& job : jobs) job.get();
  return records;
}

/// Nine significant digits; magnitudes below 1e-12 print as 0.
inline std::string format_csv_value(double value) {
  if (std::abs(value) < 1e-12) value = 0.0;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

inline constexpr const char* kSweepCsvHeader = "theta,I,Ic,discord,I_clone,diff";

inline void write_sweep_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : records) {
    out << format_csv_value(r.theta) << ',' << format_csv_value(r.mutual_info) << ','
        << format_csv_value(r.classical_info) << ',' << format_csv_value(r.discord) << ','
        << format_csv_value(r.clone_info) << ',' << format_csv_value(r.diff) << '\n';
  }
}

/// Number of strict sign changes in a sequence, ignoring entries with
/// magnitude <= zero_band.
inline int count_sign_changes(std::span<const double> values, double zero_band = 1e-12) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    const int sign = v > zero_band ? 1 : (v < -zero_band ? -1 : 0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

}  // namespace qdiscord
