#include <gtest/gtest.h>

#include <cmath>

#include "qdiscord/nelder_mead.hpp"

namespace qdiscord {
namespace {

TEST(NelderMead, Quadratic) {
  const auto result = nelder_mead(
      [](const std::array<double, 2>& x) {
        return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 0.5) * (x[1] + 0.5);
      },
      std::array<double, 2>{0.0, 0.0}, {0.5, 1e-14, 2000});
  EXPECT_TRUE(result.converged);
  EXPECT_NEAR(result.point[0], 1.0, 1e-5);
  EXPECT_NEAR(result.point[1], -0.5, 1e-5);
}

TEST(NelderMead, Rosenbrock) {
  const auto result = nelder_mead(
      [](const std::array<double, 2>& x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
      },
      std::array<double, 2>{-1.2, 1.0}, {0.1, 1e-16, 5000});
  EXPECT_NEAR(result.point[0], 1.0, 1e-4);
  EXPECT_NEAR(result.point[1], 1.0, 1e-4);
}

TEST(NelderMead, IterationCapStops) {
  const auto result = nelder_mead([](const std::array<double, 1>& x) { return -x[0]; },
                                  std::array<double, 1>{0.0}, {1.0, 1e-10, 25});
  EXPECT_FALSE(result.converged);
  EXPECT_EQ(result.iterations, 25);
}

TEST(NelderMead, FlatObjectiveConvergesImmediately) {
  int calls = 0;
  const auto result = nelder_mead(
      [&](const std::array<double, 3>&) {
        ++calls;
        return 2.0;
      },
      std::array<double, 3>{0.0, 0.0, 0.0});
  EXPECT_TRUE(result.converged);
  EXPECT_EQ(result.iterations, 0);
  EXPECT_EQ(calls, 4);
}

TEST(NelderMead, Deterministic) {
  auto f = [](const std::array<double, 2>& x) { return std::sin(3 * x[0]) + std::cos(2 * x[1]); };
  const auto a = nelder_mead(f, std::array<double, 2>{0.3, 0.2});
  const auto b = nelder_mead(f, std::array<double, 2>{0.3, 0.2});
  EXPECT_EQ(a.point, b.point);
  EXPECT_EQ(a.value, b.value);
}

}  // namespace
}  // namespace qdiscord
