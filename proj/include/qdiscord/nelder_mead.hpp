#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>

namespace qdiscord {

struct SimplexOptions {
  double initial_step = 0.1;
  double objective_tolerance = 1e-10;  // stop when f_worst - f_best <= this
  int max_iterations = 500;
};

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> point{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Deterministic Nelder-Mead minimization with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). The initial
/// simplex is `start` plus `initial_step` along each coordinate axis.
template <std::size_t N, typename F>
SimplexResult<N> nelder_mead(F&& objective, const std::array<double, N>& start,
                             const SimplexOptions& options = {}) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> vertex;
  std::array<double, N + 1> value;
  vertex[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    vertex[i + 1] = start;
    vertex[i + 1][i] += options.initial_step;
  }
  for (std::size_t i = 0; i <= N; ++i) value[i] = objective(vertex[i]);

  std::array<std::size_t, N + 1> order;
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
  };
  auto along = [](const Point& from, const Point& to, double t) {
    Point p;
    for (std::size_t k = 0; k < N; ++k) p[k] = from[k] + t * (to[k] - from[k]);
    return p;
  };

  SimplexResult<N> result;
  int iteration = 0;
  for (; iteration < options.max_iterations; ++iteration) {
    sort_vertices();
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[N - 1];
    if (value[worst] - value[best] <= options.objective_tolerance) {
      result.converged = true;
      break;
    }

    Point centroid{};
    for (std::size_t i = 0; i <= N; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < N; ++k) centroid[k] += vertex[i][k] / static_cast<double>(N);
    }

    const Point reflected = along(centroid, vertex[worst], -1.0);
    const double f_reflected = objective(reflected);
    if (f_reflected < value[best]) {
      const Point expanded = along(centroid, vertex[worst], -2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        vertex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        vertex[worst] = reflected;
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[second_worst]) {
      vertex[worst] = reflected;
      value[worst] = f_reflected;
      continue;
    }

    const bool outside = f_reflected < value[worst];
    const Point contracted =
        outside ? along(centroid, reflected, 0.5) : along(centroid, vertex[worst], 0.5);
    const double f_contracted = objective(contracted);
    if (f_contracted < std::min(f_reflected, value[worst])) {
      vertex[worst] = contracted;
      value[worst] = f_contracted;
      continue;
    }

    for (std::size_t i = 0; i <= N; ++i) {
      if (i == best) continue;
      vertex[i] = along(vertex[best], vertex[i], 0.5);
      value[i] = objective(vertex[i]);
    }
  }

  sort_vertices();
  result.point = vertex[order.front()];
  result.value = value[order.front()];
  result.iterations = iteration;
  return result;
}

}  // namespace qdiscord
