// Walks through discord, classical correlations and the cloning comparison
// for the two-record example family and a Bell pair.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qdiscord/qdiscord.hpp"

int main() {
  using namespace qdiscord;
  constexpr double pi = std::numbers::pi;
  auto shown = [](double x) { return std::abs(x) < 1e-12 ? 0.0 : x; };

  const double r = 1.0 / std::sqrt(2.0);
  const DensityMatrix bell(StateVector(SubsystemLayout{2, 2}, {r, 0.0, 0.0, r}));
  const CorrelationReport b = classical_correlation(bell);
  std::printf("Bell pair: I = %.6f  Ic = %.6f  discord = %.6f\n", b.mutual_info, b.classical_info,
              b.discord);

  std::printf("\n%8s %10s %10s %10s %10s %10s\n", "theta/pi", "I", "Ic", "Ic(KW)", "discord",
              "I_clone");
  for (double t : {0.0, 0.05, 0.1, 0.125, 0.2, 0.25}) {
    const PointReport p = evaluate_point(t * pi);
    std::printf("%8.3f %10.6f %10.6f %10.6f %10.6f %10.6f\n", t, shown(p.record.mutual_info),
                shown(p.record.classical_info), shown(p.classical_info_kw), shown(p.record.discord),
                shown(p.record.clone_info));
  }

  const CrossoverResult c = find_crossover();
  std::printf("\nLOCC and cloning deliver equal information at theta = %.6f pi\n", c.theta / pi);
  return 0;
}
