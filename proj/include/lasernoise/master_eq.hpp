#pragma once

#include <vector>

#include "lasernoise/equilibrium.hpp"

namespace lasernoise {

// Birth-death generator of the quantum count in an isolated cavity on the
// diagonal n = N - m:
//   up (emission)    E(m) = (N-m)(m+1)
//   down (absorption) A(m) = m^2
// E(N) = 0 and A(0) = 0, so probability mass never leaves [0, N].
struct Generator {
  int n_atoms = 0;
  std::vector<double> up_rates;    // E(m), m in [0, N]
  std::vector<double> down_rates;  // A(m), m in [0, N]

  double max_total_rate() const;  // max_m (E(m) + A(m))
};

Generator build_generator(int n_atoms);

// One classical RK4 step of dP(m)/dt =
//   P(m+1) A(m+1) + P(m-1) E(m-1) - P(m) (A(m) + E(m)).
// The input must be supported inside [0, N]; the result is renormalized
// (per-step drift stays below 1e-12).  Throws StepTooLarge when
// dt * max_total_rate > 0.1, the stability guard for the stiff generator.
Distribution step_distribution(const Distribution& dist, const Generator& gen,
                               double dt);

// Integrates to time t with automatic sub-stepping under the guard.
Distribution evolve_distribution(Distribution dist, const Generator& gen,
                                 double t);

// Stationary law by the detailed-balance recursion
//   P(m+1) A(m+1) = P(m) E(m),
// normalized in log space; equals the binomial C(N,m)/2^N up to rounding.
Distribution stationary_distribution(const Generator& gen);

// Detailed-balance probe of the linear rate ansatz
//   E(m) = (N-m)(a m + b),  A(m) = m (c m)        [d = 0 forced]
// against the binomial stationary law, in exact integer arithmetic:
//   residual(m) = C(N,m)(N-m)(a m+b) - C(N,m+1) c (m+1)^2.
// Balance holds for every m iff a = b = c (up to global rate scale).
struct RateProbe {
  long long a = 0, b = 0, c = 0;
  long long max_abs_residual = 0;
};

struct EinsteinRateReport {
  bool einstein_forced = false;  // zero residual <=> a = b = c on the grid
  std::vector<RateProbe> probes;
};

EinsteinRateReport verify_einstein_rates(int n_atoms);

}  // namespace lasernoise
