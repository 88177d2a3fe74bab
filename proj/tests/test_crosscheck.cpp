// Integration checks that tie the simulator, the master equation and the
// closed-form analytics to each other.

#include <cmath>
#include <set>

#include "doctest.h"
#include "lasernoise/analytics.hpp"
#include "lasernoise/experiments.hpp"
#include "lasernoise/master_eq.hpp"
#include "lasernoise/rng.hpp"
#include "lasernoise/spectral.hpp"
#include "lasernoise/ssa.hpp"
#include "support/oracles.hpp"

using namespace lasernoise;

TEST_CASE("simulated laser variance matches the linearized formula") {
  // var(m) = (N+alpha)/4 + <m>/2 = 55 at N=100, alpha=20, <m>=50.
  std::vector<double> vars;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    SimConfig config;
    config.params = {100, 20.0, 1000.0, PumpDiscipline::Quiet};
    config.initial = {60, 50, 0.0};
    config.duration = 40.0;
    config.seed = 7100 + seed;
    const SimResult result = simulate_laser(config);
    vars.push_back(time_averages(config, result.trace, 0.5).var_m);
  }
  const auto sv = oracles::mean_se(vars);
  const double expect = laser_quanta_variance(100, 20.0, 50.0);
  CHECK(std::abs(sv.mean - expect) < std::max(4.0 * sv.se, 3.0));
}

TEST_CASE("poisson pump holds the shot-noise floor where a quiet pump is silent") {
  LaserBatchConfig config;
  config.params = {100, 20.0, 1000.0, PumpDiscipline::Poisson};
  config.runs = 100;
  config.tau_m = 20.0;
  config.burn_in = 0.5;
  config.seed = 7200;
  config.k_max = 12;  // omega <= 3.8, deep inside the suppression band
  const LaserBatch poisson = run_laser_batch(config);

  config.params.pump = PumpDiscipline::Quiet;
  config.seed = 7201;
  const LaserBatch quiet = run_laser_batch(config);

  const double shot = 1000.0;
  double poisson_avg = 0.0, quiet_avg = 0.0;
  for (int k = 0; k < 12; ++k) {
    poisson_avg += poisson.spectrum.values[static_cast<std::size_t>(k)] / 12.0;
    quiet_avg += quiet.spectrum.values[static_cast<std::size_t>(k)] / 12.0;
  }
  CHECK(std::abs(poisson_avg - shot) < 0.15 * shot);
  CHECK(quiet_avg < 0.05 * shot);
}

TEST_CASE("master-equation transient matches the simulated ensemble") {
  // N = 6, all atoms excited at t = 0; compare P(m, t=0.3) from the RK4
  // integration with the replica histogram of the jump process.
  const int n_atoms = 6;
  const double t_final = 0.3;
  const int replicas = 4000;

  Distribution start;
  start.support_min = 0;
  start.probs.assign(static_cast<std::size_t>(n_atoms) + 1, 0.0);
  start.probs[0] = 1.0;
  const Distribution predicted =
      evolve_distribution(start, build_generator(n_atoms), t_final);

  std::vector<double> counts(static_cast<std::size_t>(n_atoms) + 1, 0.0);
  for (int r = 0; r < replicas; ++r) {
    SimConfig config;
    config.params.n_atoms = n_atoms;
    config.initial = {n_atoms, 0, 0.0};
    config.duration = t_final;
    config.seed = Rng::stream_seed(7300, static_cast<std::uint64_t>(r));
    const SimResult result = simulate_closed(config);
    SystemState s = config.initial;
    for (const auto& ev : result.trace.events)
      s = apply_event(s, ev.kind, config.params);
    counts[static_cast<std::size_t>(s.m_quanta)] += 1.0;
  }
  Distribution empirical;
  empirical.support_min = 0;
  empirical.probs = counts;
  for (double& p : empirical.probs) p /= replicas;

  CHECK(total_variation(predicted, empirical) < 0.035);
}

TEST_CASE("stream seeds are collision-free and uniforms stay inside (0,1)") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t base : {0ULL, 1ULL, 0xDEADBEEFULL})
    for (std::uint64_t stream = 0; stream < 5000; ++stream)
      seen.insert(Rng::stream_seed(base, stream));
  CHECK(seen.size() == 15000);

  Rng rng(123);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const double u = rng.uniform01();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("closed-run spectral floor: emission/absorption traces carry no detections") {
  SimConfig config;
  config.params.n_atoms = 10;
  config.initial = {10, 0, 0.0};
  config.duration = 5.0;
  config.seed = 7400;
  const SimResult result = simulate_closed(config);
  CHECK(count_events(result.trace, EventKind::Detection) == 0);
  CHECK(count_events(result.trace, EventKind::Pump) == 0);
  CHECK_THROWS_AS(periodogram(result.trace, 4), EmptyTrace);
}
