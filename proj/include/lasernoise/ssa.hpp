#pragma once

#include <cstdint>

#include "lasernoise/equilibrium.hpp"
#include "lasernoise/model.hpp"

namespace lasernoise {

// One simulation is strictly sequential; replica runs with distinct seeds
// are independent and may execute concurrently.
struct SimConfig {
  ModelParams params;
  SystemState initial;
  double duration = 0.0;
  std::uint64_t seed = 0;
  bool record_states = false;   // sampled trajectory on/off
  double sample_dt = 0.01;      // trajectory sampling interval
  double max_mean_quanta = 1e6; // memory guard on the pump/loss target J/alpha
};

// State sampled on the uniform grid k * sample_dt (the jump process is a
// right-continuous step function; grid points coinciding with an event time
// take the post-jump value).
struct Trajectory {
  std::vector<double> times;
  std::vector<int> n_vals;
  std::vector<long long> m_vals;
};

struct SimResult {
  EventTrace trace;
  Trajectory trajectory;
  long long blocked_pumps = 0;  // pump arrivals discarded because n = N
};

// Exact Gillespie simulation of the isolated cavity (emission/absorption
// only); n + m is conserved throughout.  Requires loss_rate = 0 and
// pump_rate = 0.  Throws ZeroRateHalt from the absorbing state (U = 0).
SimResult simulate_closed(const SimConfig& config);

// Pumped, lossy cavity with stochastic channels Emission n(m+1),
// Absorption (N-n)m and Detection alpha*m.  Pump injection per discipline:
//   Quiet   - deterministic arrivals at t_k = k/J interleaved with the
//             stochastic events (memorylessness makes the redraw exact);
//   Poisson - a fourth stochastic channel of constant rate J.
// Pump arrivals with n = N are blocked and counted, not applied.
SimResult simulate_laser(const SimConfig& config);

// Variance-to-mean ratio of detection counts over consecutive windows of
// the given length (1 for a Poisson stream, < 1 for sub-Poissonian light).
// Requires at least 20 complete windows.
double counting_fano(const EventTrace& trace, double window);

// Time-weighted occupation of the quantum count, replayed from the trace;
// time before burn_in is discarded.
Distribution occupation_distribution(const SimConfig& config,
                                     const EventTrace& trace, double burn_in);

// Time-averaged moments of m and n over [burn_in, duration].
struct TimeAverages {
  double mean_m = 0.0;
  double var_m = 0.0;
  double mean_n = 0.0;
  double var_n = 0.0;
};

TimeAverages time_averages(const SimConfig& config, const EventTrace& trace,
                           double burn_in);

}  // namespace lasernoise
