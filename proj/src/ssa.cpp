#include "lasernoise/ssa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lasernoise/rng.hpp"

namespace lasernoise {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Emits grid samples of the right-continuous step function.  advance_to is
// called with the pre-jump state before each event is applied, so a grid
// point exactly at an event time is emitted later, with the post-jump state.
class TrajectorySampler {
 public:
  TrajectorySampler(const SimConfig& config, Trajectory& out)
      : enabled_(config.record_states), dt_(config.sample_dt), out_(out) {
    if (enabled_ && dt_ <= 0.0)
      throw DomainError("sample_dt must be > 0 when record_states is set");
    if (enabled_) {
      const auto n = static_cast<std::size_t>(config.duration / dt_) + 1;
      out_.times.reserve(n);
      out_.n_vals.reserve(n);
      out_.m_vals.reserve(n);
    }
  }

  void advance_to(double t, const SystemState& state) {
    if (!enabled_) return;
    while (next_index_ * dt_ < t) emit(state);
  }

  void finish(double duration, const SystemState& state) {
    if (!enabled_) return;
    while (next_index_ * dt_ <= duration) emit(state);
  }

 private:
  void emit(const SystemState& state) {
    out_.times.push_back(next_index_ * dt_);
    out_.n_vals.push_back(state.n_upper);
    out_.m_vals.push_back(state.m_quanta);
    ++next_index_;
  }

  bool enabled_;
  double dt_;
  double next_index_ = 0.0;
  Trajectory& out_;
};

void check_common(const SimConfig& config) {
  validate(config.params);
  validate(config.initial, config.params);
  if (config.duration <= 0.0) throw DomainError("duration must be > 0");
}

}  // namespace

SimResult simulate_closed(const SimConfig& config) {
  check_common(config);
  const ModelParams& params = config.params;
  if (params.loss_rate != 0.0 || params.pump_rate != 0.0)
    throw ConfigError(
        "simulate_closed requires loss_rate = 0 and pump_rate = 0");

  SimResult result;
  result.trace.duration = config.duration;
  result.trace.params = params;
  result.trace.seed = config.seed;
  TrajectorySampler sampler(config, result.trajectory);

  Rng rng(config.seed);
  SystemState state = config.initial;
  double t = 0.0;
  while (true) {
    const double e = emission_rate(state);
    const double a = absorption_rate(state, params);
    const double total = e + a;
    if (total <= 0.0)
      throw ZeroRateHalt("closed system frozen: total rate is zero");
    // The 1-ulp bump keeps event times strictly increasing even when the
    // waiting time underflows next to a large clock value.
    const double t_next =
        std::max(t + rng.exponential(total), std::nextafter(t, kInf));
    if (t_next > config.duration) break;
    sampler.advance_to(t_next, state);
    t = t_next;
    const EventKind kind = (rng.uniform01() * total < e)
                               ? EventKind::Emission
                               : EventKind::Absorption;
    state = apply_event(state, kind, params);
    result.trace.events.push_back({t, kind});
  }
  sampler.finish(config.duration, state);
  return result;
}

SimResult simulate_laser(const SimConfig& config) {
  check_common(config);
  const ModelParams& params = config.params;
  if (params.loss_rate <= 0.0 || params.pump_rate <= 0.0)
    throw ConfigError(
        "simulate_laser requires loss_rate > 0 and pump_rate > 0; use "
        "simulate_closed for isolated cavities");
  if (params.pump_rate / params.loss_rate > config.max_mean_quanta)
    throw ConfigError("target quantum count J/alpha = " +
                      std::to_string(params.pump_rate / params.loss_rate) +
                      " exceeds the configured bound " +
                      std::to_string(config.max_mean_quanta));

  SimResult result;
  result.trace.duration = config.duration;
  result.trace.params = params;
  result.trace.seed = config.seed;
  TrajectorySampler sampler(config, result.trajectory);

  Rng rng(config.seed);
  SystemState state = config.initial;
  const bool quiet = params.pump == PumpDiscipline::Quiet;
  const double pump_period = 1.0 / params.pump_rate;
  long long pump_arrivals = 0;  // quiet-pump injections so far; t_k = k/J
  double t = 0.0;

  while (true) {
    const double e = emission_rate(state);
    const double a = absorption_rate(state, params);
    const double q = detection_rate(state, params);
    const double total = e + a + q + (quiet ? 0.0 : params.pump_rate);
    const double t_next =
        total > 0.0
            ? std::max(t + rng.exponential(total), std::nextafter(t, kInf))
            : kInf;
    const double t_pump =
        quiet ? static_cast<double>(pump_arrivals + 1) * pump_period : kInf;

    if (quiet && t_pump <= t_next) {
      // Deterministic injection preempts; the pending stochastic draw is
      // simply discarded (exact by memorylessness).
      if (t_pump > config.duration) break;
      sampler.advance_to(t_pump, state);
      t = t_pump;
      ++pump_arrivals;
      if (state.n_upper < params.n_atoms) {
        state = apply_event(state, EventKind::Pump, params);
        result.trace.events.push_back({t, EventKind::Pump});
      } else {
        ++result.blocked_pumps;
      }
      continue;
    }

    if (t_next > config.duration) break;
    sampler.advance_to(t_next, state);
    t = t_next;
    const double u = rng.uniform01() * total;
    EventKind kind;
    if (u < e) {
      kind = EventKind::Emission;
    } else if (u < e + a) {
      kind = EventKind::Absorption;
    } else if (u < e + a + q) {
      kind = EventKind::Detection;
    } else {
      if (state.n_upper >= params.n_atoms) {
        ++result.blocked_pumps;
        continue;
      }
      kind = EventKind::Pump;
    }
    state = apply_event(state, kind, params);
    result.trace.events.push_back({t, kind});
  }
  sampler.finish(config.duration, state);
  return result;
}

double counting_fano(const EventTrace& trace, double window) {
  if (window <= 0.0) throw DomainError("window must be > 0");
  const long long n_windows =
      static_cast<long long>(std::floor(trace.duration / window));
  if (n_windows < 20)
    throw TooFewWindows("need >= 20 complete windows, got " +
                        std::to_string(n_windows));

  std::vector<long long> counts(static_cast<std::size_t>(n_windows), 0);
  long long total = 0;
  for (const auto& ev : trace.events) {
    if (ev.kind != EventKind::Detection) continue;
    const auto idx = static_cast<long long>(ev.t / window);
    if (idx < n_windows) {
      ++counts[static_cast<std::size_t>(idx)];
      ++total;
    }
  }
  if (total == 0) throw EmptyTrace("no detection events in the trace");

  const double mean = static_cast<double>(total) / static_cast<double>(n_windows);
  double ss = 0.0;
  for (long long c : counts) {
    const double d = static_cast<double>(c) - mean;
    ss += d * d;
  }
  const double variance = ss / static_cast<double>(n_windows - 1);
  return variance / mean;
}

namespace {

// Replays the trace, handing each (state, dwell time within the measured
// interval) to the sink.
template <typename Sink>
void replay(const SimConfig& config, const EventTrace& trace, double burn_in,
            Sink&& sink) {
  if (burn_in < 0.0 || burn_in >= trace.duration)
    throw DomainError("burn_in must lie in [0, duration)");
  SystemState state = config.initial;
  double t_prev = 0.0;
  for (const auto& ev : trace.events) {
    const double dwell = ev.t - std::max(t_prev, burn_in);
    if (dwell > 0.0) sink(state, dwell);
    state = apply_event(state, ev.kind, config.params);
    t_prev = ev.t;
  }
  const double dwell = trace.duration - std::max(t_prev, burn_in);
  if (dwell > 0.0) sink(state, dwell);
}

}  // namespace

Distribution occupation_distribution(const SimConfig& config,
                                     const EventTrace& trace, double burn_in) {
  std::vector<double> weight;
  double total = 0.0;
  replay(config, trace, burn_in, [&](const SystemState& s, double dt) {
    const auto m = static_cast<std::size_t>(s.m_quanta);
    if (m >= weight.size()) weight.resize(m + 1, 0.0);
    weight[m] += dt;
    total += dt;
  });
  Distribution dist;
  dist.support_min = 0;
  dist.probs = std::move(weight);
  for (double& p : dist.probs) p /= total;
  return dist;
}

TimeAverages time_averages(const SimConfig& config, const EventTrace& trace,
                           double burn_in) {
  double total = 0.0, sm = 0.0, smm = 0.0, sn = 0.0, snn = 0.0;
  replay(config, trace, burn_in, [&](const SystemState& s, double dt) {
    const double m = static_cast<double>(s.m_quanta);
    const double n = static_cast<double>(s.n_upper);
    total += dt;
    sm += m * dt;
    smm += m * m * dt;
    sn += n * dt;
    snn += n * n * dt;
  });
  TimeAverages avg;
  avg.mean_m = sm / total;
  avg.var_m = smm / total - avg.mean_m * avg.mean_m;
  avg.mean_n = sn / total;
  avg.var_n = snn / total - avg.mean_n * avg.mean_n;
  return avg;
}

}  // namespace lasernoise
