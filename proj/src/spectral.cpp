#include "lasernoise/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace lasernoise {

std::vector<double> periodogram(const EventTrace& trace, int k_max) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  if (trace.duration <= 0.0) throw DomainError("trace duration must be > 0");
  if (trace.events.empty()) throw EmptyTrace("trace has no events");

  const double d_omega = 2.0 * std::numbers::pi / trace.duration;
  std::vector<std::complex<double>> sums(static_cast<std::size_t>(k_max),
                                         {0.0, 0.0});
  bool any = false;
  for (const auto& ev : trace.events) {
    if (ev.kind != EventKind::Detection) continue;
    any = true;
    // z = exp(j omega_1 t); the k-th harmonic is z^k, built by recurrence.
    const std::complex<double> w = std::polar(1.0, d_omega * ev.t);
    std::complex<double> z = w;
    for (int k = 0; k < k_max; ++k) {
      sums[static_cast<std::size_t>(k)] += z;
      z *= w;
    }
  }
  if (!any) throw EmptyTrace("trace has no detection events");

  std::vector<double> values(static_cast<std::size_t>(k_max));
  for (int k = 0; k < k_max; ++k)
    values[static_cast<std::size_t>(k)] =
        std::norm(sums[static_cast<std::size_t>(k)]) / trace.duration;
  return values;
}

SpectrumAccumulator::SpectrumAccumulator(double tau_m, int k_max)
    : tau_m_(tau_m),
      sum_(static_cast<std::size_t>(k_max), 0.0),
      sum_sq_(static_cast<std::size_t>(k_max), 0.0) {
  if (tau_m <= 0.0) throw DomainError("tau_m must be > 0");
  if (k_max < 1) throw DomainError("k_max must be >= 1");
}

void SpectrumAccumulator::add(const std::vector<double>& run_values) {
  if (run_values.size() != sum_.size())
    throw MismatchedRuns("periodogram length differs from accumulator size");
  for (std::size_t i = 0; i < sum_.size(); ++i) {
    sum_[i] += run_values[i];
    sum_sq_[i] += run_values[i] * run_values[i];
  }
  ++n_runs_;
}

Spectrum SpectrumAccumulator::finalize() const {
  if (n_runs_ < 2) throw DomainError("need at least 2 runs to average");
  const double runs = static_cast<double>(n_runs_);
  Spectrum spec;
  spec.n_runs = n_runs_;
  spec.tau_m = tau_m_;
  const double d_omega = 2.0 * std::numbers::pi / tau_m_;
  spec.omegas.resize(sum_.size());
  spec.values.resize(sum_.size());
  spec.stderrs.resize(sum_.size());
  spec.flagged.assign(sum_.size(), 0);
  for (std::size_t i = 0; i < sum_.size(); ++i) {
    spec.omegas[i] = d_omega * static_cast<double>(i + 1);
    const double mean = sum_[i] / runs;
    spec.values[i] = mean;
    const double var =
        std::max(0.0, (sum_sq_[i] - runs * mean * mean) / (runs - 1.0));
    spec.stderrs[i] = std::sqrt(var / runs);
  }
  return spec;
}

Spectrum average_spectrum(const std::vector<EventTrace>& traces, int k_max) {
  if (traces.size() < 2)
    throw DomainError("average_spectrum needs at least 2 traces");
  const double tau_m = traces.front().duration;
  SpectrumAccumulator acc(tau_m, k_max);
  for (const auto& trace : traces) {
    if (trace.duration != tau_m)
      throw MismatchedRuns("trace durations differ: " +
                           std::to_string(trace.duration) + " vs " +
                           std::to_string(tau_m));
    acc.add(periodogram(trace, k_max));
  }
  return acc.finalize();
}

void flag_comb_bins(Spectrum& spectrum, double pump_rate) {
  if (pump_rate <= 0.0) return;
  const double comb = 2.0 * std::numbers::pi * pump_rate;
  const double halfwidth = 3.0 * 2.0 * std::numbers::pi / spectrum.tau_m;
  for (std::size_t i = 0; i < spectrum.omegas.size(); ++i) {
    const double r = std::round(spectrum.omegas[i] / comb);
    if (r >= 1.0 && std::abs(spectrum.omegas[i] - r * comb) <= halfwidth)
      spectrum.flagged[i] = 1;
  }
}

}  // namespace lasernoise
