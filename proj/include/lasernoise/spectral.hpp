#pragma once

#include <cstdint>
#include <vector>

#include "lasernoise/model.hpp"

namespace lasernoise {

// Spectral-density estimate of the detection point process on the run grid
// omega_k = 2 pi k / tau_m, k = 1, 2, ...  The estimator is exact only on
// that grid, so no other frequencies are ever reported.
struct Spectrum {
  std::vector<double> omegas;
  std::vector<double> values;
  std::vector<double> stderrs;
  std::vector<std::uint8_t> flagged;  // bins near the quiet-pump comb
  int n_runs = 0;
  double tau_m = 0.0;
};

// Single-run periodogram over the detection times t_i:
//   |sum_i exp(j omega_k t_i)|^2 / tau_m,   omega_k = 2 pi k / tau_m.
// No windowing or tapering; leakage is controlled by choosing
// tau_m >> 1/alpha.  Only Detection events contribute.
std::vector<double> periodogram(const EventTrace& trace, int k_max);

// Streaming mean/standard-error accumulator over per-run periodograms.
// Per-run periodograms are independent; the average is a single reduction.
class SpectrumAccumulator {
 public:
  SpectrumAccumulator(double tau_m, int k_max);

  void add(const std::vector<double>& run_values);
  Spectrum finalize() const;  // needs at least 2 runs

  int runs() const { return n_runs_; }

 private:
  double tau_m_;
  int n_runs_ = 0;
  std::vector<double> sum_;
  std::vector<double> sum_sq_;
};

// Mean of per-run periodograms with the standard error per frequency.
// All traces must share the same duration (else MismatchedRuns).
Spectrum average_spectrum(const std::vector<EventTrace>& traces, int k_max);

// Flags bins within 3 grid spacings of any multiple of 2 pi J, where the
// periodic quiet-pump injection places known spectral lines.
void flag_comb_bins(Spectrum& spectrum, double pump_rate);

}  // namespace lasernoise
