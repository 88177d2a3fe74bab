#include "lasernoise/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lasernoise {

namespace {

void check_laser_point(int n_atoms, double loss_rate, double mean_quanta) {
  if (n_atoms < 1) throw DomainError("n_atoms must be >= 1");
  if (loss_rate <= 0.0) throw DomainError("loss_rate must be > 0");
  if (mean_quanta <= 0.0) throw DomainError("mean_quanta must be > 0");
}

}  // namespace

double closed_quanta_spectrum(int n_atoms, double omega) {
  if (n_atoms < 1) throw DomainError("n_atoms must be >= 1");
  const double n2 = static_cast<double>(n_atoms) * static_cast<double>(n_atoms);
  return (n2 / 2.0) / (n2 + omega * omega);
}

double closed_detection_spectrum(int n_atoms, double loss_rate, double omega) {
  if (loss_rate < 0.0) throw DomainError("loss_rate must be >= 0");
  const double shot = loss_rate * static_cast<double>(n_atoms) / 2.0;
  return loss_rate * loss_rate * closed_quanta_spectrum(n_atoms, omega) + shot;
}

SteadyState steady_state(int n_atoms, double loss_rate, double pump_rate) {
  if (n_atoms < 1) throw DomainError("n_atoms must be >= 1");
  if (loss_rate <= 0.0 || pump_rate <= 0.0)
    throw DomainError("steady_state requires loss_rate > 0 and pump_rate > 0");
  if (loss_rate > static_cast<double>(n_atoms))
    throw InfeasibleError(
        "loss_rate " + std::to_string(loss_rate) + " exceeds N = " +
        std::to_string(n_atoms) + "; gain cannot balance the loss");
  SteadyState ss;
  ss.n_atoms = n_atoms;
  ss.loss_rate = loss_rate;
  ss.pump_rate = pump_rate;
  ss.mean_m = pump_rate / loss_rate;
  ss.mean_n = (static_cast<double>(n_atoms) + loss_rate) / 2.0;
  return ss;
}

double laser_quanta_variance(int n_atoms, double loss_rate,
                             double mean_quanta) {
  check_laser_point(n_atoms, loss_rate, mean_quanta);
  return mean_quanta * ((static_cast<double>(n_atoms) + loss_rate) /
                            (4.0 * mean_quanta) +
                        0.5);
}

double laser_detection_spectrum(int n_atoms, double loss_rate,
                                double mean_quanta, double omega) {
  check_laser_point(n_atoms, loss_rate, mean_quanta);
  const double q = loss_rate * mean_quanta;
  const double u = omega * omega;
  const double num =
      (static_cast<double>(n_atoms) + loss_rate) /
          (4.0 * loss_rate * mean_quanta * mean_quanta) * u -
      1.0;
  const double lorentz = 1.0 - u / (2.0 * loss_rate * mean_quanta);
  const double den = u / (loss_rate * loss_rate) + lorentz * lorentz;
  return q * (1.0 + num / den);
}

double laser_detection_spectrum_large_power(double loss_rate, double omega) {
  if (loss_rate <= 0.0) throw DomainError("loss_rate must be > 0");
  const double x = omega / loss_rate;
  return 1.0 - 1.0 / (x * x + 1.0);
}

QuantaTransfer quanta_transfer(int n_atoms, double loss_rate,
                               double mean_quanta, double omega) {
  check_laser_point(n_atoms, loss_rate, mean_quanta);
  const std::complex<double> den(
      2.0 * loss_rate * mean_quanta - omega * omega,
      2.0 * omega * mean_quanta);
  if (den == std::complex<double>(0.0, 0.0))
    throw DegenerateError("transfer function degenerate at omega = 0, alpha = 0");
  QuantaTransfer tf;
  tf.c_ea = std::complex<double>(0.0, omega) / den;
  tf.c_q = -std::complex<double>(2.0 * mean_quanta, omega) / den;
  return tf;
}

double rebuilt_quanta_spectrum(int n_atoms, double loss_rate,
                               double mean_quanta, double omega) {
  const QuantaTransfer tf =
      quanta_transfer(n_atoms, loss_rate, mean_quanta, omega);
  // Noise-source densities at the operating point: S_{e-a} = E + A = N <m>
  // (e and a are uncorrelated, so their difference has the summed density),
  // S_q = Q = alpha <m>.
  const double s_ea = static_cast<double>(n_atoms) * mean_quanta;
  const double s_q = loss_rate * mean_quanta;
  return std::norm(tf.c_ea) * s_ea + std::norm(tf.c_q) * s_q;
}

double rebuilt_detection_spectrum(int n_atoms, double loss_rate,
                                  double mean_quanta, double omega) {
  const QuantaTransfer tf =
      quanta_transfer(n_atoms, loss_rate, mean_quanta, omega);
  const double s_ea = static_cast<double>(n_atoms) * mean_quanta;
  const double s_q = loss_rate * mean_quanta;
  // dQ = alpha dm + q; q enters both through the cavity and directly.
  const std::complex<double> gain_q = loss_rate * tf.c_q + 1.0;
  return std::norm(loss_rate * tf.c_ea) * s_ea + std::norm(gain_q) * s_q;
}

double relaxation_peak_frequency(int n_atoms, double loss_rate,
                                 double mean_quanta) {
  check_laser_point(n_atoms, loss_rate, mean_quanta);
  const double scale =
      std::max(loss_rate, std::sqrt(2.0 * loss_rate * mean_quanta));
  auto value = [&](double w) {
    return laser_detection_spectrum(n_atoms, loss_rate, mean_quanta, w);
  };

  // Coarse log scan, then golden-section refinement around the best bracket.
  const int kScan = 4000;
  const double lo = scale * 1e-3, hi = scale * 1e3;
  const double step = std::pow(hi / lo, 1.0 / (kScan - 1));
  double best_w = lo, best_v = value(lo), w = lo;
  for (int i = 1; i < kScan; ++i) {
    w *= step;
    const double v = value(w);
    if (v > best_v) {
      best_v = v;
      best_w = w;
    }
  }
  double a = best_w / step, b = best_w * step;
  constexpr double kRatio = 0.6180339887498949;
  double x1 = b - kRatio * (b - a), x2 = a + kRatio * (b - a);
  double f1 = value(x1), f2 = value(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * best_w; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kRatio * (b - a);
      f2 = value(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kRatio * (b - a);
      f1 = value(x1);
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> log_frequency_grid(double loss_rate, double mean_quanta,
                                       int points) {
  if (loss_rate <= 0.0) throw DomainError("loss_rate must be > 0");
  if (points < 2) throw DomainError("grid needs at least 2 points");
  const double lo = loss_rate / 100.0;
  const double hi =
      100.0 * std::max(loss_rate, std::sqrt(2.0 * loss_rate * mean_quanta));
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double ratio = std::pow(hi / lo, 1.0 / (points - 1));
  double w = lo;
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = w;
    w *= ratio;
  }
  grid.back() = hi;
  return grid;
}

}  // namespace lasernoise
