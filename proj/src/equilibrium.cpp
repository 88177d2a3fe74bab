#include "lasernoise/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lasernoise {

namespace {

double log_factorial(long long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// log(sum exp(x_i)) with the usual max shift.
double log_sum_exp(const std::vector<double>& xs) {
  const double mx = *std::max_element(xs.begin(), xs.end());
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - mx);
  return mx + std::log(acc);
}

void check_energy(int n_atoms, int total_energy) {
  if (n_atoms < 1) throw DomainError("n_atoms must be >= 1");
  if (total_energy < 0 || total_energy > n_atoms)
    throw DomainError("total energy U must lie in [0, N], got U=" +
                      std::to_string(total_energy) +
                      " N=" + std::to_string(n_atoms));
}

}  // namespace

Moments moments(const Distribution& dist) {
  double mean = 0.0, second = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    const double m = static_cast<double>(dist.support_min) + static_cast<double>(i);
    mean += m * dist.probs[i];
    second += m * m * dist.probs[i];
  }
  return {mean, second - mean * mean};
}

double total_variation(const Distribution& a, const Distribution& b) {
  const int lo = std::min(a.support_min, b.support_min);
  const int hi = std::max(a.support_max(), b.support_max());
  double acc = 0.0;
  for (int m = lo; m <= hi; ++m) acc += std::abs(a.prob_at(m) - b.prob_at(m));
  return 0.5 * acc;
}

void validate(const Distribution& dist) {
  double sum = 0.0;
  for (double p : dist.probs) {
    if (p < 0.0) throw DomainError("distribution entry < 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw DomainError("distribution sums to " + std::to_string(sum));
}

double log_weight(long long n, long long n_atoms) {
  if (n < 0 || n > n_atoms)
    throw DomainError("log_weight requires 0 <= n <= N");
  return log_factorial(n_atoms) - log_factorial(n) - log_factorial(n_atoms - n);
}

Distribution equilibrium_distribution(int n_atoms, int total_energy) {
  check_energy(n_atoms, total_energy);
  const int u = total_energy;

  // P(m) ~ W(U-m), m in [0, U]; work in log space, trim, normalize.
  std::vector<double> logw(static_cast<std::size_t>(u) + 1);
  for (int m = 0; m <= u; ++m)
    logw[static_cast<std::size_t>(m)] = log_weight(u - m, n_atoms);
  const double logz = log_sum_exp(logw);

  constexpr double kLogTrim = -690.775527898213705;  // ln(1e-300)
  int lo = 0, hi = u;
  while (lo < hi && logw[static_cast<std::size_t>(lo)] - logz < kLogTrim) ++lo;
  while (hi > lo && logw[static_cast<std::size_t>(hi)] - logz < kLogTrim) --hi;

  Distribution dist;
  dist.support_min = lo;
  dist.probs.resize(static_cast<std::size_t>(hi - lo) + 1);
  double sum = 0.0;
  for (int m = lo; m <= hi; ++m) {
    const double p = std::exp(logw[static_cast<std::size_t>(m)] - logz);
    dist.probs[static_cast<std::size_t>(m - lo)] = p;
    sum += p;
  }
  for (double& p : dist.probs) p /= sum;
  return dist;
}

CountingError counting_error_probability(double mean_quanta) {
  if (mean_quanta < 0.0) throw DomainError("mean_quanta must be >= 0");
  return {std::pow(4.0, -mean_quanta), std::exp(-mean_quanta)};
}

EntropyReport entropy_report(int n_atoms, int total_energy) {
  check_energy(n_atoms, total_energy);
  const int u = total_energy;

  // Reachable matter energies are n = U - m, m >= 0, so n in [0, U].
  // P(n) = W(n)/Z over that range equals the field law P(m) at m = U - n,
  // which is what makes the entropy split an identity.
  std::vector<double> logw(static_cast<std::size_t>(u) + 1);
  for (int n = 0; n <= u; ++n)
    logw[static_cast<std::size_t>(n)] = log_weight(n, n_atoms);
  const double logz = log_sum_exp(logw);

  double matter = 0.0, field = 0.0;
  for (int n = 0; n <= u; ++n) {
    const double lw = logw[static_cast<std::size_t>(n)];
    const double p = std::exp(lw - logz);
    if (p == 0.0) continue;
    matter += p * lw;
    field -= p * (lw - logz);
  }
  return {logz, matter, field};
}

BoltzmannFit boltzmann_factor(int n_atoms, int total_energy) {
  check_energy(n_atoms, total_energy);
  const Distribution dist = equilibrium_distribution(n_atoms, total_energy);
  const double mean_m = moments(dist).mean;
  const double mean_n = static_cast<double>(total_energy) - mean_m;
  if (n_atoms - mean_n <= 0.0)
    throw DomainError("Boltzmann factor undefined at full inversion <n> = N");

  BoltzmannFit fit;
  fit.factor = mean_n / (static_cast<double>(n_atoms) - mean_n);

  constexpr double kBulk = 1e-9;
  for (std::size_t i = 0; i + 1 < dist.probs.size(); ++i) {
    if (dist.probs[i] <= kBulk || dist.probs[i + 1] <= kBulk) continue;
    const double ratio = dist.probs[i + 1] / dist.probs[i];
    if (fit.factor > 0.0)
      fit.max_rel_deviation =
          std::max(fit.max_rel_deviation, std::abs(ratio / fit.factor - 1.0));
  }
  return fit;
}

}  // namespace lasernoise
