#include "lasernoise/master_eq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lasernoise {

namespace {

// Embeds a (possibly trimmed) distribution into the full [0, N] vector.
std::vector<double> full_support(const Distribution& dist, int n_atoms) {
  if (dist.support_min < 0 || dist.support_max() > n_atoms)
    throw DomainError("distribution support exceeds [0, N]");
  std::vector<double> p(static_cast<std::size_t>(n_atoms) + 1, 0.0);
  for (std::size_t i = 0; i < dist.probs.size(); ++i)
    p[static_cast<std::size_t>(dist.support_min) + i] = dist.probs[i];
  return p;
}

void derivative(const std::vector<double>& p, const Generator& gen,
                std::vector<double>& dp) {
  const std::size_t n = p.size();
  for (std::size_t m = 0; m < n; ++m) {
    double acc = -p[m] * (gen.up_rates[m] + gen.down_rates[m]);
    if (m + 1 < n) acc += p[m + 1] * gen.down_rates[m + 1];
    if (m > 0) acc += p[m - 1] * gen.up_rates[m - 1];
    dp[m] = acc;
  }
}

}  // namespace

double Generator::max_total_rate() const {
  double mx = 0.0;
  for (std::size_t m = 0; m < up_rates.size(); ++m)
    mx = std::max(mx, up_rates[m] + down_rates[m]);
  return mx;
}

Generator build_generator(int n_atoms) {
  if (n_atoms < 1) throw DomainError("build_generator requires N >= 1");
  Generator gen;
  gen.n_atoms = n_atoms;
  gen.up_rates.resize(static_cast<std::size_t>(n_atoms) + 1);
  gen.down_rates.resize(static_cast<std::size_t>(n_atoms) + 1);
  for (int m = 0; m <= n_atoms; ++m) {
    gen.up_rates[static_cast<std::size_t>(m)] =
        static_cast<double>(n_atoms - m) * (static_cast<double>(m) + 1.0);
    gen.down_rates[static_cast<std::size_t>(m)] =
        static_cast<double>(m) * static_cast<double>(m);
  }
  return gen;
}

Distribution step_distribution(const Distribution& dist, const Generator& gen,
                               double dt) {
  if (dt <= 0.0) throw DomainError("dt must be > 0");
  if (dt * gen.max_total_rate() > 0.1)
    throw StepTooLarge("dt * max rate = " +
                       std::to_string(dt * gen.max_total_rate()) + " > 0.1");

  std::vector<double> p = full_support(dist, gen.n_atoms);
  const std::size_t n = p.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

  derivative(p, gen, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * dt * k1[i];
  derivative(tmp, gen, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * dt * k2[i];
  derivative(tmp, gen, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + dt * k3[i];
  derivative(tmp, gen, k4);

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    p[i] = std::max(p[i], 0.0);
    sum += p[i];
  }
  for (double& v : p) v /= sum;

  Distribution out;
  out.support_min = 0;
  out.probs = std::move(p);
  return out;
}

Distribution evolve_distribution(Distribution dist, const Generator& gen,
                                 double t) {
  if (t < 0.0) throw DomainError("t must be >= 0");
  if (t == 0.0) return dist;
  const double dt_max = 0.095 / gen.max_total_rate();
  const long long steps =
      std::max(1LL, static_cast<long long>(std::ceil(t / dt_max)));
  const double dt = t / static_cast<double>(steps);
  for (long long i = 0; i < steps; ++i)
    dist = step_distribution(dist, gen, dt);
  return dist;
}

Distribution stationary_distribution(const Generator& gen) {
  const int n_atoms = gen.n_atoms;
  std::vector<double> logp(static_cast<std::size_t>(n_atoms) + 1, 0.0);
  for (int m = 0; m < n_atoms; ++m)
    logp[static_cast<std::size_t>(m) + 1] =
        logp[static_cast<std::size_t>(m)] +
        std::log(gen.up_rates[static_cast<std::size_t>(m)]) -
        std::log(gen.down_rates[static_cast<std::size_t>(m) + 1]);

  const double mx = *std::max_element(logp.begin(), logp.end());
  double sum = 0.0;
  for (double lp : logp) sum += std::exp(lp - mx);
  const double logz = mx + std::log(sum);

  Distribution dist;
  dist.support_min = 0;
  dist.probs.resize(logp.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < logp.size(); ++i) {
    dist.probs[i] = std::exp(logp[i] - logz);
    norm += dist.probs[i];
  }
  for (double& p : dist.probs) p /= norm;
  return dist;
}

EinsteinRateReport verify_einstein_rates(int n_atoms) {
  if (n_atoms < 2 || n_atoms > 40)
    throw DomainError("verify_einstein_rates supports 2 <= N <= 40");

  // Binomial row in exact integers; N <= 40 keeps every term far from
  // long long overflow.
  std::vector<long long> binom(static_cast<std::size_t>(n_atoms) + 1, 0);
  binom[0] = 1;
  for (int n = 1; n <= n_atoms; ++n)
    for (int k = n; k >= 1; --k)
      binom[static_cast<std::size_t>(k)] += binom[static_cast<std::size_t>(k) - 1];

  EinsteinRateReport report;
  report.einstein_forced = true;
  for (long long a = 0; a <= 3; ++a)
    for (long long b = 0; b <= 3; ++b)
      for (long long c = 0; c <= 3; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;  // degenerate: no process
        long long worst = 0;
        for (int m = 0; m < n_atoms; ++m) {
          const long long w_m = binom[static_cast<std::size_t>(m)];
          const long long w_m1 = binom[static_cast<std::size_t>(m) + 1];
          const long long up = w_m * (n_atoms - m) * (a * m + b);
          const long long down =
              w_m1 * c * static_cast<long long>(m + 1) * (m + 1);
          worst = std::max(worst, std::abs(up - down));
        }
        const bool einstein = (a == b && b == c);
        if (einstein != (worst == 0)) report.einstein_forced = false;
        report.probes.push_back({a, b, c, worst});
      }
  return report;
}

}  // namespace lasernoise
