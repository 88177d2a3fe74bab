#pragma once

#include <vector>

#include "lasernoise/errors.hpp"

namespace lasernoise {

// Probability vector over a contiguous integer support starting at
// support_min.  Entries are nonnegative and sum to 1 within 1e-12.
struct Distribution {
  int support_min = 0;
  std::vector<double> probs;

  int support_max() const {
    return support_min + static_cast<int>(probs.size()) - 1;
  }
  double prob_at(long long m) const {
    const long long i = m - support_min;
    if (i < 0 || i >= static_cast<long long>(probs.size())) return 0.0;
    return probs[static_cast<std::size_t>(i)];
  }
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments(const Distribution& dist);

// Total variation distance, 0.5 * sum |p - q| over the union of supports.
double total_variation(const Distribution& a, const Distribution& b);

void validate(const Distribution& dist);  // throws DomainError

// ln of the statistical weight W(n) = N! / (n! (N-n)!), the number of
// distinguishable atomic configurations at energy n.  Log-space via
// lgamma; exact to better than 1e-10 relative for N up to 1e6.
double log_weight(long long n, long long n_atoms);

// Equilibrium distribution of the quantum count in an isolated cavity of
// N atoms with total energy U <= N:
//   P(m) proportional to N! / ((U-m)! (N-U+m)!),  m in [0, U].
// For U = N this is the binomial P(m) = C(N,m) / 2^N.  Entries below 1e-300
// are trimmed before normalization.
Distribution equilibrium_distribution(int n_atoms, int total_energy);

// Probability that a pulse carries zero quanta, for equilibrium-cavity light
// (4^-mean) and for Poissonian light of the same mean (exp(-mean)).
struct CountingError {
  double sub_poissonian = 0.0;
  double poissonian = 0.0;
};

CountingError counting_error_probability(double mean_quanta);

// Entropy split of the isolated system (nats): total system entropy,
// average matter entropy, and field entropy, with
//   s_system = s_matter_avg + s_field
// holding as a mathematical identity.
struct EntropyReport {
  double s_system = 0.0;
  double s_matter_avg = 0.0;
  double s_field = 0.0;
};

EntropyReport entropy_report(int n_atoms, int total_energy);

// Geometric (Boltzmann) limit of P(m) at low energy: the step ratio
// P(m+1)/P(m) approaches factor = <n>/(N-<n>) when N - 2U >> 1.
// max_rel_deviation scans consecutive ratios over the probable bulk
// (both entries above 1e-9) against that factor.
struct BoltzmannFit {
  double factor = 0.0;
  double max_rel_deviation = 0.0;
};

BoltzmannFit boltzmann_factor(int n_atoms, int total_energy);

}  // namespace lasernoise
