#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lasernoise {

// Seedable PRNG used by every simulation.  Wraps std::mt19937_64, whose
// output sequence is fixed by the standard, and derives variates only
// through the raw 64-bit stream, so runs are bit-reproducible across
// platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on the open interval (0,1); both endpoints excluded so that
  // -log(u) is finite and strictly positive.
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exponential waiting time by inverse CDF.
  double exponential(double rate) { return -std::log(uniform01()) / rate; }

  // Stream splitting for parallel replicas: replica r of a batch seeded with
  // `base` uses stream_seed(base, r).  SplitMix64 of base + (r+1)*golden
  // decorrelates nearby seeds and replica indices.
  static std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lasernoise
