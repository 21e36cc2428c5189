#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tropifs {

/// Seeded generator with platform-independent draws (the standard
/// distributions are implementation-defined, so they are avoided).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : bits() % n; }

  /// Uniform on the dyadic lattice 2^-bits * Z within [lo, hi]. Sums and
  /// differences of a few thousand such values are exact in double.
  double dyadic(double lo, double hi, int frac_bits = 20) {
    return quantize(uniform(lo, hi), frac_bits);
  }

  static double quantize(double v, int frac_bits = 20) {
    return std::ldexp(std::round(std::ldexp(v, frac_bits)), -frac_bits);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tropifs
