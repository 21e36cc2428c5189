#pragma once

// Idempotent (Maslov) measures on finite spaces, handled through their
// densities: mu(f) = max_x lambda(x) + f(x).

#include <span>
#include <vector>

#include "tropifs/maxplus.hpp"
#include "tropifs/spaces.hpp"

namespace tropifs {

/// Density of an idempotent measure. Its support is never empty.
class Density {
 public:
  /// Throws EmptySupportError when every entry is BOTTOM.
  explicit Density(std::vector<MaxPlus> values);
  /// Convenience: -inf entries become BOTTOM.
  static Density from_doubles(std::span<const double> values);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] MaxPlus operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] const std::vector<MaxPlus>& values() const noexcept { return values_; }

  /// Max entry (finite, since the support is nonempty).
  [[nodiscard]] double peak() const;
  /// True when the max entry is exactly 0, i.e. the measure is a probability.
  [[nodiscard]] bool is_probability() const { return peak() == 0.0; }

  friend bool operator==(const Density&, const Density&) = default;

 private:
  std::vector<MaxPlus> values_;
};

/// mu(f) = (+)_x lambda(x) (.) f(x) for a finite real function f.
MaxPlus mu_eval(const Density& lambda, std::span<const double> f);

/// Shift so that the maximum entry is exactly 0.
Density normalize(const Density& lambda);

/// (+)_{x in A} lambda(x); BOTTOM for empty A.
MaxPlus set_measure(const Density& lambda, std::span<const PointIndex> a);

/// (+)_x lambda(x) (.) h(x) where h may take BOTTOM.
MaxPlus idempotent_integral(const Density& lambda, std::span<const MaxPlus> h);

/// g^a_x: value a at x, BOTTOM elsewhere. Throws IndexError, ConfigError for BOTTOM a.
Density dirac(const FiniteSpace& space, PointIndex x, MaxPlus a = MaxPlus::one());

/// Points where lambda is not BOTTOM, ascending.
PointSet support(const Density& lambda);

/// chi_A: 0 on A, BOTTOM elsewhere.
std::vector<MaxPlus> max_plus_indicator(std::size_t n, std::span<const PointIndex> a);

/// Upper semicontinuous envelope. Every function on a finite space is
/// continuous, so this is the identity.
Density usc_envelope(const Density& lambda);

/// Exp-scale sup distance max_x |e^a(x) - e^b(x)|; BOTTOM maps to 0.
double exp_sup_distance(std::span<const MaxPlus> a, std::span<const MaxPlus> b);

}  // namespace tropifs
