#pragma once

// Fuzzy-set side of the theory. The scale map is theta(t) = e^t, so a
// density lambda corresponds to the membership function u = e^lambda and the
// transfer operator corresponds to the fuzzy Hutchinson-Barnsley operator Z.

#include <span>
#include <vector>

#include "tropifs/measures.hpp"
#include "tropifs/mpifs.hpp"
#include "tropifs/spaces.hpp"

namespace tropifs {

/// Membership function with values in [0, 1].
class FuzzySet {
 public:
  /// Throws ConfigError for entries outside [0, 1] (NaN included).
  explicit FuzzySet(std::vector<double> u);

  [[nodiscard]] std::size_t size() const noexcept { return u_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return u_[i]; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return u_; }
  /// Max entry is exactly 1.
  [[nodiscard]] bool is_normal() const;

  friend bool operator==(const FuzzySet&, const FuzzySet&) = default;

 private:
  std::vector<double> u_;
};

/// u(x) = e^{lambda(x)}, BOTTOM -> 0. Throws ConfigError unless max lambda == 0.
FuzzySet theta_conjugate(const Density& lambda);

/// lambda(x) = log u(x), 0 -> BOTTOM. Throws EmptySupportError for u == 0.
Density theta_inverse(const FuzzySet& u);

/// {x : u(x) >= alpha} for alpha > 0, the support {u > 0} for alpha = 0.
/// Throws ConfigError for alpha outside [0, 1].
PointSet alpha_cut(const FuzzySet& u, double alpha);

/// sup over alpha of the Hausdorff distance between cuts, evaluated at the
/// membership values that occur in u or v and at 0. A cut that is empty on
/// one side only contributes diam(X); two empty cuts contribute 0.
///
/// Memberships within a relative kLevelTol of a level count as reaching it.
/// e^q * e^l and e^(q+l) can differ in the last bit, and an exact cut would
/// turn that into a jump of a whole point distance.
inline constexpr double kLevelTol = 1e-12;
double d_infty(const FiniteSpace& space, const FuzzySet& u, const FuzzySet& v);

/// (Z u)(x) = max over phi_j(y) = x of e^{q_j(y)} u(y); 0 without preimage.
FuzzySet fhb_apply(const MpIfs& system, const FuzzySet& u);

struct FhbResult {
  FuzzySet attractor;
  std::size_t iterations = 0;
  /// d_infty(u_k, u_{k+1}) for every step that did not meet the tolerance.
  std::vector<double> trace;
  bool converged = false;
};

/// Iterates Z from u0 until d_infty(u_k, Z u_k) <= tol, returning Z u_k.
/// Does not throw on non-convergence; `converged` is false instead.
/// max_iters == 0 means 10 |X|.
FhbResult fhb_iterate(const MpIfs& system, const FuzzySet& u0, double tol = 1e-12, std::size_t max_iters = 0);

/// fhb_iterate, throwing NonConvergenceError when the cap is reached.
/// Throws ConfigError unless u0 is normal.
FhbResult fhb_attractor(const MpIfs& system, const FuzzySet& u0, double tol = 1e-12, std::size_t max_iters = 0);

/// sup over beta <= 0 of the Hausdorff distance between {lambda >= beta} and
/// {eta >= beta}, evaluated at the finite values of lambda and eta.
double d_theta(const FiniteSpace& space, const Density& lambda, const Density& eta);

}  // namespace tropifs
