#pragma once

// Invariant densities: lambda(x) = max_{z in Omega} S(x,z) + lambda(z).

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tropifs/mane.hpp"
#include "tropifs/measures.hpp"
#include "tropifs/mpifs.hpp"

namespace tropifs {

/// Values prescribed on (part of) the Aubry set, with one anchor at 0.
class BoundaryData {
 public:
  /// Throws ConfigError unless values[anchor] == 0 and every value <= 0.
  BoundaryData(PointIndex anchor, std::map<PointIndex, MaxPlus> values);

  [[nodiscard]] PointIndex anchor() const noexcept { return anchor_; }
  [[nodiscard]] const std::map<PointIndex, MaxPlus>& values() const noexcept { return values_; }

 private:
  PointIndex anchor_;
  std::map<PointIndex, MaxPlus> values_;
};

/// lambda(x) = (+)_{z} S(x,z) (.) boundary(z). The result has maximum 0,
/// attained at the anchor. Throws ConfigError if the boundary leaves Omega.
Density build_invariant(const PotentialMatrix& s, const BoundaryData& boundary);

struct InvariantReport {
  double deviation = 0.0;  ///< exp-scale sup distance between L(lambda) and lambda
  double tol = 0.0;
  bool pass = false;
};

InvariantReport verify_invariant(const MpIfs& system, const Density& lambda, double tol = 1e-12);

/// Anchors the first Aubry point at 0 and sweeps every other Aubry point over
/// `levels`; each result is verified (tol 1e-9) and duplicates are dropped.
/// Throws ConfigError for levels > 0 or more than 1e6 combinations.
std::vector<Density> enumerate_invariants(const MpIfs& system, const PotentialMatrix& s,
                                          std::span<const MaxPlus> levels);

/// Finite-depth coding map for constant-weight systems.
struct CodingMap {
  /// Every composition of `depth` maps is a constant map.
  std::size_t depth = 0;
  /// Maps whose weight is identically 0.
  std::vector<std::size_t> j0;
  /// {pi(w) : w in J0^depth}, ascending.
  PointSet j0_image;
  /// pi on J0^depth, filled when there are at most 65536 such words.
  std::map<std::vector<std::size_t>, PointIndex> pi_j0;
  /// Point the compositions are applied to (any point gives the same result).
  PointIndex reference = 0;
};

/// Throws NotConstantWeightError for place-dependent weights and
/// NotContractiveError when compositions never become constant.
CodingMap coding_map(const MpIfs& system);

/// pi(w) = phi_{w_1} o ... o phi_{w_depth}(reference). Needs |w| >= depth.
PointIndex coding_point(const MpIfs& system, const CodingMap& cm, std::span<const std::size_t> word);

/// The unique invariant density of a constant-weight system: the column
/// S(., z) for z in Omega, after checking that all Aubry columns agree and
/// that the depth-truncated coding series gives the same values.
/// Throws NotConstantWeightError, or InternalError when a check fails.
Density constant_weight_density(const MpIfs& system, const PotentialMatrix& s, const CodingMap& cm);

}  // namespace tropifs
