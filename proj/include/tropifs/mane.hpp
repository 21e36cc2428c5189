#pragma once

// Mañé potential and Aubry set on a finite system.
//
// Row index is the target, column the source: S(x, y) is the best total
// weight Sum(w, y) over nonempty words w with phi_w(y) = x.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tropifs/maxplus.hpp"
#include "tropifs/mpifs.hpp"

namespace tropifs {

using MapWord = std::vector<std::size_t>;  // 0-based map indices, applied right to left

struct PotentialMatrix {
  MpMatrix s;
  PointSet aubry;
  double tol_aubry = 1e-9;

  [[nodiscard]] MaxPlus operator()(PointIndex target, PointIndex source) const { return s(target, source); }
  [[nodiscard]] std::size_t size() const noexcept { return s.rows(); }
  [[nodiscard]] bool in_aubry(PointIndex x) const;
};

/// One-step matrix A(x, y) = (+)_{j : phi_j(y) = x} q_j(y).
MpMatrix transition_matrix(const MpIfs& system);

/// S = kleene_plus(transition_matrix) and Omega = {x : S(x,x) >= -tol_aubry}.
/// Throws PositiveCycleError or EmptyAubryError.
PotentialMatrix mane_potential(const MpIfs& system, double tol_aubry = 1e-9,
                               ClosureMethod method = ClosureMethod::kSquaring);

/// (Sum(w, x), phi_w(x)). Throws ConfigError on an empty word or a map index
/// out of range.
std::pair<MaxPlus, PointIndex> sum_along(const MpIfs& system, std::span<const std::size_t> omega, PointIndex x);

/// S(x,z) >= S(x,y) + S(y,z) for every finite triple, up to `tol`.
bool check_triangle(const PotentialMatrix& s, double tol = 0.0);

struct SumLipschitzReport {
  double max_ratio = 0.0;     ///< max |Sum(w,y1) - Sum(w,y2)| / d(y1,y2)
  double bound = 0.0;         ///< lip_c_hat / (1 - gamma_hat)
  bool within_bound = true;   ///< every sample obeyed its bound (see below)
  std::size_t samples = 0;
};

/// Samples random words (length <= 4|X|) and point pairs. For exact maps a
/// sample passes when |dSum| <= bound * d. For snapped maps the distance
/// after k steps is tracked with d_k <= gamma_hat d_{k-1} + 2 resolution and
/// the sample passes when |dSum| <= lip_c_hat * sum_k d_k.
SumLipschitzReport check_sum_lipschitz(const MpIfs& system, std::size_t trials, std::uint64_t seed = 0);

}  // namespace tropifs
