#pragma once

// Max-plus semiring scalars and dense matrices.
//
// A MaxPlus is either a finite double or BOTTOM (the semiring zero, -inf).
// BOTTOM has its own state: finite values are never NaN or +inf, so the
// absorbing/neutral rules below hold exactly.

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

namespace tropifs {

class MaxPlus {
 public:
  /// Semiring unit (0).
  constexpr MaxPlus() noexcept : v_(0.0) {}

  /// Finite value, or BOTTOM when `v` is -inf. NaN and +inf are rejected.
  explicit MaxPlus(double v);

  static constexpr MaxPlus bottom() noexcept { return MaxPlus(kBottom, Raw{}); }
  static constexpr MaxPlus one() noexcept { return MaxPlus(0.0, Raw{}); }

  [[nodiscard]] constexpr bool is_bottom() const noexcept {
    return v_ == kBottom;
  }
  [[nodiscard]] constexpr bool is_finite() const noexcept { return v_ != kBottom; }

  /// The finite value; -inf for BOTTOM.
  [[nodiscard]] constexpr double value() const noexcept { return v_; }

  friend constexpr MaxPlus oplus(MaxPlus a, MaxPlus b) noexcept {
    return a.v_ >= b.v_ ? a : b;
  }
  friend constexpr MaxPlus odot(MaxPlus a, MaxPlus b) noexcept {
    if (a.is_bottom() || b.is_bottom()) return bottom();
    return MaxPlus(a.v_ + b.v_, Raw{});
  }

  friend constexpr bool operator==(MaxPlus a, MaxPlus b) noexcept { return a.v_ == b.v_; }
  friend constexpr auto operator<=>(MaxPlus a, MaxPlus b) noexcept { return a.v_ <=> b.v_; }

 private:
  struct Raw {};
  static constexpr double kBottom = -std::numeric_limits<double>::infinity();
  constexpr MaxPlus(double v, Raw) noexcept : v_(v) {}

  double v_;
};

std::ostream& operator<<(std::ostream& os, MaxPlus a);

/// Dense row-major max-plus matrix.
class MpMatrix {
 public:
  MpMatrix() = default;
  MpMatrix(std::size_t rows, std::size_t cols, MaxPlus fill = MaxPlus::bottom());
  MpMatrix(std::size_t rows, std::size_t cols, std::vector<MaxPlus> entries);

  static MpMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  MaxPlus& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  MaxPlus operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] const std::vector<MaxPlus>& entries() const noexcept { return data_; }

  friend bool operator==(const MpMatrix&, const MpMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MaxPlus> data_;
};

/// C = A (x) B, i.e. C[i][k] = max_j A[i][j] + B[j][k]. Throws DimensionError.
MpMatrix mp_mat_mul(const MpMatrix& a, const MpMatrix& b);

/// Entrywise max. Throws DimensionError.
MpMatrix mp_mat_add(const MpMatrix& a, const MpMatrix& b);

enum class ClosureMethod { kSquaring, kFloydWarshall };

/// Transitive closure A+ = A (+) A^2 (+) ... (+) A^n: the best weight over
/// every path of length >= 1. Exact; throws PositiveCycleError if a diagonal
/// entry of the result is > 0 and DimensionError if A is not square.
MpMatrix kleene_plus(const MpMatrix& a, ClosureMethod method = ClosureMethod::kSquaring);

}  // namespace tropifs
