#pragma once

// Finite stand-ins for compact metric spaces.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tropifs {

using PointIndex = std::size_t;
using PointSet = std::vector<PointIndex>;
using Word = std::vector<std::uint32_t>;  // symbols are 1-based

enum class SpaceKind { kCustom, kGrid, kShift };

/// A finite point set with a full distance table.
///
/// `resolution` is the covering radius of the discretization: every point
/// of the continuous space it replaces is within `resolution` of some point
/// here. Grids also keep their coordinates, shift spaces their words.
class FiniteSpace {
 public:
  FiniteSpace() = default;

  /// Custom space from labels and a row-major n*n distance table. Throws
  /// ConfigError when the table is not a metric (triangle tolerance 1e-12).
  FiniteSpace(std::vector<std::string> labels, std::vector<double> dist, double resolution = 0.0);

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] double dist(PointIndex a, PointIndex b) const { return dist_[a * size() + b]; }
  [[nodiscard]] const std::vector<double>& dist_table() const noexcept { return dist_; }
  [[nodiscard]] const std::string& label(PointIndex i) const { return labels_.at(i); }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
  [[nodiscard]] double resolution() const noexcept { return resolution_; }
  [[nodiscard]] double diameter() const noexcept { return diameter_; }
  [[nodiscard]] SpaceKind kind() const noexcept { return kind_; }

  // Grid metadata (kind() == kGrid).
  [[nodiscard]] double lower() const noexcept { return lower_; }
  [[nodiscard]] double upper() const noexcept { return upper_; }
  [[nodiscard]] const std::vector<double>& coords() const noexcept { return coords_; }

  // Shift metadata (kind() == kShift).
  [[nodiscard]] std::uint32_t symbols() const noexcept { return symbols_; }
  [[nodiscard]] std::size_t depth() const noexcept { return depth_; }
  [[nodiscard]] const Word& word(PointIndex i) const { return words_.at(i); }
  /// Index of a depth-length word; longer words are truncated. Throws
  /// ConfigError for short words or symbols out of range.
  [[nodiscard]] PointIndex index_of(std::span<const std::uint32_t> w) const;

  friend FiniteSpace build_grid(double a, double b, std::size_t n);
  friend FiniteSpace build_shift_space(std::uint32_t symbols, std::size_t depth);

 private:
  void finish();

  std::vector<std::string> labels_;
  std::vector<double> dist_;
  double resolution_ = 0.0;
  double diameter_ = 0.0;
  SpaceKind kind_ = SpaceKind::kCustom;
  double lower_ = 0.0, upper_ = 0.0;
  std::vector<double> coords_;
  std::uint32_t symbols_ = 0;
  std::size_t depth_ = 0;
  std::vector<Word> words_;
};

/// Index set J with its metric d_J.
struct IndexSpace {
  std::vector<std::string> labels;
  std::vector<double> dist;  // row-major m*m

  [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
  [[nodiscard]] double d(std::size_t i, std::size_t j) const { return dist[i * size() + j]; }

  /// m indices labelled 1..m at pairwise distance `spacing`.
  static IndexSpace uniform(std::size_t m, double spacing);
};

/// Checks symmetry, zero exactly on the diagonal, positivity off it and the
/// triangle inequality within `tol`. Returns an empty string when the table
/// is a metric, otherwise a description of the first violation.
std::string metric_violation(std::size_t n, std::span<const double> dist, double tol = 1e-12);

/// n equally spaced points on [a, b]. Throws ConfigError unless a < b and n >= 2.
FiniteSpace build_grid(double a, double b, std::size_t n);

/// All words of {1..symbols}^depth with d(w, v) = 2^-min{i : w_i != v_i}.
/// Points are in lexicographic order, first symbol most significant.
FiniteSpace build_shift_space(std::uint32_t symbols, std::size_t depth);

/// Two-sided Hausdorff distance between nonempty point sets. Throws EmptySetError.
double hausdorff(const FiniteSpace& space, std::span<const PointIndex> a, std::span<const PointIndex> b);

/// Nearest grid point to a coordinate, ties to the lowest index.
PointIndex snap(const FiniteSpace& space, double coordinate);

/// The point of a shift space named by the first depth() symbols of `w`.
PointIndex snap(const FiniteSpace& space, std::span<const std::uint32_t> w);

}  // namespace tropifs
