#pragma once

// Max-plus iterated function systems and their three operators:
//   dual_transfer     f      -> max_j q_j(x) + f(phi_j(x))
//   transfer_density  lambda -> max_{phi_j(y) = x} q_j(y) + lambda(y)
//   markov            the same map, read as acting on measures.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropifs/maxplus.hpp"
#include "tropifs/measures.hpp"
#include "tropifs/spaces.hpp"

namespace tropifs {

struct MpIfs {
  FiniteSpace space;
  IndexSpace index_space;
  /// maps[j][x] is the point phi_j(x).
  std::vector<std::vector<PointIndex>> maps;
  /// weights[j][x] is q_j(x) <= 0.
  std::vector<std::vector<MaxPlus>> weights;
  /// False when the maps were snapped onto the space from continuous maps;
  /// the contraction check then allows 2 * resolution of slack.
  bool maps_exact = true;

  // Filled in by validate().
  double gamma_hat = 0.0;
  double lip_c_hat = 0.0;
  bool validated = false;

  [[nodiscard]] std::size_t num_maps() const noexcept { return maps.size(); }
  [[nodiscard]] std::size_t num_points() const noexcept { return space.size(); }
  [[nodiscard]] double snap_slack() const noexcept { return maps_exact ? 0.0 : 2.0 * space.resolution(); }
  /// True when every q_j is constant in x (within 1e-12).
  [[nodiscard]] bool has_constant_weights(double tol = 1e-12) const;
};

enum class ValidationStatus { kValid, kNotContractive, kNormalization };

struct ValidationReport {
  ValidationStatus status = ValidationStatus::kValid;
  double gamma_hat = 0.0;
  double lip_c_hat = 0.0;
  /// max_x |(+)_j q_j(x)|, BOTTOM rows count as infinite drift.
  double max_normalization_drift = 0.0;
  bool renormalized = false;
  bool constant_weights = false;
  /// Smallest N such that every composition of N maps is a constant map;
  /// empty when some pair of points is never merged.
  std::optional<std::size_t> collapse_depth;
  std::vector<std::string> messages;

  [[nodiscard]] bool ok() const noexcept { return status == ValidationStatus::kValid; }
};

/// Computes the report without modifying the system. Throws DimensionError
/// or ConfigError when the arrays are malformed (wrong sizes, targets out of
/// range, index-space metric invalid).
ValidationReport inspect(const MpIfs& system);

/// inspect(), then renormalizes tiny drift, stores gamma_hat/lip_c_hat and
/// marks the system validated. Throws NotContractiveError or NormalizationError.
ValidationReport validate(MpIfs& system);

/// Longest run of compositions that keeps two distinct points apart, plus
/// one. Empty when the pair graph has a cycle.
std::optional<std::size_t> collapse_depth(const MpIfs& system);

std::vector<double> dual_transfer(const MpIfs& system, std::span<const double> f);
Density transfer_density(const MpIfs& system, const Density& lambda);
Density markov(const MpIfs& system, const Density& lambda);

/// mu_eval(L lambda, f) == mu_eval(lambda, dual f), compared exactly.
bool check_duality(const MpIfs& system, const Density& lambda, std::span<const double> f);

struct IterationResult {
  Density density;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Applies transfer_density then normalize until successive iterates are
/// within `tol` in the exp-scale sup distance. max_iters = 0 means 10 * |X|.
IterationResult iterate_transfer(const MpIfs& system, const Density& lambda0, std::size_t max_iters = 0,
                                 double tol = 1e-12);

}  // namespace tropifs
