#pragma once

// Ready-made systems: the two-symbol shift family with infinitely many
// invariant densities, the two-point system SYS-A, and random generators.

#include <cstdint>
#include <string>
#include <vector>

#include "tropifs/measures.hpp"
#include "tropifs/mpifs.hpp"

namespace tropifs {

/// Two points p0, p1 at distance 1, d_J = 2, phi_1 = p0, phi_2 = p1,
/// q_1 = 0, q_2 = -1. Unique invariant density (0, -1).
MpIfs sys_a();

/// Words of {1,2}^depth. phi_j prepends j and drops the last symbol;
/// q_j(x) = 0 when j == x_1, -1 otherwise. d_J(1,2) = 1. Validated.
MpIfs build_section31(std::size_t depth);

/// Reads a word as followed by its last symbol forever:
/// -(symbol changes) - (alpha if the last symbol is 2).
Density lambda_alpha(std::size_t depth, double alpha);

struct ShiftExampleSpec {
  std::size_t depth = 6;
  std::vector<double> alphas;
};

struct NonuniquenessReport {
  MpIfs system;
  std::vector<double> alphas;
  std::vector<Density> densities;
  /// exp-scale deviation |L(lambda) - lambda| per alpha (0 when exact).
  std::vector<double> deviations;
  std::vector<bool> exact_fixed_point;
  /// d_theta between densities i and j, row-major.
  std::vector<double> pairwise_d_theta;
  std::vector<bool> matches_boundary_construction;
  /// Aubry points of the system, by label.
  std::vector<std::string> aubry_labels;
  std::vector<std::string> notes;
};

/// Builds the shift example, checks that every lambda_alpha is an exact fixed
/// point, that they are pairwise distinct in d_theta, and that each equals
/// build_invariant with boundary {1^n: 0, 2^n: -alpha}.
/// Throws ConfigError for depth < 2, alphas outside [0, 1) or repeated, and
/// DemonstrationError when a check fails.
NonuniquenessReport demonstrate_nonuniqueness(const ShiftExampleSpec& spec);

/// Random validated system on a grid or shift space. Grids get affine
/// contractions (ratio 0.2-0.45) snapped to the grid; shift spaces get
/// prepend-a-symbol maps. Weights are dyadic (multiples of 2^-20) in [-2, 0],
/// normalized per point. With constant_weights the system is also required
/// to collapse (compositions of finite length become constant).
/// Throws ConfigError for custom spaces and GenerationError after 100 failed
/// attempts.
MpIfs random_system(const FiniteSpace& space, std::size_t num_maps, std::uint64_t seed,
                    bool constant_weights = false);

}  // namespace tropifs
