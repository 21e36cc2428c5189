#pragma once

// Text formats. Numbers are written as the shortest decimal that reads back
// to the same double; BOTTOM is the token "-inf" in both CSV and JSON.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropifs/fuzzy.hpp"
#include "tropifs/mane.hpp"
#include "tropifs/measures.hpp"
#include "tropifs/mpifs.hpp"

namespace tropifs {

using Json = nlohmann::ordered_json;

std::string format_double(double v);
std::string format_maxplus(MaxPlus v);
/// Accepts a decimal number or "-inf". Throws ConfigError otherwise.
MaxPlus parse_maxplus(const std::string& token);

/// Number or "-inf".
Json maxplus_to_json(MaxPlus v);
MaxPlus maxplus_from_json(const Json& j);

Json density_to_json(const Density& lambda);

/// Header "label,<labels...>", then one row per target point.
void write_potential_csv(std::ostream& os, const FiniteSpace& space, const MpMatrix& s);
/// Reads back what write_potential_csv wrote. Throws ConfigError.
MpMatrix read_potential_csv(std::istream& is);

/// "label,membership" rows.
void write_fuzzy_csv(std::ostream& os, const FiniteSpace& space, const FuzzySet& u);
/// "iteration,d_infty" rows, iterations counted from 1.
void write_trace_csv(std::ostream& os, const std::vector<double>& trace);

/// Space description: {"kind": "grid", "a", "b", "n"} | {"kind": "shift",
/// "symbols", "depth"} | {"kind": "custom", "labels", "dist", "resolution"}.
FiniteSpace space_from_json(const Json& j);

/// Inline system: {"space", "maps", "weights", "index_space"?, "maps_exact"?}.
/// Maps are {"targets": [...]}, {"affine": {"ratio", "offset"}} (grid only,
/// snapped) or {"prepend": symbol} (shift only). Weights are arrays or
/// {"constant": v}. Not validated here.
MpIfs system_from_json(const Json& j);
Json system_to_json(const MpIfs& s);

enum class InvariantMode { kBoundary, kConstant, kEnumerate };
enum class FuzzyStart { kOnes, kLambdaAlpha, kMembership, kDensity };

struct RunConfig {
  /// Inline system or builder spec. At most one; every command except
  /// demo31 needs one.
  std::optional<Json> system;
  std::optional<Json> builder;

  double tol_aubry = 1e-9;
  double tol_invariant = 1e-12;
  double tol_fuzzy = 1e-12;
  std::size_t max_iters = 0;  // 0: operation default
  ClosureMethod closure = ClosureMethod::kSquaring;

  InvariantMode invariant_mode = InvariantMode::kBoundary;
  /// Boundary point keys (labels or decimal indices) with their values.
  std::optional<std::string> boundary_anchor;
  std::vector<std::pair<std::string, MaxPlus>> boundary_values;
  std::vector<MaxPlus> levels;

  FuzzyStart fuzzy_start = FuzzyStart::kOnes;
  double fuzzy_alpha = 0.0;
  std::vector<double> fuzzy_values;

  /// Falls back to a section31 builder's depth, then 6.
  std::optional<std::size_t> demo_depth;
  std::vector<double> demo_alphas{0.0, 0.25, 0.5};
};

/// Throws ConfigError for anything malformed, including unknown keys.
RunConfig parse_config(const Json& j);
RunConfig load_config(const std::filesystem::path& path);

/// Builds the (unvalidated) system named by the config. `seed` overrides the
/// seed of a random builder.
MpIfs build_system(const RunConfig& cfg, std::optional<std::uint64_t> seed);

/// Resolves a point key: an exact label match first, then a decimal index.
PointIndex resolve_point(const FiniteSpace& space, const std::string& key);

}  // namespace tropifs
