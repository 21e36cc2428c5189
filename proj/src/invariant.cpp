#include "tropifs/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "tropifs/errors.hpp"

namespace tropifs {

namespace {

constexpr double kConstantWeightTol = 1e-12;
constexpr double kColumnTol = 1e-9;

void require_constant_weights(const MpIfs& s) {
  if (!s.has_constant_weights(kConstantWeightTol)) {
    throw NotConstantWeightError("weights depend on the point; constant-weight construction does not apply");
  }
}

// One max-plus step of the weighted maps, applied to a vector that may be
// entirely BOTTOM.
std::vector<MaxPlus> push_forward(const MpIfs& s, const std::vector<MaxPlus>& v) {
  std::vector<MaxPlus> out(v.size(), MaxPlus::bottom());
  for (std::size_t j = 0; j < s.num_maps(); ++j)
    for (std::size_t y = 0; y < v.size(); ++y) {
      MaxPlus& slot = out[s.maps[j][y]];
      slot = oplus(slot, odot(s.weights[j][y], v[y]));
    }
  return out;
}

bool close(MaxPlus a, MaxPlus b, double tol) {
  if (a.is_bottom() || b.is_bottom()) return a.is_bottom() == b.is_bottom();
  return std::abs(a.value() - b.value()) <= tol;
}

}  // namespace

BoundaryData::BoundaryData(PointIndex anchor, std::map<PointIndex, MaxPlus> values)
    : anchor_(anchor), values_(std::move(values)) {
  auto it = values_.find(anchor_);
  if (it == values_.end() || it->second != MaxPlus::one()) {
    throw ConfigError("boundary data must assign exactly 0 to the anchor point " + std::to_string(anchor_));
  }
  for (const auto& [x, v] : values_)
    if (v.is_finite() && v.value() > 0.0) {
      throw ConfigError("boundary value at point " + std::to_string(x) + " is positive");
    }
}

Density build_invariant(const PotentialMatrix& s, const BoundaryData& boundary) {
  for (const auto& [z, v] : boundary.values()) {
    if (!s.in_aubry(z)) {
      throw ConfigError("boundary point " + std::to_string(z) + " is not in the Aubry set");
    }
  }
  const std::size_t n = s.size();
  std::vector<MaxPlus> out(n, MaxPlus::bottom());
  for (std::size_t x = 0; x < n; ++x)
    for (const auto& [z, v] : boundary.values()) out[x] = oplus(out[x], odot(s(x, z), v));
  return Density(std::move(out));
}

InvariantReport verify_invariant(const MpIfs& system, const Density& lambda, double tol) {
  InvariantReport r;
  r.tol = tol;
  r.deviation = exp_sup_distance(transfer_density(system, lambda).values(), lambda.values());
  r.pass = r.deviation <= tol;
  return r;
}

std::vector<Density> enumerate_invariants(const MpIfs& system, const PotentialMatrix& s,
                                          std::span<const MaxPlus> levels) {
  for (MaxPlus l : levels)
    if (l.is_finite() && l.value() > 0.0) throw ConfigError("boundary levels must be <= 0");
  const PointIndex anchor = s.aubry.front();
  const std::vector<PointIndex> free(s.aubry.begin() + 1, s.aubry.end());
  if (!free.empty() && levels.empty()) throw ConfigError("enumerate_invariants: no levels given");

  double combos = std::pow(static_cast<double>(std::max<std::size_t>(1, levels.size())),
                           static_cast<double>(free.size()));
  if (combos > 1e6) throw ConfigError("enumerate_invariants: too many boundary assignments");

  std::vector<Density> found;
  std::vector<std::size_t> digit(free.size(), 0);
  while (true) {
    std::map<PointIndex, MaxPlus> values{{anchor, MaxPlus::one()}};
    for (std::size_t i = 0; i < free.size(); ++i) values[free[i]] = levels[digit[i]];
    Density lambda = build_invariant(s, BoundaryData(anchor, std::move(values)));
    const auto check = verify_invariant(system, lambda, 1e-9);
    if (!check.pass) {
      throw InternalError("boundary-built density is not invariant (deviation " + std::to_string(check.deviation) +
                          ")");
    }
    if (std::find(found.begin(), found.end(), lambda) == found.end()) found.push_back(std::move(lambda));

    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == levels.size()) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return found;
}

CodingMap coding_map(const MpIfs& system) {
  require_constant_weights(system);
  const auto depth = collapse_depth(system);
  if (!depth) throw NotContractiveError("map compositions never become constant; no finite coding depth");
  CodingMap cm;
  cm.depth = *depth;
  for (std::size_t j = 0; j < system.num_maps(); ++j) {
    const MaxPlus q = system.weights[j].front();
    if (q.is_finite() && std::abs(q.value()) <= kConstantWeightTol) cm.j0.push_back(j);
  }
  if (cm.j0.empty()) throw InternalError("no zero-weight map; weights are not normalized");

  std::set<PointIndex> image;
  for (std::size_t x = 0; x < system.num_points(); ++x) image.insert(x);
  for (std::size_t k = 0; k < cm.depth; ++k) {
    std::set<PointIndex> next;
    for (PointIndex y : image)
      for (std::size_t j : cm.j0) next.insert(system.maps[j][y]);
    image = std::move(next);
  }
  cm.j0_image.assign(image.begin(), image.end());

  if (std::pow(static_cast<double>(cm.j0.size()), static_cast<double>(cm.depth)) <= 65536.0) {
    std::vector<std::size_t> digit(cm.depth, 0), word(cm.depth);
    while (true) {
      for (std::size_t i = 0; i < cm.depth; ++i) word[i] = cm.j0[digit[i]];
      cm.pi_j0.emplace(word, coding_point(system, cm, word));
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == cm.j0.size()) digit[i++] = 0;
      if (i == digit.size()) break;
    }
  }
  return cm;
}

PointIndex coding_point(const MpIfs& system, const CodingMap& cm, std::span<const std::size_t> word) {
  if (word.size() < cm.depth) throw ConfigError("coding_point: word shorter than the coding depth");
  PointIndex at = cm.reference;
  for (std::size_t i = cm.depth; i-- > 0;) {
    if (word[i] >= system.num_maps()) throw ConfigError("coding_point: map index out of range");
    at = system.maps[word[i]][at];
  }
  return at;
}

Density constant_weight_density(const MpIfs& system, const PotentialMatrix& s, const CodingMap& cm) {
  require_constant_weights(system);
  const std::size_t n = s.size();
  const PointIndex z0 = s.aubry.front();
  for (PointIndex z : s.aubry)
    for (std::size_t x = 0; x < n; ++x)
      if (!close(s(x, z), s(x, z0), kColumnTol)) {
        throw InternalError("Aubry columns disagree at x=" + std::to_string(x) + ", z=" + std::to_string(z));
      }

  // Coding series truncated at depth N: best weight over words of length N
  // whose (constant) composition lands on x. The tail can stay in J0 at no cost.
  std::vector<MaxPlus> series(n, MaxPlus::bottom());
  series[cm.reference] = MaxPlus::one();
  for (std::size_t k = 0; k < cm.depth; ++k) series = push_forward(system, series);

  std::vector<MaxPlus> column(n);
  for (std::size_t x = 0; x < n; ++x) {
    column[x] = s(x, z0);
    if (!close(column[x], series[x], kColumnTol)) {
      throw InternalError("coding series disagrees with the Mane potential at x=" + std::to_string(x));
    }
  }
  return Density(std::move(column));
}

}  // namespace tropifs
