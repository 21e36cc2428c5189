#include "tropifs/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "tropifs/errors.hpp"
#include "tropifs/fuzzy.hpp"
#include "tropifs/invariant.hpp"
#include "tropifs/mane.hpp"
#include "tropifs/rng.hpp"

namespace tropifs {

namespace {

constexpr int kMaxAttempts = 100;

std::size_t symbol_changes(const Word& w) {
  std::size_t c = 0;
  for (std::size_t i = 1; i < w.size(); ++i) c += w[i] != w[i - 1];
  return c;
}

// Subtracts the per-point maximum over maps. Inputs are dyadic, so the
// differences are exact and the maximum becomes exactly 0.
void normalize_per_point(std::vector<std::vector<double>>& q) {
  for (std::size_t x = 0; x < q.front().size(); ++x) {
    double top = q[0][x];
    for (const auto& row : q) top = std::max(top, row[x]);
    for (auto& row : q) row[x] -= top;
  }
}

std::vector<std::vector<MaxPlus>> to_weights(const std::vector<std::vector<double>>& q) {
  std::vector<std::vector<MaxPlus>> w(q.size());
  for (std::size_t j = 0; j < q.size(); ++j)
    for (double v : q[j]) w[j].emplace_back(v);
  return w;
}

// `shrink` scales the ratio range. Retries for constant weights lower it so
// that snapped maps eventually merge neighbouring points.
MpIfs random_grid_system(const FiniteSpace& space, std::size_t m, Rng& rng, bool constant, double shrink) {
  const std::size_t n = space.size();
  const double a = space.lower(), b = space.upper();
  MpIfs s{space, IndexSpace::uniform(m, 2.0 * space.diameter()), {}, {}, false};
  for (std::size_t j = 0; j < m; ++j) {
    const double r = shrink * rng.uniform(0.2, 0.45);
    const double centre = rng.uniform(a, b);
    std::vector<PointIndex> phi(n);
    for (std::size_t x = 0; x < n; ++x) phi[x] = snap(space, centre + r * (space.coords()[x] - centre));
    s.maps.push_back(std::move(phi));
  }
  std::vector<std::vector<double>> q(m, std::vector<double>(n));
  for (std::size_t j = 0; j < m; ++j) {
    const double base = rng.uniform(-2.0, 0.0);
    const double slope = constant ? 0.0 : rng.uniform(-2.0, 2.0);
    for (std::size_t x = 0; x < n; ++x) {
      const double t = (space.coords()[x] - a) / (b - a);
      q[j][x] = Rng::quantize(std::clamp(base + slope * t, -2.0, 0.0));
    }
  }
  normalize_per_point(q);
  s.weights = to_weights(q);
  return s;
}

MpIfs random_shift_system(const FiniteSpace& space, std::size_t m, Rng& rng, bool constant) {
  const std::size_t n = space.size();
  const std::uint32_t k = space.symbols();
  MpIfs s{space, IndexSpace::uniform(m, 2.0 * space.diameter()), {}, {}, true};
  for (std::size_t j = 0; j < m; ++j) {
    const auto sym = static_cast<std::uint32_t>(1 + rng.below(k));
    std::vector<PointIndex> phi(n);
    Word w(space.depth());
    for (std::size_t x = 0; x < n; ++x) {
      const Word& src = space.word(x);
      w[0] = sym;
      std::copy(src.begin(), src.end() - 1, w.begin() + 1);
      phi[x] = space.index_of(w);
    }
    s.maps.push_back(std::move(phi));
  }
  // Place-dependent weights look at the first symbol only.
  std::vector<std::vector<double>> q(m, std::vector<double>(n));
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> by_symbol(k);
    for (auto& v : by_symbol) v = rng.dyadic(-2.0, 0.0);
    if (constant) std::fill(by_symbol.begin(), by_symbol.end(), by_symbol.front());
    for (std::size_t x = 0; x < n; ++x) q[j][x] = by_symbol[space.word(x).front() - 1];
  }
  normalize_per_point(q);
  s.weights = to_weights(q);
  return s;
}

}  // namespace

MpIfs sys_a() {
  FiniteSpace space({"p0", "p1"}, {0.0, 1.0, 1.0, 0.0});
  MpIfs s{space, IndexSpace::uniform(2, 2.0), {{0, 0}, {1, 1}}, {}, true};
  s.weights = {{MaxPlus(0.0), MaxPlus(0.0)}, {MaxPlus(-1.0), MaxPlus(-1.0)}};
  validate(s);
  return s;
}

MpIfs build_section31(std::size_t depth) {
  FiniteSpace space = build_shift_space(2, depth);
  const std::size_t n = space.size();
  MpIfs s{space, IndexSpace::uniform(2, 1.0), {}, {}, true};
  Word w(depth);
  for (std::uint32_t j = 1; j <= 2; ++j) {
    std::vector<PointIndex> phi(n);
    std::vector<MaxPlus> q(n);
    for (std::size_t x = 0; x < n; ++x) {
      const Word& src = space.word(x);
      w[0] = j;
      std::copy(src.begin(), src.end() - 1, w.begin() + 1);
      phi[x] = space.index_of(w);
      q[x] = MaxPlus(src.front() == j ? 0.0 : -1.0);
    }
    s.maps.push_back(std::move(phi));
    s.weights.push_back(std::move(q));
  }
  validate(s);
  return s;
}

Density lambda_alpha(std::size_t depth, double alpha) {
  const FiniteSpace space = build_shift_space(2, depth);
  std::vector<MaxPlus> v(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    const Word& w = space.word(x);
    double val = 0.0 - static_cast<double>(symbol_changes(w));
    if (w.back() == 2) val -= alpha;
    v[x] = MaxPlus(val);
  }
  return Density(std::move(v));
}

NonuniquenessReport demonstrate_nonuniqueness(const ShiftExampleSpec& spec) {
  if (spec.depth < 2) throw ConfigError("shift example needs depth >= 2");
  if (spec.alphas.empty()) throw ConfigError("shift example needs at least one alpha");
  std::set<double> seen;
  for (double a : spec.alphas) {
    if (!(a >= 0.0 && a < 1.0)) throw ConfigError("alpha must lie in [0, 1)");
    if (!seen.insert(a).second) throw ConfigError("alphas must be distinct");
  }

  NonuniquenessReport r{build_section31(spec.depth), spec.alphas, {}, {}, {}, {}, {}, {}, {}};
  const MpIfs& s = r.system;
  const PotentialMatrix pot = mane_potential(s);
  for (PointIndex z : pot.aubry) r.aubry_labels.push_back(s.space.label(z));

  const Word ones(spec.depth, 1), twos(spec.depth, 2);
  const PointIndex p1 = s.space.index_of(ones), p2 = s.space.index_of(twos);
  std::ostringstream diag;
  for (double a : spec.alphas) {
    Density lam = lambda_alpha(spec.depth, a);
    const Density image = transfer_density(s, lam);
    r.deviations.push_back(exp_sup_distance(image.values(), lam.values()));
    r.exact_fixed_point.push_back(image == lam);
    if (!r.exact_fixed_point.back()) diag << "lambda_" << a << " is not an exact fixed point; ";

    const Density built = build_invariant(pot, BoundaryData(p1, {{p1, MaxPlus::one()}, {p2, MaxPlus(-a)}}));
    r.matches_boundary_construction.push_back(built == lam);
    if (!r.matches_boundary_construction.back()) diag << "lambda_" << a << " differs from the boundary construction; ";
    r.densities.push_back(std::move(lam));
  }

  const std::size_t k = r.densities.size();
  r.pairwise_d_theta.assign(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = d_theta(s.space, r.densities[i], r.densities[j]);
      r.pairwise_d_theta[i * k + j] = r.pairwise_d_theta[j * k + i] = d;
      if (!(d > 0.0)) diag << "alphas " << spec.alphas[i] << " and " << spec.alphas[j] << " give d_theta 0; ";
    }

  r.notes.push_back("words are read as followed by their last symbol forever; sequences with infinitely many "
                    "alternations (density -inf) have no finite-depth representative");
  if (const std::string d = diag.str(); !d.empty()) throw DemonstrationError(d);
  return r;
}

MpIfs random_system(const FiniteSpace& space, std::size_t num_maps, std::uint64_t seed, bool constant_weights) {
  if (space.kind() == SpaceKind::kCustom) throw ConfigError("random_system: needs a grid or shift space");
  if (num_maps == 0) throw ConfigError("random_system: need at least one map");
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double shrink = constant_weights ? std::pow(0.85, attempt) : 1.0;
    MpIfs s = space.kind() == SpaceKind::kGrid ? random_grid_system(space, num_maps, rng, constant_weights, shrink)
                                               : random_shift_system(space, num_maps, rng, constant_weights);
    if (!inspect(s).ok()) continue;
    if (constant_weights && !collapse_depth(s)) continue;
    validate(s);
    return s;
  }
  throw GenerationError("random_system: no valid system after " + std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace tropifs
