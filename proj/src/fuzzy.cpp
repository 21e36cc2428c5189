#include "tropifs/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tropifs/errors.hpp"
#include "tropifs/parallel.hpp"

namespace tropifs {

namespace {

// Hausdorff distance with the empty-set convention used for cuts.
double cut_distance(const FiniteSpace& space, const PointSet& a, const PointSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return space.diameter();
  return hausdorff(space, a, b);
}

template <class CutFn>
double sup_over_levels(const FiniteSpace& space, const std::vector<double>& levels, CutFn cut_pair) {
  std::vector<double> per_level(levels.size(), 0.0);
  parallel_for(0, levels.size(), [&](std::size_t i) {
    const auto [a, b] = cut_pair(levels[i]);
    per_level[i] = cut_distance(space, a, b);
  }, 4);
  double worst = 0.0;
  for (double d : per_level) worst = std::max(worst, d);
  return worst;
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

FuzzySet::FuzzySet(std::vector<double> u) : u_(std::move(u)) {
  for (std::size_t i = 0; i < u_.size(); ++i)
    if (!(u_[i] >= 0.0 && u_[i] <= 1.0)) {
      throw ConfigError("membership value at point " + std::to_string(i) + " is outside [0, 1]");
    }
}

bool FuzzySet::is_normal() const {
  return !u_.empty() && *std::max_element(u_.begin(), u_.end()) == 1.0;
}

FuzzySet theta_conjugate(const Density& lambda) {
  if (!lambda.is_probability()) throw ConfigError("theta_conjugate: density is not normalized (max must be 0)");
  std::vector<double> u(lambda.size());
  for (std::size_t x = 0; x < u.size(); ++x) u[x] = lambda[x].is_bottom() ? 0.0 : std::exp(lambda[x].value());
  return FuzzySet(std::move(u));
}

Density theta_inverse(const FuzzySet& u) {
  std::vector<MaxPlus> out(u.size(), MaxPlus::bottom());
  for (std::size_t x = 0; x < u.size(); ++x)
    if (u[x] > 0.0) out[x] = MaxPlus(std::log(u[x]));
  return Density(std::move(out));
}

PointSet alpha_cut(const FuzzySet& u, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  PointSet cut;
  for (std::size_t x = 0; x < u.size(); ++x)
    if (alpha == 0.0 ? u[x] > 0.0 : u[x] >= alpha) cut.push_back(x);
  return cut;
}

double d_infty(const FiniteSpace& space, const FuzzySet& u, const FuzzySet& v) {
  if (u.size() != space.size() || v.size() != space.size()) {
    throw DimensionError("d_infty: fuzzy sets do not match the space size");
  }
  std::vector<double> levels{0.0};
  for (double t : u.values())
    if (t > 0.0) levels.push_back(t);
  for (double t : v.values())
    if (t > 0.0) levels.push_back(t);
  sort_unique(levels);
  auto cut = [](const FuzzySet& w, double a) {
    PointSet s;
    for (std::size_t x = 0; x < w.size(); ++x)
      if (a == 0.0 ? w[x] > 0.0 : w[x] >= a - kLevelTol * a) s.push_back(x);
    return s;
  };
  return sup_over_levels(space, levels, [&](double a) { return std::pair{cut(u, a), cut(v, a)}; });
}

FuzzySet fhb_apply(const MpIfs& system, const FuzzySet& u) {
  const std::size_t n = system.num_points();
  if (u.size() != n) throw DimensionError("fhb_apply: fuzzy set does not match the system size");
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < system.num_maps(); ++j)
    for (std::size_t y = 0; y < n; ++y) {
      const MaxPlus q = system.weights[j][y];
      if (q.is_bottom()) continue;
      double& slot = out[system.maps[j][y]];
      slot = std::max(slot, std::exp(q.value()) * u[y]);
    }
  return FuzzySet(std::move(out));
}

FhbResult fhb_iterate(const MpIfs& system, const FuzzySet& u0, double tol, std::size_t max_iters) {
  if (!(tol > 0.0)) throw ConfigError("fhb tolerance must be positive");
  if (max_iters == 0) max_iters = 10 * system.num_points();
  FhbResult r{u0, 0, {}, false};
  for (std::size_t k = 0; k < max_iters; ++k) {
    FuzzySet next = fhb_apply(system, r.attractor);
    const double d = d_infty(system.space, r.attractor, next);
    r.attractor = std::move(next);
    if (d <= tol) {
      r.converged = true;
      break;
    }
    r.trace.push_back(d);
  }
  r.iterations = r.trace.size();
  return r;
}

FhbResult fhb_attractor(const MpIfs& system, const FuzzySet& u0, double tol, std::size_t max_iters) {
  if (!u0.is_normal()) throw ConfigError("fhb_attractor: starting fuzzy set must be normal");
  FhbResult r = fhb_iterate(system, u0, tol, max_iters);
  if (!r.converged) {
    throw NonConvergenceError("FHB iteration did not converge in " + std::to_string(r.iterations) +
                              " steps (last d_infty " + std::to_string(r.trace.back()) + ")");
  }
  return r;
}

double d_theta(const FiniteSpace& space, const Density& lambda, const Density& eta) {
  if (lambda.size() != space.size() || eta.size() != space.size()) {
    throw DimensionError("d_theta: densities do not match the space size");
  }
  std::vector<double> levels;
  for (MaxPlus v : lambda.values())
    if (v.is_finite()) levels.push_back(v.value());
  for (MaxPlus v : eta.values())
    if (v.is_finite()) levels.push_back(v.value());
  sort_unique(levels);
  auto super_level = [](const Density& d, double beta) {
    PointSet s;
    for (std::size_t x = 0; x < d.size(); ++x)
      if (d[x].is_finite() && d[x].value() >= beta) s.push_back(x);
    return s;
  };
  return sup_over_levels(space, levels,
                         [&](double b) { return std::pair{super_level(lambda, b), super_level(eta, b)}; });
}

}  // namespace tropifs
