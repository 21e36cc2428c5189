#include "tropifs/mpifs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tropifs/errors.hpp"

namespace tropifs {

namespace {

constexpr double kNormalizationTol = 1e-12;

void check_shape(const MpIfs& s) {
  const std::size_t n = s.num_points();
  const std::size_t m = s.num_maps();
  if (m == 0) throw ConfigError("system needs at least one map");
  if (s.weights.size() != m) throw DimensionError("weights: expected one row per map");
  if (s.index_space.size() != m) throw DimensionError("index space size does not match number of maps");
  if (auto bad = metric_violation(m, s.index_space.dist); !bad.empty()) {
    throw ConfigError("index space is not a metric: " + bad);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (s.maps[j].size() != n) throw DimensionError("map " + std::to_string(j) + " has wrong length");
    if (s.weights[j].size() != n) throw DimensionError("weight " + std::to_string(j) + " has wrong length");
    for (PointIndex t : s.maps[j])
      if (t >= n) throw ConfigError("map " + std::to_string(j) + " targets a point out of range");
  }
}

}  // namespace

bool MpIfs::has_constant_weights(double tol) const {
  for (const auto& row : weights) {
    for (const MaxPlus q : row) {
      if (q.is_bottom() != row.front().is_bottom()) return false;
      if (q.is_finite() && std::abs(q.value() - row.front().value()) > tol) return false;
    }
  }
  return true;
}

std::optional<std::size_t> collapse_depth(const MpIfs& s) {
  const std::size_t n = s.num_points();
  if (n <= 1) return 1;
  // Nodes are unordered pairs a < b; an edge follows one map. The system
  // collapses iff this graph is acyclic, and the longest path bounds the
  // number of steps a pair can survive.
  auto id = [n](std::size_t a, std::size_t b) { return a < b ? a * n + b : b * n + a; };
  const std::size_t total = n * n;
  std::vector<std::uint32_t> indegree(total, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (const auto& phi : s.maps)
        if (phi[a] != phi[b]) ++indegree[id(phi[a], phi[b])];

  std::vector<std::size_t> order;
  order.reserve(n * (n - 1) / 2);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (indegree[id(a, b)] == 0) order.push_back(id(a, b));
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t a = order[head] / n, b = order[head] % n;
    for (const auto& phi : s.maps) {
      if (phi[a] == phi[b]) continue;
      const std::size_t next = id(phi[a], phi[b]);
      if (--indegree[next] == 0) order.push_back(next);
    }
  }
  if (order.size() != n * (n - 1) / 2) return std::nullopt;

  // Longest path (in edges) starting from each pair, in reverse topological order.
  std::vector<std::uint32_t> longest(total, 0);
  std::uint32_t best = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t a = *it / n, b = *it % n;
    std::uint32_t here = 0;
    for (const auto& phi : s.maps)
      if (phi[a] != phi[b]) here = std::max(here, longest[id(phi[a], phi[b])] + 1);
    longest[*it] = here;
    best = std::max(best, here);
  }
  return static_cast<std::size_t>(best) + 1;
}

ValidationReport inspect(const MpIfs& s) {
  check_shape(s);
  ValidationReport r;
  const std::size_t n = s.num_points();
  const std::size_t m = s.num_maps();

  for (std::size_t x = 0; x < n; ++x) {
    MaxPlus top = MaxPlus::bottom();
    for (std::size_t j = 0; j < m; ++j) top = oplus(top, s.weights[j][x]);
    const double drift = top.is_bottom() ? std::numeric_limits<double>::infinity() : std::abs(top.value());
    r.max_normalization_drift = std::max(r.max_normalization_drift, drift);
    if (drift != 0.0 && drift <= kNormalizationTol) r.renormalized = true;
  }
  if (r.max_normalization_drift > kNormalizationTol) {
    r.status = ValidationStatus::kNormalization;
    std::ostringstream msg;
    msg << "weights are not normalized: max_x |max_j q_j(x)| = " << r.max_normalization_drift;
    r.messages.push_back(msg.str());
  }

  const double slack = s.snap_slack();
  double gamma = 0.0;
  for (std::size_t j1 = 0; j1 < m; ++j1)
    for (std::size_t x1 = 0; x1 < n; ++x1)
      for (std::size_t j2 = j1; j2 < m; ++j2)
        for (std::size_t x2 = (j2 == j1 ? x1 + 1 : 0); x2 < n; ++x2) {
          const double denom = s.index_space.d(j1, j2) + s.space.dist(x1, x2);
          const double image = s.space.dist(s.maps[j1][x1], s.maps[j2][x2]);
          gamma = std::max(gamma, std::max(0.0, image - slack) / denom);
        }
  r.gamma_hat = gamma;
  if (gamma >= 1.0) {
    r.status = r.ok() ? ValidationStatus::kNotContractive : r.status;
    std::ostringstream msg;
    msg << "maps are not contractive: gamma_hat = " << gamma;
    r.messages.push_back(msg.str());
  }

  double lip = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t x1 = 0; x1 < n; ++x1)
      for (std::size_t x2 = x1 + 1; x2 < n; ++x2) {
        const MaxPlus a = s.weights[j][x1], b = s.weights[j][x2];
        if (a.is_bottom() || b.is_bottom()) continue;
        lip = std::max(lip, std::abs(a.value() - b.value()) / s.space.dist(x1, x2));
      }
  r.lip_c_hat = lip;
  r.constant_weights = s.has_constant_weights();
  r.collapse_depth = collapse_depth(s);
  return r;
}

ValidationReport validate(MpIfs& s) {
  ValidationReport r = inspect(s);
  switch (r.status) {
    case ValidationStatus::kNormalization:
      throw NormalizationError(r.messages.front());
    case ValidationStatus::kNotContractive:
      throw NotContractiveError(r.messages.front());
    case ValidationStatus::kValid:
      break;
  }
  if (r.renormalized) {
    for (std::size_t x = 0; x < s.num_points(); ++x) {
      MaxPlus top = MaxPlus::bottom();
      for (const auto& row : s.weights) top = oplus(top, row[x]);
      for (auto& row : s.weights)
        if (row[x].is_finite()) row[x] = MaxPlus(row[x].value() - top.value());
    }
  }
  s.gamma_hat = r.gamma_hat;
  s.lip_c_hat = r.lip_c_hat;
  s.validated = true;
  return r;
}

std::vector<double> dual_transfer(const MpIfs& s, std::span<const double> f) {
  if (f.size() != s.num_points()) throw DimensionError("dual_transfer: function has wrong length");
  std::vector<double> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    MaxPlus acc = MaxPlus::bottom();
    for (std::size_t j = 0; j < s.num_maps(); ++j) acc = oplus(acc, odot(s.weights[j][x], MaxPlus(f[s.maps[j][x]])));
    out[x] = acc.value();
  }
  return out;
}

Density transfer_density(const MpIfs& s, const Density& lambda) {
  if (lambda.size() != s.num_points()) throw DimensionError("transfer_density: density has wrong length");
  std::vector<MaxPlus> out(lambda.size(), MaxPlus::bottom());
  for (std::size_t j = 0; j < s.num_maps(); ++j)
    for (std::size_t y = 0; y < lambda.size(); ++y) {
      MaxPlus& slot = out[s.maps[j][y]];
      slot = oplus(slot, odot(s.weights[j][y], lambda[y]));
    }
  return Density(std::move(out));
}

Density markov(const MpIfs& s, const Density& lambda) { return transfer_density(s, lambda); }

bool check_duality(const MpIfs& s, const Density& lambda, std::span<const double> f) {
  return mu_eval(transfer_density(s, lambda), f) == mu_eval(lambda, dual_transfer(s, f));
}

IterationResult iterate_transfer(const MpIfs& s, const Density& lambda0, std::size_t max_iters, double tol) {
  if (!lambda0.is_probability()) throw ConfigError("iterate_transfer: starting density must be normalized");
  if (max_iters == 0) max_iters = 10 * s.num_points();
  IterationResult r{lambda0, 0, false};
  while (r.iterations < max_iters) {
    Density next = normalize(transfer_density(s, r.density));
    const double step = exp_sup_distance(next.values(), r.density.values());
    r.density = std::move(next);
    ++r.iterations;
    if (step <= tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace tropifs
