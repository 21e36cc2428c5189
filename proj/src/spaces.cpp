#include "tropifs/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tropifs/errors.hpp"

namespace tropifs {

std::string metric_violation(std::size_t n, std::span<const double> dist, double tol) {
  if (dist.size() != n * n) return "distance table has wrong size";
  auto d = [&](std::size_t i, std::size_t j) { return dist[i * n + j]; };
  std::ostringstream msg;
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) {
      msg << "d(" << i << "," << i << ") != 0";
      return msg.str();
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(d(i, j))) {
        msg << "d(" << i << "," << j << ") is not finite";
        return msg.str();
      }
      if (i != j && !(d(i, j) > 0.0)) {
        msg << "d(" << i << "," << j << ") must be positive";
        return msg.str();
      }
      if (d(i, j) != d(j, i)) {
        msg << "d(" << i << "," << j << ") != d(" << j << "," << i << ")";
        return msg.str();
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d(i, k) > d(i, j) + d(j, k) + tol) {
          msg << "triangle inequality fails for (" << i << "," << j << "," << k << ")";
          return msg.str();
        }
  return {};
}

FiniteSpace::FiniteSpace(std::vector<std::string> labels, std::vector<double> dist, double resolution)
    : labels_(std::move(labels)), dist_(std::move(dist)), resolution_(resolution) {
  if (labels_.empty()) throw ConfigError("space must have at least one point");
  if (!(resolution_ >= 0.0)) throw ConfigError("resolution must be >= 0");
  if (auto bad = metric_violation(labels_.size(), dist_); !bad.empty()) {
    throw ConfigError("not a metric: " + bad);
  }
  finish();
}

void FiniteSpace::finish() {
  diameter_ = dist_.empty() ? 0.0 : *std::max_element(dist_.begin(), dist_.end());
}

PointIndex FiniteSpace::index_of(std::span<const std::uint32_t> w) const {
  if (kind_ != SpaceKind::kShift) throw ConfigError("words only address shift spaces");
  if (w.size() < depth_) throw ConfigError("word shorter than the space depth");
  PointIndex idx = 0;
  for (std::size_t i = 0; i < depth_; ++i) {
    if (w[i] < 1 || w[i] > symbols_) throw ConfigError("symbol out of range");
    idx = idx * symbols_ + (w[i] - 1);
  }
  return idx;
}

IndexSpace IndexSpace::uniform(std::size_t m, double spacing) {
  IndexSpace j;
  for (std::size_t i = 0; i < m; ++i) j.labels.push_back(std::to_string(i + 1));
  j.dist.assign(m * m, spacing);
  for (std::size_t i = 0; i < m; ++i) j.dist[i * m + i] = 0.0;
  return j;
}

FiniteSpace build_grid(double a, double b, std::size_t n) {
  if (!(a < b)) throw ConfigError("build_grid: need a < b");
  if (n < 2) throw ConfigError("build_grid: need at least 2 points");
  FiniteSpace s;
  s.kind_ = SpaceKind::kGrid;
  s.lower_ = a;
  s.upper_ = b;
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? b : a + step * static_cast<double>(i);
    s.coords_.push_back(x);
    std::ostringstream lbl;
    lbl.precision(17);
    lbl << x;
    s.labels_.push_back(lbl.str());
  }
  s.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.dist_[i * n + j] = std::abs(s.coords_[i] - s.coords_[j]);
  s.resolution_ = (b - a) / (2.0 * static_cast<double>(n - 1));
  s.finish();
  return s;
}

FiniteSpace build_shift_space(std::uint32_t symbols, std::size_t depth) {
  if (symbols < 1 || depth < 1) throw ConfigError("build_shift_space: need symbols >= 1 and depth >= 1");
  double count = std::pow(static_cast<double>(symbols), static_cast<double>(depth));
  if (count > 1e6) throw ConfigError("build_shift_space: too many words");
  const auto n = static_cast<std::size_t>(count);
  FiniteSpace s;
  s.kind_ = SpaceKind::kShift;
  s.symbols_ = symbols;
  s.depth_ = depth;
  s.words_.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    Word w(depth);
    std::size_t rest = idx;
    for (std::size_t i = depth; i-- > 0;) {
      w[i] = static_cast<std::uint32_t>(rest % symbols) + 1;
      rest /= symbols;
    }
    std::string lbl = "(";
    for (std::size_t i = 0; i < depth; ++i) {
      if (i) lbl += ',';
      lbl += std::to_string(w[i]);
    }
    s.labels_.push_back(lbl + ")");
    s.words_.push_back(std::move(w));
  }
  s.dist_.assign(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      std::size_t i = 0;
      while (s.words_[a][i] == s.words_[b][i]) ++i;
      s.dist_[a * n + b] = std::ldexp(1.0, -static_cast<int>(i + 1));
    }
  s.resolution_ = std::ldexp(1.0, -static_cast<int>(depth));
  s.finish();
  return s;
}

double hausdorff(const FiniteSpace& space, std::span<const PointIndex> a, std::span<const PointIndex> b) {
  if (a.empty() || b.empty()) throw EmptySetError("hausdorff: both sets must be nonempty");
  auto directed = [&](std::span<const PointIndex> from, std::span<const PointIndex> to) {
    double worst = 0.0;
    for (PointIndex p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (PointIndex q : to) best = std::min(best, space.dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

PointIndex snap(const FiniteSpace& space, double coordinate) {
  if (space.kind() != SpaceKind::kGrid) throw ConfigError("snap: coordinates only address grids");
  const auto& xs = space.coords();
  PointIndex best = 0;
  double best_d = std::abs(xs[0] - coordinate);
  for (PointIndex i = 1; i < xs.size(); ++i) {
    const double d = std::abs(xs[i] - coordinate);
    if (d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

PointIndex snap(const FiniteSpace& space, std::span<const std::uint32_t> w) { return space.index_of(w); }

}  // namespace tropifs
