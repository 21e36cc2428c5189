#pragma once

// Hand-rolled generators for property tests. Everything numeric is dyadic
// (multiples of 2^-20), so sums of a few dozen values are exact and
// "exact equality" properties are meaningful in double.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "tropifs/catalog.hpp"
#include "tropifs/maxplus.hpp"
#include "tropifs/measures.hpp"
#include "tropifs/rng.hpp"
#include "tropifs/spaces.hpp"

namespace gen {

using tropifs::Density;
using tropifs::MaxPlus;
using tropifs::MpMatrix;
using tropifs::Rng;

inline MaxPlus scalar(Rng& rng, double p_bottom = 0.15, double lo = -8.0, double hi = 8.0) {
  if (rng.uniform() < p_bottom) return MaxPlus::bottom();
  return MaxPlus(rng.dyadic(lo, hi));
}

inline MpMatrix matrix(Rng& rng, std::size_t r, std::size_t c, double lo, double hi, double p_bottom) {
  std::vector<MaxPlus> e(r * c);
  for (auto& v : e) v = scalar(rng, p_bottom, lo, hi);
  return MpMatrix(r, c, std::move(e));
}

inline std::vector<double> function(Rng& rng, std::size_t n, double lo = -4.0, double hi = 4.0) {
  std::vector<double> f(n);
  for (auto& v : f) v = rng.dyadic(lo, hi);
  return f;
}

/// Random density with at least one finite entry.
inline Density density(Rng& rng, std::size_t n, double p_bottom = 0.2) {
  std::vector<MaxPlus> v(n);
  for (auto& x : v) x = scalar(rng, p_bottom, -6.0, 0.0);
  v[rng.below(n)] = MaxPlus(rng.dyadic(-6.0, 0.0));
  return Density(std::move(v));
}

inline Density probability(Rng& rng, std::size_t n, double p_bottom = 0.2) {
  return tropifs::normalize(density(rng, n, p_bottom));
}

inline std::vector<tropifs::PointIndex> subset(Rng& rng, std::size_t n, double p = 0.4) {
  std::vector<tropifs::PointIndex> s;
  for (std::size_t i = 0; i < n; ++i)
    if (rng.uniform() < p) s.push_back(i);
  return s;
}

inline std::vector<tropifs::PointIndex> nonempty_subset(Rng& rng, std::size_t n, double p = 0.4) {
  auto s = subset(rng, n, p);
  if (s.empty()) s.push_back(rng.below(n));
  return s;
}

/// A grid of 2..max_points points or a shift space of at most max_points words.
inline tropifs::FiniteSpace space(Rng& rng, std::size_t max_points) {
  if (max_points >= 4 && rng.uniform() < 0.5) {
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng.below(2));
    std::size_t depth = 1;
    while (depth < 8 && std::pow(k, depth + 1) <= static_cast<double>(max_points) && rng.uniform() < 0.8) ++depth;
    return tropifs::build_shift_space(k, depth);
  }
  return tropifs::build_grid(0.0, 1.0, 2 + rng.below(max_points - 1));
}

/// Shift space with at most max_points words and at least 2 of them.
inline tropifs::FiniteSpace shift_space(Rng& rng, std::size_t max_points) {
  const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng.below(2));
  std::size_t depth = 1;
  while (std::pow(k, depth + 1) <= static_cast<double>(max_points) && rng.uniform() < 0.85) ++depth;
  return tropifs::build_shift_space(k, depth);
}

inline tropifs::MpIfs system(Rng& rng, std::size_t max_points, std::size_t max_maps, bool constant) {
  const auto sp = space(rng, max_points);
  return tropifs::random_system(sp, 1 + rng.below(max_maps), rng.bits(), constant);
}

}  // namespace gen
