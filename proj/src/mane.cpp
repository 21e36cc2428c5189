#include "tropifs/mane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tropifs/errors.hpp"
#include "tropifs/rng.hpp"

namespace tropifs {

bool PotentialMatrix::in_aubry(PointIndex x) const {
  return std::binary_search(aubry.begin(), aubry.end(), x);
}

MpMatrix transition_matrix(const MpIfs& s) {
  const std::size_t n = s.num_points();
  MpMatrix a(n, n);
  for (std::size_t j = 0; j < s.num_maps(); ++j)
    for (std::size_t y = 0; y < n; ++y) {
      MaxPlus& e = a(s.maps[j][y], y);
      e = oplus(e, s.weights[j][y]);
    }
  return a;
}

PotentialMatrix mane_potential(const MpIfs& s, double tol_aubry, ClosureMethod method) {
  if (!(tol_aubry > 0.0)) throw ConfigError("tol_aubry must be positive");
  PotentialMatrix p;
  p.s = kleene_plus(transition_matrix(s), method);
  p.tol_aubry = tol_aubry;
  for (std::size_t x = 0; x < p.s.rows(); ++x)
    if (p.s(x, x).is_finite() && p.s(x, x).value() >= -tol_aubry) p.aubry.push_back(x);
  if (p.aubry.empty()) {
    throw EmptyAubryError("no point has S(x,x) >= -" + std::to_string(tol_aubry));
  }
  return p;
}

std::pair<MaxPlus, PointIndex> sum_along(const MpIfs& s, std::span<const std::size_t> omega, PointIndex x) {
  if (omega.empty()) throw ConfigError("sum_along: empty word");
  if (x >= s.num_points()) throw IndexError("sum_along: point out of range");
  MaxPlus total = MaxPlus::one();
  PointIndex at = x;
  for (auto it = omega.rbegin(); it != omega.rend(); ++it) {
    if (*it >= s.num_maps()) throw ConfigError("sum_along: map index out of range");
    total = odot(total, s.weights[*it][at]);
    at = s.maps[*it][at];
  }
  return {total, at};
}

bool check_triangle(const PotentialMatrix& p, double tol) {
  const std::size_t n = p.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const MaxPlus sxy = p(x, y);
      if (sxy.is_bottom()) continue;
      for (std::size_t z = 0; z < n; ++z) {
        const MaxPlus chained = odot(sxy, p(y, z));
        if (chained.is_bottom()) continue;
        if (p(x, z).is_bottom() || p(x, z).value() < chained.value() - tol) return false;
      }
    }
  return true;
}

SumLipschitzReport check_sum_lipschitz(const MpIfs& s, std::size_t trials, std::uint64_t seed) {
  double gamma = s.gamma_hat, lip = s.lip_c_hat;
  if (!s.validated) {
    const auto r = inspect(s);
    gamma = r.gamma_hat;
    lip = r.lip_c_hat;
  }
  SumLipschitzReport rep;
  rep.bound = gamma < 1.0 ? lip / (1.0 - gamma) : std::numeric_limits<double>::infinity();
  const std::size_t n = s.num_points();
  if (n < 2) return rep;

  Rng rng(seed);
  const double slack = s.snap_slack();
  const double diam = s.space.diameter();
  MapWord word;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t len = 1 + rng.below(4 * n);
    word.resize(len);
    for (auto& j : word) j = rng.below(s.num_maps());
    const PointIndex y1 = rng.below(n);
    PointIndex y2 = rng.below(n - 1);
    if (y2 >= y1) ++y2;

    const auto [sum1, end1] = sum_along(s, word, y1);
    const auto [sum2, end2] = sum_along(s, word, y2);
    if (sum1.is_bottom() || sum2.is_bottom()) continue;
    const double d = s.space.dist(y1, y2);
    const double diff = std::abs(sum1.value() - sum2.value());
    rep.max_ratio = std::max(rep.max_ratio, diff / d);
    ++rep.samples;

    double allowed;
    if (slack == 0.0) {
      allowed = rep.bound * d;
    } else {
      double dk = d, acc = 0.0;
      for (std::size_t k = 0; k < len; ++k) {
        acc += dk;
        dk = std::min(diam, gamma * dk + slack);
      }
      allowed = lip * acc;
    }
    if (diff > allowed + 1e-9 * static_cast<double>(len)) rep.within_bound = false;
  }
  return rep;
}

}  // namespace tropifs
