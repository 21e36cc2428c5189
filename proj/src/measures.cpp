#include "tropifs/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tropifs/errors.hpp"

namespace tropifs {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": length " + std::to_string(b) + " does not match density length " +
                         std::to_string(a));
  }
}

double exp_scale(MaxPlus v) { return v.is_bottom() ? 0.0 : std::exp(v.value()); }

}  // namespace

Density::Density(std::vector<MaxPlus> values) : values_(std::move(values)) {
  if (std::none_of(values_.begin(), values_.end(), [](MaxPlus v) { return v.is_finite(); })) {
    throw EmptySupportError("density has empty support");
  }
}

Density Density::from_doubles(std::span<const double> values) {
  std::vector<MaxPlus> v;
  v.reserve(values.size());
  for (double x : values) v.emplace_back(x);
  return Density(std::move(v));
}

double Density::peak() const {
  MaxPlus m = MaxPlus::bottom();
  for (MaxPlus v : values_) m = oplus(m, v);
  return m.value();
}

MaxPlus mu_eval(const Density& lambda, std::span<const double> f) {
  require_same_size(lambda.size(), f.size(), "mu_eval");
  MaxPlus acc = MaxPlus::bottom();
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (!std::isfinite(f[x])) throw ConfigError("mu_eval: f must be finite everywhere");
    acc = oplus(acc, odot(lambda[x], MaxPlus(f[x])));
  }
  return acc;
}

Density normalize(const Density& lambda) {
  const double top = lambda.peak();
  std::vector<MaxPlus> out(lambda.values());
  for (auto& v : out) {
    if (v.is_finite()) v = MaxPlus(v.value() - top);
  }
  return Density(std::move(out));
}

MaxPlus set_measure(const Density& lambda, std::span<const PointIndex> a) {
  MaxPlus acc = MaxPlus::bottom();
  for (PointIndex x : a) {
    if (x >= lambda.size()) throw IndexError("set_measure: point " + std::to_string(x) + " out of range");
    acc = oplus(acc, lambda[x]);
  }
  return acc;
}

MaxPlus idempotent_integral(const Density& lambda, std::span<const MaxPlus> h) {
  require_same_size(lambda.size(), h.size(), "idempotent_integral");
  MaxPlus acc = MaxPlus::bottom();
  for (std::size_t x = 0; x < h.size(); ++x) acc = oplus(acc, odot(lambda[x], h[x]));
  return acc;
}

Density dirac(const FiniteSpace& space, PointIndex x, MaxPlus a) {
  if (x >= space.size()) throw IndexError("dirac: point " + std::to_string(x) + " out of range");
  if (a.is_bottom()) throw ConfigError("dirac: level must be finite");
  std::vector<MaxPlus> v(space.size(), MaxPlus::bottom());
  v[x] = a;
  return Density(std::move(v));
}

PointSet support(const Density& lambda) {
  PointSet s;
  for (std::size_t x = 0; x < lambda.size(); ++x)
    if (lambda[x].is_finite()) s.push_back(x);
  return s;
}

std::vector<MaxPlus> max_plus_indicator(std::size_t n, std::span<const PointIndex> a) {
  std::vector<MaxPlus> chi(n, MaxPlus::bottom());
  for (PointIndex x : a) {
    if (x >= n) throw IndexError("max_plus_indicator: point out of range");
    chi[x] = MaxPlus::one();
  }
  return chi;
}

Density usc_envelope(const Density& lambda) { return lambda; }

double exp_sup_distance(std::span<const MaxPlus> a, std::span<const MaxPlus> b) {
  if (a.size() != b.size()) throw DimensionError("exp_sup_distance: length mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(exp_scale(a[i]) - exp_scale(b[i])));
  return worst;
}

}  // namespace tropifs
