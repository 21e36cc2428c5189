#include <doctest.h>

#include <cmath>

#include "../support/gen.hpp"
#include "tropifs/errors.hpp"
#include "tropifs/measures.hpp"

using namespace tropifs;

namespace {
const MaxPlus B = MaxPlus::bottom();
Density dens(std::initializer_list<MaxPlus> v) { return Density(std::vector<MaxPlus>(v)); }
}  // namespace

TEST_CASE("density needs a nonempty support") {
  CHECK_THROWS_AS(Density(std::vector<MaxPlus>(3, B)), EmptySupportError);
  CHECK_THROWS_AS(Density(std::vector<MaxPlus>{}), EmptySupportError);
  const double ninf = -INFINITY;
  CHECK(Density::from_doubles(std::vector<double>{ninf, -2.0})[0].is_bottom());
}

TEST_CASE("mu_eval") {
  const FiniteSpace g = build_grid(0, 1, 4);
  const std::vector<double> f{1.5, -2, 3, 0.25};
  CHECK(mu_eval(dirac(g, 2), f) == MaxPlus(3));
  CHECK(mu_eval(dens({MaxPlus(0), MaxPlus(-1)}), std::vector<double>{1, 5}) == MaxPlus(4));
  CHECK(mu_eval(dens({MaxPlus(-1), MaxPlus(0), B}), std::vector<double>(3, 7.5)) == MaxPlus(7.5));
  CHECK_THROWS_AS(mu_eval(dirac(g, 0), std::vector<double>{1, 2}), DimensionError);
  CHECK_THROWS_AS(mu_eval(dirac(g, 0), std::vector<double>{1, 2, NAN, 0}), ConfigError);
}

TEST_CASE("normalize") {
  CHECK(normalize(dens({MaxPlus(-2), MaxPlus(-5)})) == dens({MaxPlus(0), MaxPlus(-3)}));
  CHECK(normalize(dens({MaxPlus(0), MaxPlus(-1)})) == dens({MaxPlus(0), MaxPlus(-1)}));
  CHECK(normalize(dens({B, MaxPlus(-7)})) == dens({B, MaxPlus(0)}));
  Rng rng(31);
  for (int i = 0; i < 200; ++i) CHECK(normalize(gen::density(rng, 1 + rng.below(20))).is_probability());
}

TEST_CASE("set measure") {
  const Density p = dens({MaxPlus(0), MaxPlus(-1), B, MaxPlus(-4)});
  CHECK(set_measure(p, PointSet{}).is_bottom());
  CHECK(set_measure(p, PointSet{0, 1, 2, 3}) == MaxPlus(0));
  CHECK(set_measure(p, PointSet{1, 3}) == MaxPlus(-1));
  CHECK(set_measure(p, PointSet{2}).is_bottom());
  CHECK_THROWS_AS(set_measure(p, PointSet{4}), IndexError);
}

TEST_CASE("idempotent integral") {
  const Density p = dens({MaxPlus(0), MaxPlus(-1), B, MaxPlus(-4)});
  const PointSet a{1, 3};
  CHECK(idempotent_integral(p, max_plus_indicator(4, a)) == set_measure(p, a));
  CHECK(idempotent_integral(p, std::vector<MaxPlus>(4, MaxPlus::one())) == MaxPlus(0));
  CHECK(idempotent_integral(p, std::vector<MaxPlus>(4, B)).is_bottom());
  CHECK_THROWS_AS(idempotent_integral(p, std::vector<MaxPlus>(3)), DimensionError);
}

TEST_CASE("dirac and support") {
  const FiniteSpace g = build_grid(0, 1, 3);
  CHECK(support(dirac(g, 1, MaxPlus(-2))) == PointSet{1});
  CHECK(normalize(dirac(g, 1, MaxPlus(-1))) == dirac(g, 1));
  CHECK(support(dens({MaxPlus(0), B, MaxPlus(-3)})) == PointSet{0, 2});
  CHECK(support(dens({MaxPlus(0), MaxPlus(-1)})) == PointSet{0, 1});
  CHECK_THROWS_AS(dirac(g, 3), IndexError);
  CHECK_THROWS_AS(dirac(g, 0, B), ConfigError);
}

TEST_CASE("usc envelope is the identity") {
  Rng rng(32);
  for (int i = 0; i < 50; ++i) {
    const Density d = gen::density(rng, 1 + rng.below(10));
    CHECK(usc_envelope(d) == d);
  }
}

TEST_CASE("exp-scale distance treats BOTTOM as 0") {
  const std::vector<MaxPlus> a{MaxPlus(0), B}, b{B, MaxPlus(0)};
  CHECK(exp_sup_distance(a, b) == 1.0);
  CHECK(exp_sup_distance(a, a) == 0.0);
  CHECK(exp_sup_distance(std::vector<MaxPlus>{MaxPlus(-1)}, std::vector<MaxPlus>{B}) == doctest::Approx(std::exp(-1)));
}

TEST_CASE("mu_eval is max-plus linear and monotone") {
  Rng rng(33);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng.below(16);
    const Density lam = gen::density(rng, n);
    const auto f = gen::function(rng, n), g = gen::function(rng, n);
    const double c = rng.dyadic(-3, 3);
    std::vector<double> fg(n), cf(n), up(n);
    for (std::size_t x = 0; x < n; ++x) {
      fg[x] = std::max(f[x], g[x]);
      cf[x] = c + f[x];
      up[x] = f[x] + rng.dyadic(0, 2);
    }
    CHECK(mu_eval(lam, fg) == oplus(mu_eval(lam, f), mu_eval(lam, g)));
    CHECK(mu_eval(lam, cf) == odot(MaxPlus(c), mu_eval(lam, f)));
    CHECK(mu_eval(lam, f) <= mu_eval(lam, up));
    // min f <= m(f) - m(0) <= max f
    const double m0 = mu_eval(lam, std::vector<double>(n, 0.0)).value();
    const double mf = mu_eval(lam, f).value();
    CHECK(*std::min_element(f.begin(), f.end()) <= mf - m0);
    CHECK(mf - m0 <= *std::max_element(f.begin(), f.end()));
  }
}

TEST_CASE("density is recovered from dirac-indicator probes") {
  Rng rng(34);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.below(12);
    const Density lam = gen::density(rng, n);
    for (std::size_t x = 0; x < n; ++x) {
      CHECK(idempotent_integral(lam, max_plus_indicator(n, PointSet{x})) == lam[x]);
    }
  }
}
