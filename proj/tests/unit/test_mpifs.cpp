#include <doctest.h>

#include <cmath>

#include "../support/gen.hpp"
#include "../support/oracles.hpp"
#include "tropifs/catalog.hpp"
#include "tropifs/errors.hpp"
#include "tropifs/mpifs.hpp"

using namespace tropifs;

namespace {

MpIfs two_point(std::vector<std::vector<double>> q, std::vector<std::vector<PointIndex>> maps) {
  MpIfs s{FiniteSpace({"a", "b"}, {0, 1, 1, 0}), IndexSpace::uniform(maps.size(), 2.0), std::move(maps), {}};
  for (const auto& row : q) {
    std::vector<MaxPlus> w;
    for (double v : row) w.emplace_back(v);
    s.weights.push_back(std::move(w));
  }
  return s;
}

}  // namespace

TEST_CASE("validation of the shift example and SYS-A") {
  const MpIfs s3 = build_section31(3);
  CHECK(s3.validated);
  CHECK(s3.gamma_hat == 0.5);
  CHECK(s3.lip_c_hat == 2.0);
  const MpIfs a = sys_a();
  CHECK(a.gamma_hat == 0.5);
  CHECK(a.lip_c_hat == 0.0);
  CHECK(a.has_constant_weights());
  CHECK_FALSE(s3.has_constant_weights());
}

TEST_CASE("normalization failures and tiny drift") {
  MpIfs bad = two_point({{-1, 0}, {-1, -1}}, {{0, 0}, {1, 1}});
  const auto r = inspect(bad);
  CHECK(r.status == ValidationStatus::kNormalization);
  CHECK(r.max_normalization_drift == 1.0);
  CHECK_THROWS_AS(validate(bad), NormalizationError);

  MpIfs drift = two_point({{-1e-13, 0}, {-1, -1}}, {{0, 0}, {1, 1}});
  const auto ok = validate(drift);
  CHECK(ok.ok());
  CHECK(ok.renormalized);
  CHECK(drift.weights[0][0] == MaxPlus(0));
  CHECK(drift.weights[1][0] == MaxPlus(-1 + 1e-13));

  MpIfs constant = two_point({{0, 0}, {-1, -1}}, {{1, 0}, {0, 1}});
  CHECK(inspect(constant).status != ValidationStatus::kNormalization);
}

TEST_CASE("non-contractive systems are rejected") {
  // The identity map never moves two points closer.
  MpIfs id = two_point({{0, 0}}, {{0, 1}});
  const auto r = inspect(id);
  CHECK(r.status == ValidationStatus::kNotContractive);
  CHECK(r.gamma_hat >= 1.0);
  CHECK_THROWS_AS(validate(id), NotContractiveError);
  CHECK_FALSE(collapse_depth(id).has_value());
}

TEST_CASE("malformed systems throw from inspect") {
  MpIfs s = two_point({{0, 0}}, {{0, 0}});
  s.maps[0].push_back(0);
  CHECK_THROWS_AS(inspect(s), DimensionError);
  MpIfs t = two_point({{0, 0}}, {{0, 2}});
  CHECK_THROWS_AS(inspect(t), ConfigError);
  MpIfs u = two_point({{0, 0}}, {{0, 0}});
  u.index_space = IndexSpace::uniform(2, 1.0);
  CHECK_THROWS_AS(inspect(u), DimensionError);
}

TEST_CASE("snapped systems get slack in the contraction check") {
  // phi(t) = 0.5 t + 0.25 on a 3-point grid snaps to 0 -> 0.25 -> 0 or 0.5.
  MpIfs s{build_grid(0, 1, 3), IndexSpace::uniform(1, 2.0), {{0, 1, 1}}, {{MaxPlus(0), MaxPlus(0), MaxPlus(0)}}};
  s.maps_exact = true;
  CHECK(inspect(s).gamma_hat == 1.0);
  s.maps_exact = false;
  CHECK(inspect(s).gamma_hat < 1.0);
}

TEST_CASE("collapse depth") {
  CHECK(collapse_depth(sys_a()) == 1u);
  CHECK(collapse_depth(build_section31(4)) == 4u);
  // Points chain 0 <- 1 <- 2 <- 3 under one map; pairs merge only at 0.
  MpIfs chain{build_grid(0, 1, 4), IndexSpace::uniform(1, 2.0), {{0, 0, 1, 2}}, {std::vector<MaxPlus>(4)}};
  CHECK(collapse_depth(chain) == 3u);
}

TEST_CASE("dual transfer") {
  const MpIfs a = sys_a();
  CHECK(dual_transfer(a, std::vector<double>{0, 10}) == std::vector<double>{9, 9});
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const MpIfs s = gen::system(rng, 24, 3, rng.uniform() < 0.5);
    const double c = rng.dyadic(-5, 5);
    CHECK(dual_transfer(s, std::vector<double>(s.num_points(), c)) == std::vector<double>(s.num_points(), c));
    auto f = gen::function(rng, s.num_points()), g = f;
    for (auto& v : g) v += rng.dyadic(0, 1);
    const auto lf = dual_transfer(s, f), lg = dual_transfer(s, g);
    for (std::size_t x = 0; x < f.size(); ++x) CHECK(lf[x] <= lg[x]);
  }
  CHECK_THROWS_AS(dual_transfer(a, std::vector<double>{1}), DimensionError);
}

TEST_CASE("transfer operator hand values") {
  const MpIfs a = sys_a();
  const Density fixed = Density::from_doubles(std::vector<double>{0, -1});
  CHECK(transfer_density(a, fixed) == fixed);
  CHECK(markov(a, fixed) == fixed);
  // p1 is only reached by map 2, and nothing reaches a point outside the images
  MpIfs s{build_grid(0, 1, 3), IndexSpace::uniform(1, 2.0), {{0, 0, 1}}, {std::vector<MaxPlus>(3)}};
  const Density out = transfer_density(s, Density::from_doubles(std::vector<double>{0, -1, -2}));
  CHECK(out[2].is_bottom());
  CHECK(out[0] == MaxPlus(0));
  CHECK(out[1] == MaxPlus(-2));
}

TEST_CASE("transfer operator matches the pointwise oracle and preserves probabilities") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const MpIfs s = gen::system(rng, 40, 3, rng.uniform() < 0.3);
    const Density lam = gen::probability(rng, s.num_points());
    const Density out = transfer_density(s, lam);
    CHECK(oracle::values(out) == oracle::transfer(s, oracle::values(lam)));
    CHECK(out.is_probability());
    const double c = rng.dyadic(-3, 3);
    std::vector<MaxPlus> shifted;
    for (auto v : lam.values()) shifted.push_back(odot(MaxPlus(c), v));
    std::vector<MaxPlus> expect;
    for (auto v : out.values()) expect.push_back(odot(MaxPlus(c), v));
    CHECK(transfer_density(s, Density(shifted)).values() == expect);
  }
}

TEST_CASE("duality") {
  const MpIfs a = sys_a();
  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    CHECK(check_duality(a, gen::density(rng, 2), gen::function(rng, 2)));
  }
  const MpIfs s = build_section31(4);
  const auto f = gen::function(rng, s.num_points());
  for (PointIndex x = 0; x < s.num_points(); ++x) {
    const Density d = dirac(s.space, x);
    double expect = -INFINITY;
    for (std::size_t j = 0; j < s.num_maps(); ++j) expect = std::max(expect, s.weights[j][x].value() + f[s.maps[j][x]]);
    CHECK(mu_eval(transfer_density(s, d), f).value() == expect);
    CHECK(mu_eval(d, dual_transfer(s, f)).value() == expect);
  }
  const Density p = gen::probability(rng, s.num_points());
  CHECK(mu_eval(transfer_density(s, p), std::vector<double>(s.num_points(), 0.0)) == MaxPlus(0));
}

TEST_CASE("iterate_transfer") {
  const MpIfs a = sys_a();
  const auto r = iterate_transfer(a, Density::from_doubles(std::vector<double>{0, 0}));
  CHECK(r.converged);
  CHECK(r.density == Density::from_doubles(std::vector<double>{0, -1}));

  const auto again = iterate_transfer(a, r.density);
  CHECK(again.converged);
  CHECK(again.iterations <= 1);
  CHECK(again.density == r.density);

  const MpIfs s = build_section31(5);
  const Density lam = lambda_alpha(5, 0.25);
  const auto stay = iterate_transfer(s, lam, 7);
  CHECK(stay.converged);
  CHECK(stay.density == lam);

  CHECK_THROWS_AS(iterate_transfer(a, Density::from_doubles(std::vector<double>{-1, -2})), ConfigError);
  // a capped run reports non-convergence
  const MpIfs chain{build_grid(0, 1, 4), IndexSpace::uniform(1, 2.0), {{0, 0, 1, 2}}, {std::vector<MaxPlus>(4)}};
  const auto capped = iterate_transfer(chain, Density::from_doubles(std::vector<double>{-3, -2, -1, 0}), 1);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 1);
}
