#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "../support/gen.hpp"
#include "../support/oracles.hpp"
#include "tropifs/errors.hpp"
#include "tropifs/maxplus.hpp"

using namespace tropifs;

namespace {
const MaxPlus B = MaxPlus::bottom();
MaxPlus v(double x) { return MaxPlus(x); }

MpMatrix mat(std::size_t r, std::size_t c, std::initializer_list<MaxPlus> e) { return MpMatrix(r, c, e); }
}  // namespace

TEST_CASE("oplus and odot on hand values") {
  CHECK(oplus(v(3), v(-1)) == v(3));
  CHECK(oplus(B, v(-5)) == v(-5));
  CHECK(oplus(B, B).is_bottom());
  CHECK(odot(v(3), v(-1)) == v(2));
  CHECK(odot(B, v(7)).is_bottom());
  CHECK(odot(v(0), v(-2.5)) == v(-2.5));
}

TEST_CASE("scalar construction rejects NaN and +inf") {
  CHECK_THROWS_AS(MaxPlus(std::nan("")), ConfigError);
  CHECK_THROWS_AS(MaxPlus(std::numeric_limits<double>::infinity()), ConfigError);
  CHECK(MaxPlus(-std::numeric_limits<double>::infinity()).is_bottom());
  std::ostringstream os;
  os << B << ' ' << v(1.5);
  CHECK(os.str() == "-inf 1.5");
}

TEST_CASE("semiring axioms on random triples") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const MaxPlus a = gen::scalar(rng), b = gen::scalar(rng), c = gen::scalar(rng);
    CHECK(oplus(a, oplus(b, c)) == oplus(oplus(a, b), c));
    CHECK(oplus(a, b) == oplus(b, a));
    CHECK(oplus(a, a) == a);
    CHECK(odot(a, odot(b, c)) == odot(odot(a, b), c));
    CHECK(odot(a, oplus(b, c)) == oplus(odot(a, b), odot(a, c)));
    CHECK(odot(a, MaxPlus::one()) == a);
    CHECK(oplus(a, B) == a);
    CHECK(odot(a, B).is_bottom());
  }
}

TEST_CASE("matrix product on hand examples") {
  const MpMatrix a = mat(2, 2, {v(0), v(-1), B, v(0)});
  CHECK(mp_mat_mul(a, a) == a);
  CHECK(mp_mat_mul(MpMatrix::identity(2), a) == a);
  const MpMatrix z(2, 2);
  CHECK(mp_mat_mul(z, a) == z);
  CHECK_THROWS_AS(mp_mat_mul(MpMatrix(2, 3), MpMatrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(mp_mat_add(MpMatrix(2, 3), MpMatrix(3, 2)), DimensionError);
  CHECK_THROWS_AS(MpMatrix(2, 2, std::vector<MaxPlus>(3)), DimensionError);
}

TEST_CASE("matrix product is associative with a two-sided unit") {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const std::size_t p = 1 + rng.below(8), q = 1 + rng.below(8), r = 1 + rng.below(8), s = 1 + rng.below(8);
    const MpMatrix a = gen::matrix(rng, p, q, -5, 5, 0.2);
    const MpMatrix b = gen::matrix(rng, q, r, -5, 5, 0.2);
    const MpMatrix c = gen::matrix(rng, r, s, -5, 5, 0.2);
    CHECK(mp_mat_mul(mp_mat_mul(a, b), c) == mp_mat_mul(a, mp_mat_mul(b, c)));
    CHECK(mp_mat_mul(MpMatrix::identity(p), a) == a);
    CHECK(mp_mat_mul(a, MpMatrix::identity(q)) == a);
  }
}

TEST_CASE("kleene_plus hand examples") {
  const MpMatrix a = mat(2, 2, {v(0), B, v(-1), B});
  CHECK(kleene_plus(a) == a);
  CHECK(kleene_plus(MpMatrix(3, 3)) == MpMatrix(3, 3));
  CHECK(kleene_plus(mat(1, 1, {v(0)})) == mat(1, 1, {v(0)}));
  CHECK_THROWS_AS(kleene_plus(mat(1, 1, {v(0.5)})), PositiveCycleError);
  CHECK_THROWS_AS(kleene_plus(mat(2, 2, {B, v(1), v(-0.5), B})), PositiveCycleError);
  CHECK_THROWS_AS(kleene_plus(MpMatrix(2, 3)), DimensionError);
}

TEST_CASE("kleene_plus matches explicit path enumeration") {
  Rng rng(13);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = 1 + rng.below(7);
    const MpMatrix a = gen::matrix(rng, n, n, -5, 0, 0.45);
    const auto ref = oracle::path_closure(a);
    for (auto method : {ClosureMethod::kSquaring, ClosureMethod::kFloydWarshall}) {
      const MpMatrix p = kleene_plus(a, method);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) REQUIRE(p(x, y).value() == ref[x * n + y]);
      // A+ = A (+) A A+
      CHECK(p == mp_mat_add(a, mp_mat_mul(a, p)));
    }
  }
}

TEST_CASE("kleene_plus on larger sizes agrees between methods") {
  Rng rng(14);
  for (std::size_t n : {10u, 33u, 70u}) {
    const MpMatrix a = gen::matrix(rng, n, n, -5, 0, 0.8);
    CHECK(kleene_plus(a, ClosureMethod::kSquaring) == kleene_plus(a, ClosureMethod::kFloydWarshall));
  }
}
