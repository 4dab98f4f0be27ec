#include <doctest.h>

#include <random>

#include "wck/dtinv.hpp"
#include "wck/error.hpp"

using namespace wck;

namespace {

RatFunc v(int k) { return RatFunc::v_power(k); }

RaySeries series(long bound, std::map<long, RatFunc> coeffs) { return RaySeries{{1}, bound, std::move(coeffs)}; }

// Σ_k v^{k²} x^k/[GL_k], the one-vertex quiver series.
RaySeries single_vertex(long bound) {
  RaySeries s{{1}, bound, {}};
  for (long k = 1; k <= bound; ++k) s.set(k, v(static_cast<int>(k * k)) / gl_class(static_cast<int>(k)));
  return s;
}

RaySeries random_series(std::mt19937& rng, long bound) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::uniform_int_distribution<int> e(-3, 3);
  RaySeries s{{1}, bound, {}};
  for (long k = 1; k <= bound; ++k) {
    RatFunc x = RatFunc::monomial(c(rng), e(rng)) + RatFunc::monomial(c(rng), e(rng));
    if (c(rng) > 0) x /= (v(2) - 1);
    s.set(k, x);
  }
  return s;
}

}  // namespace

TEST_CASE("pleth_exp examples") {
  CHECK(pleth_exp(series(4, {})) == series(4, {}));
  RaySeries lin = pleth_exp(series(3, {{1, RatFunc(7)}}));
  CHECK(lin.coeff(1) == 7);

  const RatFunc c = RatFunc(1) / (v(1) - v(-1));
  RaySeries e = pleth_exp(series(2, {{1, c}}));
  // exp(ψ₁(c)x + ψ₂(c)x²/2) at x².
  CHECK(e.coeff(2) == c * c / RatFunc(2) + adams_signed(c, 2) / RatFunc(2));
  CHECK(e.coeff(2) == v(2) / ((v(2) - 1) * (v(4) - 1)));
  RaySeries plain = pleth_exp(series(2, {{1, c}}), AdamsConvention::kPlain);
  CHECK(plain.coeff(2) == c * c / RatFunc(2) + adams(c, 2) / RatFunc(2));
}

TEST_CASE("single vertex series has one DT invariant") {
  RaySeries a = single_vertex(6);
  RaySeries log = pleth_log(a);
  CHECK(log.coeff(1) == v(1) / (v(2) - 1));
  for (long k = 2; k <= 6; ++k) CHECK(log.coeff(k).is_zero());
  DTTable omega = dt_extract(a);
  CHECK(omega.at(1) == 1);
  CHECK(omega.omega.size() == 1);
  CHECK(dt_extract(a, AdamsConvention::kSigned, OmegaNormalization::kMinusV).at(1) == 1);
  // The plain convention does not make this series an Exp-atom.
  CHECK(dt_extract(a, AdamsConvention::kPlain).omega.size() > 1);
}

TEST_CASE("dt_extract basics") {
  CHECK(dt_extract(series(5, {})).omega.empty());
  const RatFunc c = RatFunc(1) / (v(1) - v(-1));
  DTTable t = dt_extract(pleth_exp(series(5, {{1, c}})));
  CHECK(t.at(1) == 1);
  CHECK(t.omega.size() == 1);
}

TEST_CASE("plethystic roundtrips and additivity") {
  std::mt19937 rng(17);
  for (auto conv : {AdamsConvention::kSigned, AdamsConvention::kPlain}) {
    for (int trial = 0; trial < 20; ++trial) {
      RaySeries f = random_series(rng, 6);
      RaySeries g = random_series(rng, 6);
      CHECK(pleth_log(pleth_exp(f, conv), conv) == f);
      RaySeries ef = pleth_exp(f, conv);
      CHECK(pleth_exp(pleth_log(ef, conv), conv) == ef);
      RaySeries sum = f;
      for (const auto& [k, c] : g.coeffs) sum.set(k, sum.coeff(k) + c);
      CHECK(pleth_exp(sum, conv) == ray_mul(pleth_exp(f, conv), pleth_exp(g, conv)));
    }
  }
}

TEST_CASE("dt_extract is additive over Exp-atoms") {
  std::mt19937 rng(23);
  const RatFunc kernel = v(1) - v(-1);
  for (int trial = 0; trial < 10; ++trial) {
    RaySeries f = random_series(rng, 5);
    RaySeries g = random_series(rng, 5);
    DTTable tf = dt_extract(pleth_exp(f));
    DTTable tg = dt_extract(pleth_exp(g));
    DTTable both = dt_extract(ray_mul(pleth_exp(f), pleth_exp(g)));
    for (long k = 1; k <= 5; ++k) {
      CHECK(both.at(k) == tf.at(k) + tg.at(k));
      CHECK(tf.at(k) == f.coeff(k) * kernel);
    }
  }
}

TEST_CASE("ray_series_from") {
  Lattice l({{0, 1}, {-1, 0}});
  Truncation t = Truncation::total_degree(2, 6);
  GroupElem g = GroupElem::one(l, t);
  g.set({1, 1}, v(1));
  g.set({3, 3}, 2);
  RaySeries r = ray_series_from(g, {1, 1});
  CHECK(r.bound == 3);
  CHECK(r.coeff(1) == v(1));
  CHECK(r.coeff(3) == 2);
  CHECK_THROWS_AS(ray_series_from(g, {2, 2}), Error);
  g.set({1, 0}, 1);
  CHECK_THROWS_AS(ray_series_from(g, {1, 1}), Error);
}
