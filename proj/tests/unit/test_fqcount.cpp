#include <doctest.h>

#include "hn_oracle.hpp"
#include "wck/error.hpp"
#include "wck/fqcount.hpp"

using namespace wck;

namespace {

RatFunc v(int k) { return RatFunc::v_power(k); }

Quiver kronecker(int n) {
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; ++i) arrows.push_back({"k" + std::to_string(i), 0, 1});
  return Quiver({"1", "2"}, arrows);
}

QPData plain(Quiver q) { return make_qp(std::move(q), Potential(), {}); }

CentralCharge charge(std::vector<GaussRational> values) { return CentralCharge::from_values(values); }

std::uint64_t ipow(std::uint64_t b, long e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("count_reps examples") {
  QPData one = plain(Quiver({"0"}, {}));
  for (long q : {2, 3, 5}) CHECK(count_reps(one, {3}, q) == 1);
  CHECK(count_reps(plain(kronecker(1)), {1, 1}, 2) == 2);
  CHECK_THROWS_AS(count_reps(plain(kronecker(1)), {1, 1}, 4), Error);
  CHECK_THROWS_AS(count_reps(plain(kronecker(1)), {1}, 2), Error);
  try {
    count_reps(plain(kronecker(3)), {4, 4}, 7);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTooLarge);
  }
}

TEST_CASE("W = 0 counts are affine spaces") {
  for (int arrows : {1, 2}) {
    QPData qp = plain(kronecker(arrows));
    for (const auto& d : lower_set_enum(Truncation::total_degree(2, 4), 2)) {
      for (long q : {2, 3}) {
        CHECK(count_reps(qp, d, q) == ipow(static_cast<std::uint64_t>(q), arrows * d[0] * d[1]));
      }
    }
  }
}

TEST_CASE("K1 semistable counts") {
  QPData qp = plain(kronecker(1));
  // e₂ is a subrep of every (1,1) representation, e₁ only of the zero map.
  CentralCharge e1_high = charge({{-1, 1}, {1, 1}});
  CHECK(count_semistable(qp, {1, 1}, 2, e1_high) == 1);
  CHECK(count_semistable(qp, {1, 1}, 5, e1_high) == 4);
  CentralCharge e2_high = charge({{1, 1}, {-1, 1}});
  CHECK(count_semistable(qp, {1, 1}, 2, e2_high) == 0);
  for (size_t i = 0; i < 2; ++i) {
    DimVector e = DimVector::basis(2, i);
    CHECK(count_semistable(qp, e, 3, e1_high) == count_reps(qp, e, 3));
  }
  CHECK_THROWS_AS(count_semistable(qp, {3, 3}, 2, e1_high), Error);
}

TEST_CASE("semistable counts match the HN recursion numerators") {
  for (int arrows : {1, 2}) {
    Quiver q = kronecker(arrows);
    QPData qp = plain(q);
    for (const auto& z : {charge({{-1, 1}, {1, 1}}), charge({{2, 1}, {-1, 3}})}) {
      oracle::HNRecursion hn(q, z);
      for (const auto& d : lower_set_enum(Truncation::total_degree(2, 3), 2)) {
        RatFunc numerator = hn.semistable_numerator(d);
        for (long p : {2, 3}) {
          FqCounts c = count_both(qp, d, p, z);
          CHECK(c.semistable <= c.reps);
          CHECK(ratfunc_eval(numerator, Rational(p)) == Rational(static_cast<long>(c.semistable)));
        }
      }
    }
  }
}

TEST_CASE("semistability depends only on the phase order") {
  QPData qp = plain(kronecker(2));
  CentralCharge z = charge({{-1, 2}, {1, 1}});
  // Rotation by (3 + 4i)/5 with a positive scale keeps both values in the upper half-plane.
  CentralCharge rotated = z.times(GaussRational{make_rational(3, 10), make_rational(4, 10)});
  for (const auto& d : lower_set_enum(Truncation::total_degree(2, 3), 2)) {
    CHECK(count_semistable(qp, d, 2, z) == count_semistable(qp, d, 2, rotated));
  }
}

TEST_CASE("GL orders and verify_poly") {
  for (long q : {2, 3, 5}) {
    for (int n = 0; n <= 3; ++n) {
      if (n == 3 && q == 5) continue;  // 5⁹ matrices; covered at smaller sizes
      CHECK(ratfunc_eval(gl_class(n), Rational(q)) == Rational(static_cast<long>(count_gl(n, q))));
    }
  }
  CHECK(count_gl(2, 3) == 48);
  CHECK(verify_poly(v(2), {{2, 2}, {3, 3}}));
  CHECK(verify_poly(gl_class(2), {{2, 6}, {3, 48}}));
  CHECK_FALSE(verify_poly(v(2), {{2, 2}, {3, 4}}));
  CHECK_THROWS_AS(verify_poly(v(1), {{2, 2}}), Error);
}

TEST_CASE("P2 relations and the class table") {
  const QPData& qp = p2_build().qp;
  const RatFunc L = v(2);
  const RatFunc expected = L.pow(4) + L.pow(3) - L;
  std::map<long, std::uint64_t> counts;
  for (long q : {2, 3, 5}) counts[q] = count_reps(qp, {1, 1, 1}, q);
  CHECK(counts[2] == 22);
  CHECK(verify_poly(expected, counts));
  CHECK(fit_class(counts) == expected);
  CHECK_THROWS_AS(fit_class({{2, 23}, {3, 111}, {5, 745}}), Error);

  ClassTable table = fit_class_table(qp, Truncation::total_degree(3, 3), {2, 3, 5});
  CHECK(table.size() == 19);
  for (const auto& [d, cls] : table) {
    if (d == DimVector{1, 1, 1}) {
      CHECK(cls == expected);
    } else {
      CHECK(cls == rep_space_class(qp.reduced, d));
    }
  }
}
