#include <doctest.h>

#include <random>

#include "wck/error.hpp"
#include "wck/lattice.hpp"

using namespace wck;

namespace {

CentralCharge charge(std::vector<GaussRational> values) { return CentralCharge::from_values(values); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

const Sector kUpperRight(Ray(0, 1), Ray(1, 0));
const Sector kUpperHalf(Ray(-1, 1), Ray(1, 1));

}  // namespace

TEST_CASE("charge_eval") {
  CentralCharge z{{0, 0}, {1, 1}};
  CHECK(charge_eval(z, {1, 0}) == GaussRational{0, 1});
  CHECK(charge_eval(z, {0, 0}).is_zero());
  CHECK(code_of([&] { charge_eval(z, {1, 0, 0}); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("ray_of canonicalizes per ray") {
  CentralCharge z = charge({{3, 3}, {-2, 0}, {0, 0}});
  CHECK(ray_of(z, {1, 0, 0}) == Ray(1, 1));
  CHECK(ray_of(z, {0, 1, 0}) == Ray(-1, 0));
  CHECK(ray_of(z, {0, 1, 0}) != Ray(1, 0));
  CHECK(code_of([&] { ray_of(z, {0, 0, 1}); }) == ErrorCode::kZeroCharge);
  CHECK(Ray(GaussRational{make_rational(1, 2), make_rational(3, 4)}) == Ray(2, 3));
  CHECK(Ray(-4, -6) == Ray(-2, -3));

  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int i = 0; i < 50; ++i) {
    CentralCharge r = charge({{d(rng), d(rng)}, {d(rng), d(rng)}});
    LatticeVec g{d(rng), d(rng)};
    if (charge_eval(r, g).is_zero()) continue;
    for (long k = 2; k <= 4; ++k) CHECK(ray_of(r, k * g) == ray_of(r, g));
  }
}

TEST_CASE("sectors are strict clockwise cones") {
  CHECK_THROWS_AS(Sector(Ray(1, 0), Ray(0, 1)), Error);
  CHECK_THROWS_AS(Sector(Ray(1, 0), Ray(-1, 0)), Error);
  CHECK(kUpperRight.contains({1, 1}));
  CHECK_FALSE(kUpperRight.contains({1, 0}));  // boundary excluded
  CHECK_FALSE(kUpperRight.contains({-1, 1}));
  Sector hull = Sector::upper_half_plane_hull({{-100, 1}, {5, make_rational(1, 3)}});
  CHECK(hull.contains({-100, 1}));
  CHECK(hull.contains({5, make_rational(1, 3)}));
  CHECK(hull.contains({-95, 2}));
  CHECK_THROWS_AS(Sector::upper_half_plane_hull({{-1, 0}}), Error);
}

TEST_CASE("phase_cmp") {
  // Z(e1) = i sits on the boundary of the open quadrant, so widen it slightly.
  const Sector wide(Ray(-1, 1), Ray(1, 0));
  CentralCharge z = charge({{0, 1}, {1, 1}});
  CHECK(code_of([&] { phase_cmp(z, {1, 0}, {0, 1}, kUpperRight); }) == ErrorCode::kOutsideSector);
  CHECK(phase_cmp(z, {1, 0}, {0, 1}, wide) == PhaseOrder::kCwBefore);
  CHECK(phase_cmp(z, {0, 1}, {1, 0}, wide) == PhaseOrder::kCwAfter);
  CentralCharge same = charge({{2, 2}, {1, 1}});
  CHECK(phase_cmp(same, {1, 0}, {0, 1}, kUpperRight) == PhaseOrder::kSameRay);
  // Z(e1) = -1+i has the larger phase, so it comes first clockwise.
  CentralCharge pent = charge({{-1, 1}, {1, 1}});
  const Sector hull = Sector::upper_half_plane_hull({{-1, 1}, {1, 1}});
  CHECK(phase_cmp(pent, {1, 0}, {0, 1}, hull) == PhaseOrder::kCwBefore);
  CHECK(phase_cmp(pent, {0, 1}, {1, 0}, hull) == PhaseOrder::kCwAfter);
  CHECK(code_of([&] { phase_cmp(pent, {1, 0}, {0, 1}, kUpperRight); }) == ErrorCode::kOutsideSector);
}

TEST_CASE("phase_cmp is a total preorder") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> d(1, 9);
  for (int trial = 0; trial < 20; ++trial) {
    CentralCharge z = charge({{d(rng) - 5, d(rng)}, {d(rng) - 5, d(rng)}, {d(rng) - 5, d(rng)}});
    auto vecs = lower_set_enum(Truncation::total_degree(3, 2), 3);
    for (const auto& a : vecs) {
      for (const auto& b : vecs) {
        Sector s = Sector::upper_half_plane_hull({charge_eval(z, a), charge_eval(z, b)});
        PhaseOrder ab = phase_cmp(z, a, b, s);
        PhaseOrder ba = phase_cmp(z, b, a, s);
        CHECK((ab == PhaseOrder::kSameRay) == (ba == PhaseOrder::kSameRay));
        if (ab == PhaseOrder::kCwBefore) CHECK(ba == PhaseOrder::kCwAfter);
        for (const auto& c : vecs) {
          Sector s3 = Sector::upper_half_plane_hull({charge_eval(z, a), charge_eval(z, b), charge_eval(z, c)});
          PhaseOrder bc = phase_cmp(z, b, c, s3);
          PhaseOrder ac = phase_cmp(z, a, c, s3);
          if (ab != PhaseOrder::kCwAfter && bc != PhaseOrder::kCwAfter) CHECK(ac != PhaseOrder::kCwAfter);
        }
      }
    }
  }
}

TEST_CASE("lower_set_enum") {
  using V = std::vector<LatticeVec>;
  CHECK(lower_set_enum({{1, 1}, 1}, 2) == V{{1, 0}, {0, 1}});
  CHECK(lower_set_enum({{1, 1}, 2}, 2) == V{{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}});
  CHECK(lower_set_enum({{1, 2}, 2}, 2) == V{{1, 0}, {2, 0}, {0, 1}});
  CHECK(lower_set_enum({{1, 1}, 0}, 2).empty());

  // Closed under coordinatewise decrease; matches a brute-force box filter.
  for (size_t rank = 1; rank <= 3; ++rank) {
    for (long bound = 1; bound <= 6; ++bound) {
      Truncation t{std::vector<long>(rank, 1), bound};
      t.u[0] = 2;
      auto set = lower_set_enum(t, rank);
      size_t brute = 0;
      LatticeVec g(rank);
      auto rec = [&](auto&& self, size_t i) -> void {
        if (i == rank) {
          if (t.contains(g)) ++brute;
          return;
        }
        for (long k = 0; k <= bound; ++k) {
          g[i] = k;
          self(self, i + 1);
        }
      };
      rec(rec, 0);
      CHECK(set.size() == brute);
      for (const auto& member : set) {
        for (size_t i = 0; i < rank; ++i) {
          if (member[i] == 0) continue;
          LatticeVec smaller = member;
          smaller[i] -= 1;
          if (!smaller.is_zero()) CHECK(std::find(set.begin(), set.end(), smaller) != set.end());
        }
      }
    }
  }
}

TEST_CASE("strict_cone_check") {
  using R = std::vector<std::vector<Rational>>;
  CHECK(strict_cone_check(R{{1, 0}, {0, 1}}));
  CHECK_FALSE(strict_cone_check(R{{1, 0}, {-1, 0}}));
  CHECK(strict_cone_check(R{{1, 0}, {1, 1}, {-1, 2}}));
  // Certificate u = (1,1) is positive on each of them.
  for (const auto& x : R{{1, 0}, {1, 1}, {-1, 2}}) CHECK(sgn(x[0] + x[1]) > 0);
  CHECK_FALSE(strict_cone_check(R{{1, 0}, {0, 1}, {-1, -1}}));
  CHECK_FALSE(strict_cone_check(R{{1, 1, 0}, {-1, 0, 1}, {0, -1, -1}}));
  CHECK(strict_cone_check(R{{1, 2, 3}}));
  CHECK(code_of([] { strict_cone_check(R{{0, 0}}); }) == ErrorCode::kZeroVector);
}

TEST_CASE("lower sets map to strict cones under half-plane charges") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-6, 6);
  std::uniform_int_distribution<int> pos(1, 6);
  for (int trial = 0; trial < 30; ++trial) {
    CentralCharge z = charge({{d(rng), pos(rng)}, {d(rng), pos(rng)}, {d(rng), pos(rng)}});
    std::vector<std::vector<Rational>> image;
    for (const auto& g : lower_set_enum(Truncation::total_degree(3, 3), 3)) {
      GaussRational w = charge_eval(z, g);
      image.push_back({w.re, w.im});
    }
    CHECK(strict_cone_check(image));
  }
}

TEST_CASE("support_property_check") {
  // Discriminant a1^2 - 2 a0 a2 on (a0, a1, a2).
  QuadForm disc{{{0, 0, -1}, {0, 1, 0}, {-1, 0, 0}}};
  // Z'_{0,1}: Re = a0/2 - a2, Im = a1.
  CentralCharge z{{make_rational(1, 2), 0, -1}, {0, 1, 0}};
  SupportReport r = support_property_check(disc, z, {{1, 0, 0}, {0, 0, 1}});
  REQUIRE(r.kernel_basis.size() == 1);
  // The kernel is spanned by (1, 0, 1/2), where the discriminant is -1.
  std::vector<Rational> k = r.kernel_basis[0];
  Rational scale = 1 / k[0];
  for (auto& x : k) x *= scale;
  CHECK(k == std::vector<Rational>{1, 0, make_rational(1, 2)});
  CHECK(disc.eval(k) == -1);
  CHECK(r.negative_definite_on_kernel);
  CHECK(r.violating.empty());

  // Injective Z: empty kernel, vacuous.
  CentralCharge inj{{1, 0}, {0, 1}};
  QuadForm neg{{{-1, 0}, {0, 0}}};
  SupportReport r2 = support_property_check(neg, inj, {{1, 0}, {0, 1}});
  CHECK(r2.kernel_basis.empty());
  CHECK(r2.negative_definite_on_kernel);
  CHECK(r2.violating == std::vector<LatticeVec>{{1, 0}});

  // Positive direction in the kernel.
  CentralCharge flat{{1, 0, 0}, {0, 1, 0}};
  QuadForm pos{{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}};
  CHECK_FALSE(support_property_check(pos, flat, {}).negative_definite_on_kernel);
  CHECK_THROWS_AS(support_property_check(pos, inj, {}), Error);
}
