// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.
// A criterion passes only if its checks hold and it finishes within its limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "hn_oracle.hpp"
#include "wck/dtinv.hpp"
#include "wck/error.hpp"
#include "wck/fqcount.hpp"
#include "wck/qtorus.hpp"
#include "wck/quiver.hpp"
#include "wck/surface.hpp"

using namespace wck;

namespace {

// Failure messages collected by a criterion; empty means all checks held.
struct Checks {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

RatFunc v(int k) { return RatFunc::v_power(k); }

Lattice random_lattice(std::mt19937& rng, size_t rank) {
  std::uniform_int_distribution<int> d(-2, 2);
  std::vector<std::vector<long>> m(rank, std::vector<long>(rank, 0));
  for (size_t i = 0; i < rank; ++i) {
    for (size_t j = i + 1; j < rank; ++j) {
      m[i][j] = d(rng);
      m[j][i] = -m[i][j];
    }
  }
  return Lattice(m);
}

RatFunc random_coeff(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  std::uniform_int_distribution<int> e(-2, 2);
  RatFunc f = RatFunc::monomial(c(rng), e(rng)) + RatFunc::monomial(c(rng), e(rng));
  if (c(rng) > 1) f /= (v(2) - 1);
  return f;
}

GradedSeries random_series(std::mt19937& rng, const Lattice& l, const Truncation& t, RatFunc unit) {
  GradedSeries s(l, t, std::move(unit));
  auto members = lower_set_enum(t, l.rank());
  std::uniform_int_distribution<size_t> pick(0, members.size() - 1);
  std::uniform_int_distribution<size_t> count(1, 12);
  for (size_t i = count(rng); i > 0; --i) s.add(members[pick(rng)], random_coeff(rng));
  return s;
}

GroupElem random_group(std::mt19937& rng, const Lattice& l, const Truncation& t) {
  return GroupElem(random_series(rng, l, t, RatFunc(1)));
}

LieElem random_lie(std::mt19937& rng, const Lattice& l, const Truncation& t) {
  return LieElem(random_series(rng, l, t, RatFunc()));
}

// Im Z(eᵢ) > 0 with generic real parts.
CentralCharge random_charge(std::mt19937& rng, size_t rank) {
  std::uniform_int_distribution<int> re(-20, 20);
  std::uniform_int_distribution<int> im(1, 20);
  std::vector<GaussRational> vals;
  for (size_t i = 0; i < rank; ++i) vals.push_back({make_rational(re(rng), 7), make_rational(im(rng), 3)});
  return CentralCharge::from_values(vals);
}

// Random rank in 1..3 and total-degree bound in 1..5.
std::pair<Lattice, Truncation> random_frame(std::mt19937& rng) {
  std::uniform_int_distribution<size_t> rank(1, 3);
  std::uniform_int_distribution<long> bound(1, 5);
  size_t r = rank(rng);
  return {random_lattice(rng, r), Truncation::total_degree(r, bound(rng))};
}

Sector hull_of(const std::vector<CentralCharge>& zs) {
  std::vector<GaussRational> vals;
  for (const auto& z : zs) {
    for (size_t i = 0; i < z.rank(); ++i) vals.push_back(z.value_on_basis(i));
  }
  return Sector::upper_half_plane_hull(vals);
}

Quiver kronecker(int n) {
  std::vector<Arrow> arrows;
  for (int i = 0; i < n; ++i) arrows.push_back({"k" + std::to_string(i), 0, 1});
  return Quiver({"1", "2"}, arrows);
}

QPData plain(Quiver q) { return make_qp(std::move(q), Potential(), {}); }

// Σ_k v^{k²} x^{k e}/[GL_k].
GroupElem dilog(const Lattice& l, const Truncation& t, const LatticeVec& e) {
  GroupElem out = GroupElem::one(l, t);
  for (long k = 1; t.contains(k * e); ++k) out.set(k * e, v(static_cast<int>(k * k)) / gl_class(static_cast<int>(k)));
  return out;
}

// ---------------------------------------------------------------------------

void matrix_identities(Checks& c) {
  const P2Data& p = p2_build();
  c.expect(mat_mul(p.a, mat_transpose(p.b)) == mat_identity(), "A·Bᵀ ≠ I");
  c.expect(mat_mul(p.c, mat_inverse(p.a)) == p.m, "M ≠ C·A⁻¹");
}

void euler_dictionary(Checks& c) {
  const QPData& qp = p2_build().qp;
  std::mt19937 rng(101);
  std::uniform_int_distribution<long> x(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    DimVector d{x(rng), x(rng), x(rng)}, e{x(rng), x(rng), x(rng)};
    const Rational via_chern = euler_x(dim_to_chern(d), dim_to_chern(e));
    const long via_quiver = euler_x_via_quiver(d, e);
    const long direct =
        euler_form_q(qp.quiver, d, e) + gamma_cut(qp.quiver, qp.cut, d, e) + gamma_cut(qp.quiver, qp.cut, e, d);
    c.expect(via_chern == via_quiver && via_quiver == direct, "dictionary fails at " + d.to_string() + ", " + e.to_string());
  }
  const DimVector o = chern_to_dim({1, 0, 0});
  const DimVector o1 = chern_to_dim({1, 1, make_rational(1, 2)});
  const DimVector o2 = chern_to_dim({1, 2, 2});
  c.expect(euler_x_via_quiver(o, o1) == 3, "χ(𝒪, 𝒪(1)) ≠ 3");
  c.expect(euler_x_via_quiver(o, o2) == 6, "χ(𝒪, 𝒪(2)) ≠ 6");
}

void quantum_torus(Checks& c) {
  std::mt19937 rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    auto [l, t] = random_frame(rng);
    auto f = random_series(rng, l, t, random_coeff(rng));
    auto g = random_series(rng, l, t, random_coeff(rng));
    auto h = random_series(rng, l, t, random_coeff(rng));
    c.expect(mul(mul(f, g), h) == mul(f, mul(g, h)), "associativity");
  }
  for (int trial = 0; trial < 5; ++trial) {
    Lattice l = random_lattice(rng, 3);
    Truncation t = Truncation::total_degree(3, 5);
    for (const auto& a : lower_set_enum(t, 3)) {
      for (const auto& b : lower_set_enum(t, 3)) {
        if (!t.contains(a + b)) continue;
        GradedSeries xa(l, t), xb(l, t);
        xa.set(a, 1);
        xb.set(b, 1);
        c.expect(mul(xa, xb) == mul(xb, xa).scaled(v(static_cast<int>(2 * l.pairing(a, b)))),
                 "commutation at " + a.to_string() + ", " + b.to_string());
      }
    }
  }
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    auto [l, t] = random_frame(rng);
    GroupElem g = random_group(rng, l, t);
    LieElem a = random_lie(rng, l, t);
    c.expect(exp(log(g)) == g, "exp ∘ log");
    c.expect(log(exp(a)) == a, "log ∘ exp");
    std::vector<Rational> x;
    for (size_t i = 0; i < l.rank(); ++i) x.emplace_back(d(rng));
    Projection p = wcs_project(g, x);
    c.expect(mul(mul(p.plus, p.zero), p.minus) == g, "wcs_project reconstruction");
  }
}

void factorization_uniqueness(Checks& c) {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    auto [l, t] = random_frame(rng);
    CentralCharge z = random_charge(rng, l.rank());
    Sector s = hull_of({z});
    GroupElem g = random_group(rng, l, t);
    c.expect(ordered_product(ray_components(g, z, s), z, s, l, t) == g, "ordered_product ∘ ray_components");
  }
}

std::set<Ray> ray_set(const std::vector<RayFactor>& factors) {
  std::set<Ray> out;
  for (const auto& [ray, f] : factors) out.insert(ray);
  return out;
}

// Support directions of the factors, as primitive dimension vectors.
std::set<LatticeVec> support_directions(const std::vector<RayFactor>& factors) {
  std::set<LatticeVec> out;
  for (const auto& [ray, f] : factors) {
    for (const auto& [gamma, coeff] : f.terms()) {
      const long g = gamma.content();
      out.insert(LatticeVec({gamma[0] / g, gamma[1] / g}));
    }
  }
  return out;
}

void wall_crossing(Checks& c) {
  const Truncation t = Truncation::total_degree(2, 8);
  // Each pair straddles the wall where Z(e₁) and Z(e₂) align.
  const std::vector<CentralCharge> e1_high{CentralCharge::from_values({{-1, 1}, {1, 1}}),
                                           CentralCharge::from_values({{-3, 2}, {2, 5}})};
  const std::vector<CentralCharge> e2_high{CentralCharge::from_values({{1, 1}, {-1, 1}}),
                                           CentralCharge::from_values({{2, 5}, {-3, 2}})};
  for (int arrows : {1, 2}) {
    Quiver q = kronecker(arrows);
    GroupElem total = total_series(plain(q), nullptr, t);
    for (const auto* side : {&e1_high, &e2_high}) {
      for (const auto& z : *side) {
        auto factors = hn_factorize(total, z, t);
        const Sector s = stability_sector(z);
        c.expect(ordered_product(factors, z, s) == total, "product ≠ total for K" + std::to_string(arrows));
        oracle::HNRecursion hn(q, z);
        auto expected = hn.ray_factors(t);
        bool same = factors.size() == expected.size();
        for (const auto& [ray, f] : factors) {
          auto it = expected.find(ray);
          same = same && it != expected.end() && it->second == f;
        }
        c.expect(same, "ray factors differ from the HN recursion for K" + std::to_string(arrows));
        if (arrows == 1) {
          const std::set<LatticeVec> want = side == &e1_high ? std::set<LatticeVec>{{1, 0}, {0, 1}, {1, 1}}
                                                             : std::set<LatticeVec>{{1, 0}, {0, 1}};
          c.expect(support_directions(factors) == want, "A₂ ray supports");
          c.expect(ray_set(factors).size() == want.size(), "A₂ ray count");
        }
      }
    }
  }
}

void ks_transport_roundtrip(Checks& c) {
  Lattice l({{0, -1}, {1, 0}});
  Truncation t = Truncation::total_degree(2, 5);
  LieElem two = LieElem::zero(l, t);
  two += log(dilog(l, t, {1, 0}));
  two += log(dilog(l, t, {0, 1}));
  CentralCharge before = CentralCharge::from_values({{1, 1}, {-1, 1}});
  CentralCharge after = CentralCharge::from_values({{-1, 1}, {1, 1}});
  Sector s = hull_of({before, after});
  LieElem three = ks_transport(two, before, after, s);
  c.expect(ks_transport(three, after, before, s) == two, "A₂ roundtrip");
  c.expect(exp_Z(two, before, s) == exp_Z(three, after, s), "A₂ exp_Z invariance");
  c.expect(!three.coeff({1, 1}).is_zero(), "A₂ transport misses e₁ + e₂");

  std::mt19937 rng(106);
  for (int trial = 0; trial < 50; ++trial) {
    size_t rank = 2 + trial % 2;
    Lattice lr = random_lattice(rng, rank);
    Truncation tr = Truncation::total_degree(rank, 3);
    CentralCharge z0 = random_charge(rng, rank), z1 = random_charge(rng, rank);
    Sector hull = hull_of({z0, z1});
    LieElem a = random_lie(rng, lr, tr);
    LieElem b = ks_transport(a, z0, z1, hull);
    c.expect(ks_transport(b, z1, z0, hull) == a, "random roundtrip");
    c.expect(exp_Z(a, z0, hull) == exp_Z(b, z1, hull), "random exp_Z invariance");
  }
}

std::uint64_t ipow(std::uint64_t b, long e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void fq_oracle(Checks& c) {
  const std::vector<CentralCharge> charges{CentralCharge::from_values({{-1, 1}, {1, 1}}),
                                           CentralCharge::from_values({{1, 1}, {-1, 1}})};
  for (int arrows : {1, 2}) {
    Quiver q = kronecker(arrows);
    QPData qp = plain(q);
    for (const auto& z : charges) {
      oracle::HNRecursion hn(q, z);
      for (const auto& d : lower_set_enum(Truncation::total_degree(2, 4), 2)) {
        const RatFunc numerator = hn.semistable_numerator(d);
        for (long p : {2, 3, 5}) {
          FqCounts n = count_both(qp, d, p, z);
          const std::string at = "K" + std::to_string(arrows) + " d=" + d.to_string() + " q=" + std::to_string(p);
          c.expect(n.reps == ipow(static_cast<std::uint64_t>(p), arrows * d[0] * d[1]), "reps at " + at);
          c.expect(ratfunc_eval(numerator, Rational(p)) == Rational(static_cast<long>(n.semistable)),
                   "semistable at " + at);
        }
      }
    }
  }
}

void p2_gluing(Checks& c) {
  const QPData& qp = p2_build().qp;
  const Polarization p{make_rational(-2, 5), make_rational(1, 5)};
  c.expect(special_region_check(p), "(-2/5, 1/5) outside the special region");
  const Truncation t = Truncation::total_degree(3, 3);
  const std::vector<long> primes{2, 3, 5};
  ClassTable table = fit_class_table(qp, t, primes);
  for (const auto& [d, cls] : table) {
    std::map<long, std::uint64_t> counts;
    for (long q : primes) counts[q] = count_reps(qp, d, q);
    c.expect(verify_poly(cls, counts), "verify_poly at " + d.to_string());
  }
  GlueReport r = glue_check(p, table, t);
  c.expect(r.product_matches_total, "glued product ≠ total series");
  const Sector s = stability_sector(r.z);
  std::vector<RayFactor> factors;
  for (const auto& ray : r.rays) factors.emplace_back(ray.ray, ray.quiver_factor);
  c.expect(ordered_product(factors, r.z, s, r.total.lattice(), t) == total_series(qp, &table, t),
           "ray factors do not multiply to the total series");
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 6);
  return make_rational(num(rng), den(rng));
}

Rational random_positive(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(1, 30);
  std::uniform_int_distribution<long> den(1, 6);
  return make_rational(num(rng), den(rng));
}

void surface_identities(Checks& c) {
  std::mt19937 rng(109);
  for (int trial = 0; trial < 1000; ++trial) {
    ChernVector b{random_rational(rng), random_rational(rng), random_rational(rng)};
    Rational h = random_positive(rng), w = random_positive(rng);
    c.expect(delta_h_tilde(b, h, w) == phase_deriv_quantity(b, h, w), "delta_h_tilde ≠ phase_deriv_quantity");
  }
  for (long i = 0; i < 5; ++i) {
    for (long j = 1; j <= 5; ++j) {
      Polarization p{make_rational(-5 + 2 * i, 3), make_rational(j, 4)};
      c.expect(support_property_check(discriminant_form(), charge_st(p), {}).negative_definite_on_kernel,
               "discriminant not negative definite on the kernel");
      c.expect(central_charge_st(p, {0, 0, 1}) == GaussRational{-1, 0}, "Z(𝒪_p) ≠ -1");
    }
  }
  for (long i = 1; i <= 20; ++i) {
    for (long j = 1; j <= 20; ++j) {
      Polarization p{make_rational(-i, 40), make_rational(j, 40)};
      if (special_region_check(p)) c.expect(simples_sign_check(p), "sign implication");
    }
  }
}

bool unit_monomial(const RatFunc& f) {
  for (int k = -12; k <= 12; ++k) {
    if (f == v(k) || f == -v(k)) return true;
  }
  return false;
}

void dt_extraction(Checks& c) {
  RaySeries a{{1}, 6, {}};
  for (long k = 1; k <= 6; ++k) a.set(k, v(static_cast<int>(k * k)) / gl_class(static_cast<int>(k)));
  DTTable t = dt_extract(a);
  c.expect(unit_monomial(t.at(1)), "Ω(1) is not a unit monomial");
  for (long k = 2; k <= 6; ++k) c.expect(t.at(k).is_zero(), "Ω(" + std::to_string(k) + ") ≠ 0");

  std::mt19937 rng(110);
  std::uniform_int_distribution<int> co(-3, 3);
  std::uniform_int_distribution<long> bound(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    RaySeries f{{1}, bound(rng), {}};
    for (long k = 1; k <= f.bound; ++k) {
      RatFunc x = RatFunc::monomial(co(rng), co(rng)) + RatFunc::monomial(co(rng), co(rng));
      if (co(rng) > 0) x /= (v(2) - 1);
      f.set(k, x);
    }
    c.expect(pleth_log(pleth_exp(f)) == f, "pleth_log ∘ pleth_exp");
    c.expect(pleth_exp(pleth_log(f)) == f, "pleth_exp ∘ pleth_log");
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Checks&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "P2 matrix identities", 1e-3, matrix_identities},
      {2, "Euler form dictionary", 1, euler_dictionary},
      {3, "quantum torus algebra", 10, quantum_torus},
      {4, "factorization uniqueness", 30, factorization_uniqueness},
      {5, "wall-crossing consistency", 60, wall_crossing},
      {6, "KS transport", 60, ks_transport_roundtrip},
      {7, "F_q oracle agreement", 300, fq_oracle},
      {8, "P2 gluing", 600, p2_gluing},
      {9, "surface identities", 10, surface_identities},
      {10, "DT extraction", 10, dt_extraction},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(checks);
    } catch (const std::exception& e) {
      checks.failures.push_back(std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_s) checks.failures.push_back("over the time limit");
    const bool ok = checks.failures.empty();
    failed += !ok;
    std::printf("%s %2d %-28s %10.4f s (limit %g s)", ok ? "PASS" : "FAIL", cr.id, cr.name, secs, cr.limit_s);
    if (!ok) std::printf("  %zu failure(s), first: %s", checks.failures.size(), checks.failures.front().c_str());
    std::printf("\n");
  }
  return failed == 0 ? 0 : 1;
}
