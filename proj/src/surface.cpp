#include "wck/surface.hpp"

#include <algorithm>
#include <array>

#include "wck/error.hpp"

namespace wck {

void require_polarization(const Polarization& p) {
  if (sgn(p.t) <= 0) throw Error(ErrorCode::kInvalidArgument, "polarization needs t > 0");
}

ChernVector twist(const ChernVector& a, const Rational& beta) {
  return {a.r, a.a1 - a.r * beta, a.a2 - a.a1 * beta + a.r * beta * beta / 2};
}

GaussRational central_charge_st(const Polarization& p, const ChernVector& a) {
  const Rational re = a.r * (p.t * p.t - p.s * p.s) / 2 + p.s * a.a1 - a.a2;
  const Rational im = p.t * (a.a1 - p.s * a.r);
  return {re, im};
}

CentralCharge charge_st(const Polarization& p) {
  return CentralCharge::from_values({central_charge_st(p, {1, 0, 0}), central_charge_st(p, {0, 1, 0}),
                                     central_charge_st(p, {0, 0, 1})});
}

Rational discriminant(const ChernVector& a) { return a.a1 * a.a1 - 2 * a.r * a.a2; }

Rational pairing(const ChernVector& a, const ChernVector& b) {
  return a.a1 * b.a1 - a.r * b.a2 - a.a2 * b.r;
}

QuadForm discriminant_form() {
  return {{{0, 0, -1}, {0, 1, 0}, {-1, 0, 0}}};
}

Rational euler_x(const ChernVector& a, const ChernVector& b) {
  // ∫ ch(a)^∨ ch(b) td, td = 1 + 3H/2 + pt.
  const Rational deg1 = a.r * b.a1 - a.a1 * b.r;
  const Rational deg2 = a.r * b.a2 - a.a1 * b.a1 + a.a2 * b.r;
  return deg2 + make_rational(3, 2) * deg1 + a.r * b.r;
}

Rational skew_ang(const ChernVector& a, const ChernVector& b) { return 3 * (a.r * b.a1 - a.a1 * b.r); }

Rational delta_h(const ChernVector& b, const Rational& h, const Rational& w) {
  if (sgn(h) < 0 || sgn(w) <= 0) throw Error(ErrorCode::kInvalidArgument, "delta_h needs h ≥ 0, w > 0");
  return h * w * (b.a1 * b.a1 - b.r * b.a2);
}

Rational delta_h_tilde(const ChernVector& b, const Rational& h, const Rational& w) {
  if (sgn(h) <= 0 || sgn(w) <= 0) throw Error(ErrorCode::kInvalidArgument, "delta_h_tilde needs h, w > 0");
  return delta_h(b, h, w) + b.r * b.r * h * w * w * w / 2;
}

Rational phase_deriv_quantity(const ChernVector& b, const Rational& h, const Rational& w) {
  if (sgn(h) <= 0 || sgn(w) <= 0) throw Error(ErrorCode::kInvalidArgument, "phase_deriv_quantity needs h, w > 0");
  const GaussRational first{-b.a1 * h, b.r * h * w};
  const GaussRational second{b.r * w * w / 2 - b.a2, b.a1 * w};
  return (first * second.conj()).im;
}

bool special_region_check(const Polarization& p) {
  return p.s > make_rational(-1, 2) && sgn(p.t) > 0 && sgn(p.s + p.t) < 0;
}

bool simples_sign_check(const Polarization& p) {
  const Rational y = (p.t * p.t - p.s * p.s) / 2;
  const Rational half = make_rational(1, 2);
  return sgn(y) < 0 && sgn(-2 * y + p.s - half) < 0 && sgn(y - p.s - half) < 0;
}

std::strong_ordering twisted_slope_cmp(const ChernVector& a, const ChernVector& b, const Polarization& p) {
  if (sgn(a.r) <= 0 || sgn(b.r) <= 0) throw Error(ErrorCode::kNonpositiveRank, "twisted slopes need positive rank");
  const Rational mu_a = a.a1 * p.t / a.r, mu_b = b.a1 * p.t / b.r;
  if (mu_a != mu_b) return mu_a < mu_b ? std::strong_ordering::less : std::strong_ordering::greater;
  const Rational nu_a = (a.a2 - a.a1 * p.s) / a.r, nu_b = (b.a2 - b.a1 * p.s) / b.r;
  if (nu_a != nu_b) return nu_a < nu_b ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

namespace {

// c[0] + c[1]τ + c[2]τ².
using Quad = std::array<Rational, 3>;

Rational eval(const Quad& f, const Rational& x) { return f[0] + x * (f[1] + x * f[2]); }

Quad mul(const std::array<Rational, 2>& a, const std::array<Rational, 2>& b) {
  return {a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1]};
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return std::nullopt;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Roots of f in [0,1]; exact as [r,r], otherwise isolating intervals.
std::vector<std::pair<Rational, Rational>> roots_in_unit(const Quad& f) {
  std::vector<Rational> cuts{Rational(0)};
  if (sgn(f[2]) != 0) {
    Rational vertex = -f[1] / (2 * f[2]);
    if (sgn(vertex) > 0 && vertex < 1) cuts.push_back(vertex);
  }
  cuts.push_back(Rational(1));
  std::optional<Rational> sqrt_disc;
  if (sgn(f[2]) != 0) sqrt_disc = rational_sqrt(f[1] * f[1] - 4 * f[2] * f[0]);

  std::vector<std::pair<Rational, Rational>> out;
  auto push = [&](const Rational& lo, const Rational& hi) {
    for (const auto& [a, b] : out) {
      if (a == lo && b == hi) return;
    }
    out.emplace_back(lo, hi);
  };
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    Rational lo = cuts[k], hi = cuts[k + 1];
    const int sl = sgn(eval(f, lo)), sh = sgn(eval(f, hi));
    if (sl == 0) push(lo, lo);
    if (sh == 0) push(hi, hi);
    if (sl == 0 || sh == 0 || sl == sh) continue;
    if (sgn(f[2]) == 0) {
      Rational r = -f[0] / f[1];
      push(r, r);
      continue;
    }
    if (sqrt_disc) {
      for (int sign : {-1, 1}) {
        Rational r = (-f[1] + sign * *sqrt_disc) / (2 * f[2]);
        if (r > lo && r < hi) push(r, r);
      }
      continue;
    }
    while (hi - lo > wall_scan_tolerance()) {
      Rational mid = (lo + hi) / 2;
      if (sgn(eval(f, mid)) == sl) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    push(lo, hi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<WallHit> wall_scan(const DimVector& gamma, const std::vector<Polarization>& path, const Ray& target) {
  if (path.size() < 2) throw Error(ErrorCode::kDegenerateSegment, "a path needs at least two breakpoints");
  for (const auto& p : path) require_polarization(p);
  const ChernVector a = dim_to_chern(gamma);
  const Rational tx(target.x()), ty(target.y());
  std::vector<WallHit> hits;
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    const std::array<Rational, 2> s{path[k].s, path[k + 1].s - path[k].s};
    const std::array<Rational, 2> t{path[k].t, path[k + 1].t - path[k].t};
    const Quad ss = mul(s, s), tt = mul(t, t);
    Quad re, im;
    for (int i = 0; i < 3; ++i) re[i] = a.r * (tt[i] - ss[i]) / 2;
    re[0] += s[0] * a.a1 - a.a2;
    re[1] += s[1] * a.a1;
    const Quad ts = mul(t, s);
    for (int i = 0; i < 3; ++i) im[i] = -a.r * ts[i];
    im[0] += t[0] * a.a1;
    im[1] += t[1] * a.a1;
    // On the ray: cross(target, Z) = 0 and dot(target, Z) > 0.
    Quad cr, dot;
    for (int i = 0; i < 3; ++i) {
      cr[i] = tx * im[i] - ty * re[i];
      dot[i] = tx * re[i] + ty * im[i];
    }
    if (std::all_of(cr.begin(), cr.end(), [](const Rational& c) { return sgn(c) == 0; })) {
      if (sgn(eval(dot, make_rational(1, 2))) > 0) hits.push_back({k, Rational(0), Rational(1), true});
      continue;
    }
    for (const auto& [lo, hi] : roots_in_unit(cr)) {
      if (sgn(eval(dot, (lo + hi) / 2)) > 0) hits.push_back({k, lo, hi, false});
    }
  }
  return hits;
}

// ---------------------------------------------------------------------------

CentralCharge glue_charge(const Polarization& p) {
  std::vector<GaussRational> values;
  for (size_t i = 0; i < 3; ++i) {
    values.push_back(GaussRational{0, -1} * central_charge_st(p, dim_to_chern(DimVector::basis(3, i))));
  }
  return CentralCharge::from_values(values);
}

bool GlueReport::ok() const {
  return product_matches_total &&
         std::all_of(rays.begin(), rays.end(), [](const GlueRay& r) { return r.equal; });
}

GlueReport glue_check(const Polarization& p, const ClassTable& table, const Truncation& trunc,
                      const ClassTable* semistable) {
  require_polarization(p);
  if (!special_region_check(p)) {
    throw Error(ErrorCode::kRegionViolation, "(s,t) is outside the region s > -1/2, s + t < 0");
  }
  const CentralCharge z = glue_charge(p);
  for (size_t i = 0; i < 3; ++i) {
    if (sgn(z.im[i]) <= 0) throw Error(ErrorCode::kRegionViolation, "rotated charge leaves the upper half-plane");
  }
  const P2Data& p2 = p2_build();
  GroupElem total = total_series(p2.qp, &table, trunc);
  auto factors = hn_factorize(total, z, trunc);
  GlueReport report{z, total, {}, false};
  const Sector sector = stability_sector(z);
  if (factors.empty()) {
    report.product_matches_total = total.is_one();
  } else {
    report.product_matches_total = ordered_product(factors, z, sector) == total;
  }

  std::map<Ray, GroupElem> assembled;
  if (semistable) {
    for (const auto& d : lower_set_enum(trunc, 3)) {
      auto it = semistable->find(d);
      if (it == semistable->end()) {
        throw Error(ErrorCode::kMissingClassTableEntry, "no semistable class for d = " + d.to_string());
      }
      if (it->second.is_zero()) continue;
      const long chi = euler_form_q(p2.qp.quiver, d, d) + 2 * gamma_cut(p2.qp.quiver, p2.qp.cut, d, d);
      auto [slot, fresh] = assembled.try_emplace(ray_of(z, d), GroupElem::one(total.lattice(), trunc));
      slot->second.set(d, (it->second / gl_class_dim(d)).times_v_power(static_cast<int>(chi)));
    }
  }
  for (auto& [ray, factor] : factors) {
    GlueRay r{ray, factor, std::nullopt, true};
    if (semistable) {
      auto it = assembled.find(ray);
      r.assembled = it == assembled.end() ? GroupElem::one(total.lattice(), trunc) : it->second;
      r.equal = *r.assembled == factor;
      if (it != assembled.end()) assembled.erase(it);
    }
    report.rays.push_back(std::move(r));
  }
  // Semistable classes on rays the factorization left trivial.
  for (auto& [ray, series] : assembled) {
    report.rays.push_back({ray, GroupElem::one(total.lattice(), trunc), series, false});
  }
  return report;
}

}  // namespace wck
