#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "wck/chern.hpp"
#include "wck/exactnum.hpp"
#include "wck/lattice.hpp"
#include "wck/quiver.hpp"

namespace wck {

/// β = sH, ω = tH with t > 0.
struct Polarization {
  Rational s;
  Rational t;
};

/// Throws Error(kInvalidArgument) unless t > 0.
void require_polarization(const Polarization& p);

/// e^{-β}·a.
ChernVector twist(const ChernVector& a, const Rational& beta);

/// Z'_{s,t}(a) = (r(t²-s²)/2 + s a₁ - a₂) + i t(a₁ - s r).
GaussRational central_charge_st(const Polarization& p, const ChernVector& a);
/// The same map on the basis (1,0,0), (0,1,0), (0,0,1).
CentralCharge charge_st(const Polarization& p);

/// a₁² - 2 r a₂.
Rational discriminant(const ChernVector& a);
/// a₁b₁ - a₀b₂ - a₂b₀.
Rational pairing(const ChernVector& a, const ChernVector& b);
/// The discriminant as a symmetric form on the Chern basis.
QuadForm discriminant_form();
/// χ(a, b) by Hirzebruch–Riemann–Roch on ℙ².
Rational euler_x(const ChernVector& a, const ChernVector& b);
/// 3(a₀b₁ - a₁b₀).
Rational skew_ang(const ChernVector& a, const ChernVector& b);

/// hw(b₁² - b₀b₂) for an already twisted b. Throws Error(kInvalidArgument) if h < 0 or w ≤ 0.
Rational delta_h(const ChernVector& b, const Rational& h, const Rational& w);
/// delta_h + b₀²hw³/2. Throws Error(kInvalidArgument) unless h, w > 0.
Rational delta_h_tilde(const ChernVector& b, const Rational& h, const Rational& w);
/// Im((-b₁h + i b₀hw)·conj(b₀w²/2 - b₂ + i b₁w)).
Rational phase_deriv_quantity(const ChernVector& b, const Rational& h, const Rational& w);

/// s > -1/2, t > 0, s + t < 0.
bool special_region_check(const Polarization& p);
/// With y = (t²-s²)/2: y < 0, -2y + s - 1/2 < 0, y - s - 1/2 < 0.
bool simples_sign_check(const Polarization& p);

/// Lexicographic comparison of (a₁t/r, (a₂ - a₁s)/r). Throws Error(kNonpositiveRank).
std::strong_ordering twisted_slope_cmp(const ChernVector& a, const ChernVector& b, const Polarization& p);

/// A parameter τ ∈ [0,1] on segment `segment` where Z' hits the target ray.
/// Exact hits have lo == hi; irrational ones come as an isolating interval.
struct WallHit {
  size_t segment = 0;
  Rational lo;
  Rational hi;
  bool whole_segment = false;

  bool exact() const { return lo == hi; }
};

/// Width of isolating intervals for irrational crossings.
inline const Rational& wall_scan_tolerance() {
  static const Rational tol = make_rational(1, 1L << 40);
  return tol;
}

/// Points of the piecewise linear path (s,t)(τ) where Z'_{s,t}(dim_to_chern(γ))
/// lies on the target ray. Throws Error(kDegenerateSegment) for fewer than two
/// breakpoints, Error(kInvalidArgument) for t ≤ 0.
std::vector<WallHit> wall_scan(const DimVector& gamma, const std::vector<Polarization>& path, const Ray& target);

/// Quiver charge Z(d) = -i·Z'_{s,t}(dim_to_chern(d)).
CentralCharge glue_charge(const Polarization& p);

struct GlueRay {
  Ray ray;
  GroupElem quiver_factor;
  /// 1 + Σ v^{χ̄(d,d)} [R_Z(d)]/[GL_d] x^d, when a semistable table was given.
  std::optional<GroupElem> assembled;
  bool equal = true;
};

struct GlueReport {
  CentralCharge z;
  GroupElem total;
  std::vector<GlueRay> rays;
  bool product_matches_total = false;

  bool ok() const;
};

/// Factorizes the ℙ² total series at the rotated charge and compares each ray
/// factor with the one assembled from semistable classes.
/// Throws Error(kRegionViolation) or Error(kMissingClassTableEntry).
GlueReport glue_check(const Polarization& p, const ClassTable& table, const Truncation& trunc,
                      const ClassTable* semistable = nullptr);

}  // namespace wck
