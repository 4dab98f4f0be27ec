#pragma once

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include "wck/exactnum.hpp"

namespace wck {

/// An element of Γ ≅ ℤⁿ.
class LatticeVec {
 public:
  LatticeVec() = default;
  explicit LatticeVec(size_t rank) : c_(rank, 0) {}
  explicit LatticeVec(std::vector<long> coords) : c_(std::move(coords)) {}
  LatticeVec(std::initializer_list<long> coords) : c_(coords) {}

  static LatticeVec basis(size_t rank, size_t i) {
    LatticeVec e(rank);
    e.c_[i] = 1;
    return e;
  }

  size_t rank() const { return c_.size(); }
  long operator[](size_t i) const { return c_[i]; }
  long& operator[](size_t i) { return c_[i]; }
  const std::vector<long>& coords() const { return c_; }
  bool is_zero() const;
  bool nonnegative() const;
  /// gcd of the coordinates (0 for the zero vector).
  long content() const;

  LatticeVec& operator+=(const LatticeVec& o);
  LatticeVec& operator-=(const LatticeVec& o);
  friend LatticeVec operator+(LatticeVec a, const LatticeVec& b) { return a += b; }
  friend LatticeVec operator-(LatticeVec a, const LatticeVec& b) { return a -= b; }
  friend LatticeVec operator*(long k, LatticeVec a) {
    for (auto& x : a.c_) x *= k;
    return a;
  }
  friend bool operator==(const LatticeVec&, const LatticeVec&) = default;
  friend auto operator<=>(const LatticeVec&, const LatticeVec&) = default;

  /// "1,0,2".
  std::string to_string() const;

 private:
  std::vector<long> c_;
};

/// Γ with a skew-symmetric integer form ⟨·,·⟩.
class Lattice {
 public:
  Lattice() = default;
  /// Throws Error(kInvalidArgument) if skew is not square antisymmetric.
  explicit Lattice(std::vector<std::vector<long>> skew);
  static Lattice commutative(size_t rank) {
    return Lattice(std::vector<std::vector<long>>(rank, std::vector<long>(rank, 0)));
  }

  size_t rank() const { return skew_.size(); }
  const std::vector<std::vector<long>>& skew() const { return skew_; }
  long pairing(const LatticeVec& a, const LatticeVec& b) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  std::vector<std::vector<long>> skew_;
};

/// Z: Γ → ℂ with exact rational real and imaginary parts.
struct CentralCharge {
  std::vector<Rational> re;
  std::vector<Rational> im;

  size_t rank() const { return re.size(); }
  /// Z(e_i) = values[i].
  static CentralCharge from_values(const std::vector<GaussRational>& values);
  GaussRational value_on_basis(size_t i) const { return {re[i], im[i]}; }
  /// Post-multiplication by a complex number, e.g. the rotation i^{-1}.
  CentralCharge times(const GaussRational& w) const;
};

/// Throws Error(kDimensionMismatch).
GaussRational charge_eval(const CentralCharge& z, const LatticeVec& gamma);

/// A ray ℝ_{>0}(x, y) ⊂ ℂ, stored as the primitive integer direction.
class Ray {
 public:
  /// Throws Error(kZeroCharge) for the origin.
  explicit Ray(const GaussRational& direction);
  Ray(long x, long y) : Ray(GaussRational{x, y}) {}

  const Integer& x() const { return x_; }
  const Integer& y() const { return y_; }
  GaussRational direction() const { return {Rational(x_), Rational(y_)}; }
  bool contains(const GaussRational& z) const;

  friend bool operator==(const Ray& a, const Ray& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
  friend bool operator!=(const Ray& a, const Ray& b) { return !(a == b); }
  /// Arbitrary but fixed total order, for use as a map key.
  friend bool operator<(const Ray& a, const Ray& b) {
    return a.x_ != b.x_ ? a.x_ < b.x_ : a.y_ < b.y_;
  }
  /// "x,y".
  std::string to_string() const;

 private:
  Integer x_;
  Integer y_;
};

/// Throws Error(kZeroCharge) when Z(γ) = 0.
Ray ray_of(const CentralCharge& z, const LatticeVec& gamma);

/// Open sector swept clockwise from start to end; the angle is < π.
class Sector {
 public:
  /// Throws Error(kInvalidArgument) unless end is strictly clockwise of start
  /// by less than a half-turn.
  Sector(Ray start, Ray end);

  /// Smallest-effort strict sector containing every given nonzero value of the
  /// open upper half-plane. Throws Error(kOutsideSector) if some Im ≤ 0.
  static Sector upper_half_plane_hull(const std::vector<GaussRational>& values);

  const Ray& start() const { return start_; }
  const Ray& end() const { return end_; }
  bool contains(const GaussRational& z) const;

 private:
  Ray start_;
  Ray end_;
};

/// True iff a comes strictly before b clockwise, for a, b inside one strict
/// sector (i.e. strictly larger phase).
inline bool clockwise_before(const GaussRational& a, const GaussRational& b) {
  return sgn(cross(a, b)) < 0;
}

enum class PhaseOrder { kCwBefore, kSameRay, kCwAfter };

/// Throws Error(kOutsideSector) or Error(kDimensionMismatch).
PhaseOrder phase_cmp(const CentralCharge& z, const LatticeVec& g1, const LatticeVec& g2,
                     const Sector& sector);

/// Symmetric rational bilinear form on Γ_ℝ.
struct QuadForm {
  std::vector<std::vector<Rational>> sym;

  Rational eval(const std::vector<Rational>& x) const;
  Rational eval(const LatticeVec& x) const;
};

/// The finite lower set {γ ≥ 0, γ ≠ 0 : u·γ ≤ bound}.
struct Truncation {
  std::vector<long> u;
  long bound = 0;

  /// u = (1, ..., 1).
  static Truncation total_degree(size_t rank, long bound) {
    return {std::vector<long>(rank, 1), bound};
  }
  long weight(const LatticeVec& gamma) const;
  bool contains(const LatticeVec& gamma) const;

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// All members sorted by weight, then lexicographically.
std::vector<LatticeVec> lower_set_enum(const Truncation& t, size_t rank);

/// Whether some rational covector is strictly positive on every vector.
/// Throws Error(kZeroVector) for a zero input.
bool strict_cone_check(const std::vector<std::vector<Rational>>& vectors);

struct SupportReport {
  bool negative_definite_on_kernel = false;
  std::vector<std::vector<Rational>> kernel_basis;
  std::vector<LatticeVec> violating;  // support vectors with Q(γ) < 0
};

SupportReport support_property_check(const QuadForm& q, const CentralCharge& z,
                                     const std::vector<LatticeVec>& support);

/// Basis of the right kernel of a rational matrix, one vector per free column.
std::vector<std::vector<Rational>> kernel_basis(const std::vector<std::vector<Rational>>& rows,
                                                size_t cols);

}  // namespace wck
