#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wck {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical p/q (mpq_class(p, q) alone does not reduce).
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws Error(kParse).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// A value Z(γ) ∈ ℚ(i).
struct GaussRational {
  Rational re;
  Rational im;

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussRational conj() const { return {re, -im}; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Re(a)Im(b) - Re(b)Im(a): positive iff b is counterclockwise of a (within π).
Rational cross(const GaussRational& a, const GaussRational& b);

/// Finite Laurent polynomial in v with rational coefficients. Stored densely
/// from the lowest nonzero exponent; never stores leading or trailing zeros.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int64_t c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const Rational& c, int exponent);
  /// Builds from (exponent, coefficient) pairs; repeated exponents add up.
  static LaurentPoly from_terms(const std::vector<std::pair<int, Rational>>& terms);

  bool is_zero() const { return coeffs_.empty(); }
  /// Lowest and highest exponents carrying a nonzero coefficient (0 for zero).
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(int exponent) const;
  const Rational& leading() const { return coeffs_.back(); }
  const Rational& trailing() const { return coeffs_.front(); }
  /// Coefficients from low() to high().
  const std::vector<Rational>& dense() const { return coeffs_; }
  bool is_monomial() const { return coeffs_.size() == 1; }
  bool even_only() const;

  LaurentPoly shifted(int by) const;
  /// v ↦ v^k.
  LaurentPoly substitute_power(int k) const;
  /// v ↦ -v.
  LaurentPoly negate_variable() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  LaurentPoly operator-() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

  std::string to_string() const;

 private:
  LaurentPoly(int low, std::vector<Rational> coeffs);
  void normalize();

  int low_ = 0;
  std::vector<Rational> coeffs_;

  friend class RatFunc;
};

/// Element of ℚ(v), kept as num/den with gcd(num, den) = 1 and den a monic
/// polynomial with nonzero constant term, so equality is structural.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(int64_t c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const LaurentPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  /// Throws Error(kInvalidArgument) when den is zero.
  RatFunc(const LaurentPoly& num, const LaurentPoly& den);

  static RatFunc monomial(const Rational& c, int exponent) {
    return RatFunc(LaurentPoly::monomial(c, exponent));
  }
  /// v^exponent.
  static RatFunc v_power(int exponent) { return monomial(Rational(1), exponent); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_polynomial() const { return den_.is_monomial(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc pow(int n) const;
  /// Multiplication by v^k, cheaper than a general product.
  RatFunc times_v_power(int k) const;

  /// v ↦ v^k (plain Adams operation).
  RatFunc substitute_power(int k) const;
  /// v ↦ -v.
  RatFunc negate_variable() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  /// "num / den" with terms "c*v^k" in descending k.
  std::string to_string() const;
  /// Accepts the output of to_string, and also a bare numerator.
  static RatFunc parse(std::string_view text);

 private:
  struct Unchecked {};
  RatFunc(LaurentPoly num, LaurentPoly den, Unchecked) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  LaurentPoly num_;
  LaurentPoly den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

/// Sums many fractions, grouping equal denominators before reducing.
class RatFuncAccumulator {
 public:
  void add(const RatFunc& f);
  void add_product(const RatFunc& a, const RatFunc& b, int v_shift);
  RatFunc total() const;
  bool empty() const { return groups_.empty(); }

 private:
  std::vector<std::pair<LaurentPoly, LaurentPoly>> groups_;  // (den, sum of nums)
};

/// [GL_n] = ∏_{i<n} (v^{2n} - v^{2i}).
RatFunc gl_class(int n);

/// Value of f at L = v² = q. f must only involve even powers of v.
/// Throws Error(kOddExponent) or Error(kPoleAtQ).
Rational ratfunc_eval(const RatFunc& f, const Rational& q);

/// Plain Adams operation v ↦ v^k.
RatFunc adams(const RatFunc& f, int k);

/// Adams operation treating -v as the line element: v ↦ -(-v)^k. This is the
/// convention under which the motivic Lefschetz square root behaves as an odd
/// class (the E-polynomial map sends it to -√(uv)).
RatFunc adams_signed(const RatFunc& f, int k);

/// Polynomial gcd over ℚ of two Laurent polynomials, ignoring powers of v;
/// returned monic with nonzero constant term.
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace wck
