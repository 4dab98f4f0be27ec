#include "wck/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

#include "wck/error.hpp"

namespace wck {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  auto valid = [](const std::string& part) {
    size_t start = (!part.empty() && part.front() == '-') ? 1 : 0;
    if (part.size() <= start) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(start), part.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den.front() == '-') {
    throw Error(ErrorCode::kParse, "not a rational: '" + std::string(text) + "'");
  }
  Integer n(num);
  Integer d(den);
  if (d == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational cross(const GaussRational& a, const GaussRational& b) {
  return a.re * b.im - b.re * a.im;
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers (index = degree).

namespace {

using Dense = std::vector<Rational>;

void trim(Dense& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const Dense& p) { return static_cast<int>(p.size()) - 1; }

// Remainder of a modulo b, b nonzero.
Dense poly_rem(Dense a, const Dense& b) {
  const int db = degree(b);
  Rational inv_lead = 1 / b.back();
  Rational factor;
  while (degree(a) >= db) {
    factor = a.back() * inv_lead;
    const int shift = degree(a) - db;
    for (int i = 0; i < db; ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

// Exact quotient a / b; b must divide a.
Dense poly_exact_div(Dense a, const Dense& b) {
  const int db = degree(b);
  const int dq = degree(a) - db;
  Dense q(static_cast<size_t>(dq + 1));
  Rational inv_lead = 1 / b.back();
  for (int k = dq; k >= 0; --k) {
    q[k] = a[k + db] * inv_lead;
    if (sgn(q[k]) == 0) continue;
    for (int i = 0; i <= db; ++i) a[k + i] -= q[k] * b[i];
  }
  return q;
}

void make_monic(Dense& p) {
  if (p.empty() || p.back() == 1) return;
  Rational inv = 1 / p.back();
  for (auto& c : p) c *= inv;
}

// Integer polynomial helpers for the heuristic gcd.
using IDense = std::vector<Integer>;

IDense primitive_part(const Dense& p) {
  Integer l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IDense out(p.size());
  Integer g = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    out[i] = p[i].get_num() * (l / p[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1) {
    for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

Integer max_norm(const IDense& p) {
  Integer m = 0;
  for (const auto& c : p) {
    if (abs(c) > m) m = abs(c);
  }
  return m;
}

Integer eval_at(const IDense& p, const Integer& x) {
  Integer acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

bool int_divides(const IDense& g, IDense a) {
  const int dg = static_cast<int>(g.size()) - 1;
  const int da = static_cast<int>(a.size()) - 1;
  if (dg > da) return false;
  Integer q, r;
  for (int k = da - dg; k >= 0; --k) {
    Integer& top = a[k + dg];
    if (sgn(top) == 0) continue;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), g.back().get_mpz_t());
    if (sgn(r) != 0) return false;
    for (int i = 0; i <= dg; ++i) a[k + i] -= q * g[i];
  }
  for (const auto& c : a) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

// Char-Geddes-Gonnet: gcd of values at a large integer, read back in balanced
// base ξ. Returns an empty vector when it gives up.
Dense heuristic_gcd(const Dense& a, const Dense& b) {
  IDense pa = primitive_part(a);
  IDense pb = primitive_part(b);
  Integer xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Integer h;
    Integer va = eval_at(pa, xi), vb = eval_at(pb, xi);
    mpz_gcd(h.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    IDense g;
    Integer half = xi / 2;
    while (sgn(h) != 0) {
      Integer c;
      mpz_fdiv_r(c.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
      if (c > half) c -= xi;
      g.push_back(c);
      h = (h - c) / xi;
    }
    while (!g.empty() && sgn(g.back()) == 0) g.pop_back();
    if (!g.empty()) {
      Integer content = 0;
      for (const auto& c : g) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
      for (auto& c : g) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
      if (int_divides(g, pa) && int_divides(g, pb)) {
        Dense out(g.size());
        for (size_t i = 0; i < g.size(); ++i) out[i] = Rational(g[i]);
        make_monic(out);
        return out;
      }
    }
    xi = xi * 73794 / 27011;
  }
  return {};
}

Dense dense_gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  if (!a.empty() && !b.empty()) {
    Dense h = heuristic_gcd(a, b);
    if (!h.empty()) return h;
  }
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    if (degree(b) == 0) return Dense{Rational(1)};
    Dense r = poly_rem(std::move(a), b);
    make_monic(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}


}  // namespace

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(int64_t c) {
  if (c != 0) coeffs_.emplace_back(static_cast<long>(c));
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (sgn(c) != 0) coeffs_.push_back(c);
}

LaurentPoly::LaurentPoly(int low, std::vector<Rational> coeffs)
    : low_(low), coeffs_(std::move(coeffs)) {
  normalize();
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int exponent) {
  LaurentPoly p(c);
  if (!p.is_zero()) p.low_ = exponent;
  return p;
}

LaurentPoly LaurentPoly::from_terms(const std::vector<std::pair<int, Rational>>& terms) {
  LaurentPoly p;
  for (const auto& [e, c] : terms) p += monomial(c, e);
  return p;
}

void LaurentPoly::normalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  size_t lead = 0;
  while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
  if (coeffs_.empty()) low_ = 0;
}

Rational LaurentPoly::coeff(int exponent) const {
  if (is_zero() || exponent < low_ || exponent > high()) return 0;
  return coeffs_[static_cast<size_t>(exponent - low_)];
}

bool LaurentPoly::even_only() const {
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0 && ((low_ + static_cast<int>(i)) % 2 != 0)) return false;
  }
  return true;
}

LaurentPoly LaurentPoly::shifted(int by) const {
  LaurentPoly p = *this;
  if (!p.is_zero()) p.low_ += by;
  return p;
}

LaurentPoly LaurentPoly::substitute_power(int k) const {
  if (is_zero() || k == 1) return *this;
  std::vector<Rational> out((coeffs_.size() - 1) * static_cast<size_t>(k) + 1);
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i * static_cast<size_t>(k)] = coeffs_[i];
  return LaurentPoly(low_ * k, std::move(out));
}

LaurentPoly LaurentPoly::negate_variable() const {
  LaurentPoly p = *this;
  for (size_t i = 0; i < p.coeffs_.size(); ++i) {
    if ((p.low_ + static_cast<int>(i)) % 2 != 0) p.coeffs_[i] = -p.coeffs_[i];
  }
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  if (lo < low_ || hi > high()) {
    std::vector<Rational> grown(static_cast<size_t>(hi - lo + 1));
    for (size_t i = 0; i < coeffs_.size(); ++i) grown[static_cast<size_t>(low_ - lo) + i] = coeffs_[i];
    coeffs_ = std::move(grown);
    low_ = lo;
  }
  for (size_t i = 0; i < o.coeffs_.size(); ++i) {
    coeffs_[static_cast<size_t>(o.low_ - low_) + i] += o.coeffs_[i];
  }
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  Rational t;
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      t = a.coeffs_[i] * b.coeffs_[j];
      out[i + j] += t;
    }
  }
  return LaurentPoly(a.low_ + b.low_, std::move(out));
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.low_ != b.low_) return a.low_ < b.low_;
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
  }
  return false;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int e = high(); e >= low_; --e) {
    const Rational& c = coeffs_[static_cast<size_t>(e - low_)];
    if (sgn(c) == 0) continue;
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    os << Rational(abs(c)).get_str() << "*v^" << e;
    first = false;
  }
  return os.str();
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return LaurentPoly(1);
  Dense g = dense_gcd(a.dense(), b.dense());
  LaurentPoly p;
  for (size_t i = 0; i < g.size(); ++i) p += LaurentPoly::monomial(g[i], static_cast<int>(i));
  return p;
}

// ---------------------------------------------------------------------------
// RatFunc

RatFunc::RatFunc(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  // Move the v-power of the denominator into the numerator.
  const int shift = den_.low_;
  den_.low_ = 0;
  num_.low_ -= shift;
  if (den_.coeffs_.size() > 1) {
    const Dense& nd = num_.coeffs_;
    const Dense& dd = den_.coeffs_;
    Dense g = dense_gcd(nd, dd);
    if (g.size() > 1) {
      num_.coeffs_ = poly_exact_div(num_.coeffs_, g);
      den_.coeffs_ = poly_exact_div(den_.coeffs_, g);
      num_.normalize();
      den_.normalize();
    }
  }
  if (den_.coeffs_.back() != 1) {
    Rational inv = 1 / den_.coeffs_.back();
    num_ *= inv;
    den_ *= inv;
  }
}

bool RatFunc::is_one() const {
  return den_.is_monomial() && num_.is_monomial() && num_.low() == 0 && num_.trailing() == 1;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  if (den_.is_monomial()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    normalize();
    return *this;
  }
  if (o.den_.is_monomial()) {
    num_ += o.num_ * den_;
    normalize();
    return *this;
  }
  // Combine over lcm(den, o.den).
  Dense g = dense_gcd(den_.coeffs_, o.den_.coeffs_);
  if (g.size() > 1) {
    LaurentPoly mine(0, poly_exact_div(den_.coeffs_, g));
    LaurentPoly theirs(0, poly_exact_div(o.den_.coeffs_, g));
    num_ = num_ * theirs + o.num_ * mine;
    den_ = den_ * theirs;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_monomial() && o.den_.is_monomial()) {
    num_ = num_ * o.num_;
    return *this;
  }
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Unchecked{}); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kInvalidArgument, "inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RatFunc result(1);
  RatFunc base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

RatFunc RatFunc::times_v_power(int k) const {
  if (is_zero()) return *this;
  return RatFunc(num_.shifted(k), den_, Unchecked{});
}

RatFunc RatFunc::substitute_power(int k) const {
  if (k == 1) return *this;
  return RatFunc(num_.substitute_power(k), den_.substitute_power(k));
}

RatFunc RatFunc::negate_variable() const {
  return RatFunc(num_.negate_variable(), den_.negate_variable());
}

std::string RatFunc::to_string() const { return num_.to_string() + " / " + den_.to_string(); }

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

namespace {

class RatFuncParser {
 public:
  explicit RatFuncParser(std::string_view s) : s_(s) {}

  RatFunc parse() {
    LaurentPoly num = parse_group();
    skip_ws();
    LaurentPoly den(1);
    if (peek() == '/') {
      ++pos_;
      den = parse_group();
    }
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    if (den.is_zero()) fail("zero denominator");
    return RatFunc(num, den);
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::kParse, why + " in '" + std::string(s_) + "'");
  }

  LaurentPoly parse_group() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      LaurentPoly p = parse_poly();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    return parse_poly();
  }

  LaurentPoly parse_poly() {
    LaurentPoly p;
    skip_ws();
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    p += parse_term() * Rational(sign);
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      p += parse_term() * Rational(c == '-' ? -1 : 1);
    }
    return p;
  }

  LaurentPoly parse_term() {
    skip_ws();
    Rational c(1);
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = parse_unsigned_rational();
      have_coeff = true;
      skip_ws();
      if (peek() != '*') return LaurentPoly(c);
      ++pos_;
      skip_ws();
    }
    if (peek() != 'v') {
      if (have_coeff) fail("expected 'v'");
      fail("expected a term");
    }
    ++pos_;
    int e = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      int sign = 1;
      if (peek() == '-') {
        sign = -1;
        ++pos_;
      }
      size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) fail("expected exponent");
      e = sign * std::stoi(std::string(s_.substr(start, pos_ - start)));
    }
    return LaurentPoly::monomial(c, e);
  }

  Rational parse_unsigned_rational() {
    size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '/' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    return parse_rational(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return RatFuncParser(text).parse(); }

// ---------------------------------------------------------------------------
// Accumulator

void RatFuncAccumulator::add(const RatFunc& f) {
  if (f.is_zero()) return;
  for (auto& [den, num] : groups_) {
    if (den == f.den()) {
      num += f.num();
      return;
    }
  }
  groups_.emplace_back(f.den(), f.num());
}

void RatFuncAccumulator::add_product(const RatFunc& a, const RatFunc& b, int v_shift) {
  if (a.is_zero() || b.is_zero()) return;
  LaurentPoly num = (a.num() * b.num()).shifted(v_shift);
  LaurentPoly den = a.den().is_monomial() ? b.den() : b.den().is_monomial() ? a.den() : a.den() * b.den();
  for (auto& [d, n] : groups_) {
    if (d == den) {
      n += num;
      return;
    }
  }
  groups_.emplace_back(std::move(den), std::move(num));
}

RatFunc RatFuncAccumulator::total() const {
  RatFunc sum;
  for (const auto& [den, num] : groups_) {
    if (num.is_zero()) continue;
    sum += RatFunc(num, den);
  }
  return sum;
}

// ---------------------------------------------------------------------------

RatFunc gl_class(int n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "gl_class of negative rank");
  LaurentPoly p(1);
  for (int i = 0; i < n; ++i) {
    p = p * (LaurentPoly::monomial(1, 2 * n) - LaurentPoly::monomial(1, 2 * i));
  }
  return RatFunc(p);
}

namespace {

Rational eval_even(const LaurentPoly& p, const Rational& q) {
  Rational total = 0;
  for (int e = p.low(); !p.is_zero() && e <= p.high(); ++e) {
    Rational c = p.coeff(e);
    if (sgn(c) == 0) continue;
    const int half = e / 2;
    Rational power = 1;
    if (half >= 0) {
      mpz_class num;
      mpz_class den;
      mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(half));
      mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(half));
      power = Rational(num, den);
    } else {
      if (sgn(q) == 0) throw Error(ErrorCode::kPoleAtQ, "negative power of L at L = 0");
      mpz_class num;
      mpz_class den;
      mpz_pow_ui(num.get_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(-half));
      mpz_pow_ui(den.get_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(-half));
      power = Rational(num, den);
    }
    power.canonicalize();
    total += c * power;
  }
  return total;
}

}  // namespace

Rational ratfunc_eval(const RatFunc& f, const Rational& q) {
  if (!f.num().even_only() || !f.den().even_only()) {
    throw Error(ErrorCode::kOddExponent, "cannot substitute L = q into " + f.to_string());
  }
  Rational den = eval_even(f.den(), q);
  if (sgn(den) == 0) {
    throw Error(ErrorCode::kPoleAtQ, "denominator of " + f.to_string() + " vanishes at L = " + q.get_str());
  }
  return eval_even(f.num(), q) / den;
}

RatFunc adams(const RatFunc& f, int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "Adams operation needs k >= 1");
  return f.substitute_power(k);
}

RatFunc adams_signed(const RatFunc& f, int k) {
  return adams(f.negate_variable(), k).negate_variable();
}

}  // namespace wck
