#include "wck/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wck/error.hpp"

namespace wck {

namespace {

void require_rank(size_t expected, size_t got, const char* what) {
  if (expected != got) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + ": expected rank " +
                                                   std::to_string(expected) + ", got " +
                                                   std::to_string(got));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

bool LatticeVec::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](long x) { return x == 0; });
}

bool LatticeVec::nonnegative() const {
  return std::all_of(c_.begin(), c_.end(), [](long x) { return x >= 0; });
}

long LatticeVec::content() const {
  long g = 0;
  for (long x : c_) g = std::gcd(g, x);
  return g;
}

LatticeVec& LatticeVec::operator+=(const LatticeVec& o) {
  require_rank(c_.size(), o.c_.size(), "lattice vector sum");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

LatticeVec& LatticeVec::operator-=(const LatticeVec& o) {
  require_rank(c_.size(), o.c_.size(), "lattice vector difference");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

std::string LatticeVec::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  return os.str();
}

// ---------------------------------------------------------------------------

Lattice::Lattice(std::vector<std::vector<long>> skew) : skew_(std::move(skew)) {
  const size_t n = skew_.size();
  for (size_t i = 0; i < n; ++i) {
    if (skew_[i].size() != n) throw Error(ErrorCode::kInvalidArgument, "skew form is not square");
    for (size_t j = 0; j < n; ++j) {
      if (j < skew_[j].size() && skew_[i][j] != -skew_[j][i]) {
        throw Error(ErrorCode::kInvalidArgument, "skew form is not antisymmetric");
      }
    }
  }
}

long Lattice::pairing(const LatticeVec& a, const LatticeVec& b) const {
  require_rank(rank(), a.rank(), "skew pairing");
  require_rank(rank(), b.rank(), "skew pairing");
  long total = 0;
  for (size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < rank(); ++j) total += a[i] * skew_[i][j] * b[j];
  }
  return total;
}

// ---------------------------------------------------------------------------

CentralCharge CentralCharge::from_values(const std::vector<GaussRational>& values) {
  CentralCharge z;
  for (const auto& w : values) {
    z.re.push_back(w.re);
    z.im.push_back(w.im);
  }
  return z;
}

CentralCharge CentralCharge::times(const GaussRational& w) const {
  CentralCharge out;
  for (size_t i = 0; i < rank(); ++i) {
    GaussRational v = value_on_basis(i) * w;
    out.re.push_back(v.re);
    out.im.push_back(v.im);
  }
  return out;
}

GaussRational charge_eval(const CentralCharge& z, const LatticeVec& gamma) {
  require_rank(z.re.size(), gamma.rank(), "central charge");
  require_rank(z.im.size(), gamma.rank(), "central charge");
  GaussRational out;
  for (size_t i = 0; i < gamma.rank(); ++i) {
    if (gamma[i] == 0) continue;
    out.re += z.re[i] * gamma[i];
    out.im += z.im[i] * gamma[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

Ray::Ray(const GaussRational& direction) {
  if (direction.is_zero()) throw Error(ErrorCode::kZeroCharge, "ray of the zero vector");
  Integer l;
  mpz_lcm(l.get_mpz_t(), direction.re.get_den_mpz_t(), direction.im.get_den_mpz_t());
  Rational xr = direction.re * l;
  Rational yr = direction.im * l;
  x_ = xr.get_num();
  y_ = yr.get_num();
  Integer g;
  mpz_gcd(g.get_mpz_t(), x_.get_mpz_t(), y_.get_mpz_t());
  x_ /= g;
  y_ /= g;
}

bool Ray::contains(const GaussRational& z) const {
  if (z.is_zero()) return false;
  GaussRational d = direction();
  return sgn(cross(d, z)) == 0 && sgn(d.re * z.re + d.im * z.im) > 0;
}

std::string Ray::to_string() const { return x_.get_str() + "," + y_.get_str(); }

Ray ray_of(const CentralCharge& z, const LatticeVec& gamma) {
  GaussRational w = charge_eval(z, gamma);
  if (w.is_zero()) throw Error(ErrorCode::kZeroCharge, "Z(" + gamma.to_string() + ") = 0");
  return Ray(w);
}

// ---------------------------------------------------------------------------

Sector::Sector(Ray start, Ray end) : start_(std::move(start)), end_(std::move(end)) {
  if (sgn(cross(start_.direction(), end_.direction())) >= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "sector from " + start_.to_string() + " to " + end_.to_string() +
                    " is not a strict clockwise cone");
  }
}

Sector Sector::upper_half_plane_hull(const std::vector<GaussRational>& values) {
  Rational h;
  bool first = true;
  for (const auto& z : values) {
    if (sgn(z.im) <= 0) {
      throw Error(ErrorCode::kOutsideSector, "value " + z.re.get_str() + "+" + z.im.get_str() +
                                                 "i is not in the open upper half-plane");
    }
    Rational candidate = z.im / (abs(z.re) + 1) / 2;
    if (first || candidate < h) h = candidate;
    first = false;
  }
  if (first) h = 1;
  return Sector(Ray(GaussRational{-1, h}), Ray(GaussRational{1, h}));
}

bool Sector::contains(const GaussRational& z) const {
  if (z.is_zero()) return false;
  return sgn(cross(start_.direction(), z)) < 0 && sgn(cross(z, end_.direction())) < 0;
}

PhaseOrder phase_cmp(const CentralCharge& z, const LatticeVec& g1, const LatticeVec& g2,
                     const Sector& sector) {
  GaussRational a = charge_eval(z, g1);
  GaussRational b = charge_eval(z, g2);
  if (!sector.contains(a) || !sector.contains(b)) {
    throw Error(ErrorCode::kOutsideSector, "charge outside the sector");
  }
  int s = sgn(cross(a, b));
  if (s == 0) return PhaseOrder::kSameRay;
  return s < 0 ? PhaseOrder::kCwBefore : PhaseOrder::kCwAfter;
}

// ---------------------------------------------------------------------------

Rational QuadForm::eval(const std::vector<Rational>& x) const {
  require_rank(sym.size(), x.size(), "quadratic form");
  Rational total = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (size_t j = 0; j < x.size(); ++j) total += x[i] * sym[i][j] * x[j];
  }
  return total;
}

Rational QuadForm::eval(const LatticeVec& x) const {
  std::vector<Rational> r;
  for (long c : x.coords()) r.emplace_back(c);
  return eval(r);
}

// ---------------------------------------------------------------------------

long Truncation::weight(const LatticeVec& gamma) const {
  require_rank(u.size(), gamma.rank(), "truncation weight");
  long w = 0;
  for (size_t i = 0; i < u.size(); ++i) w += u[i] * gamma[i];
  return w;
}

bool Truncation::contains(const LatticeVec& gamma) const {
  return gamma.rank() == u.size() && gamma.nonnegative() && !gamma.is_zero() &&
         weight(gamma) <= bound;
}

std::vector<LatticeVec> lower_set_enum(const Truncation& t, size_t rank) {
  require_rank(rank, t.u.size(), "truncation");
  for (long x : t.u) {
    if (x <= 0) throw Error(ErrorCode::kInvalidArgument, "truncation covector must be positive");
  }
  std::vector<LatticeVec> out;
  LatticeVec cur(rank);
  // Depth-first over coordinates with the remaining weight budget.
  auto rec = [&](auto&& self, size_t i, long budget) -> void {
    if (i == rank) {
      if (!cur.is_zero()) out.push_back(cur);
      return;
    }
    for (long k = 0; k * t.u[i] <= budget; ++k) {
      cur[i] = k;
      self(self, i + 1, budget - k * t.u[i]);
    }
    cur[i] = 0;
  };
  if (t.bound > 0) rec(rec, 0, t.bound);
  std::sort(out.begin(), out.end(), [&](const LatticeVec& a, const LatticeVec& b) {
    long wa = t.weight(a);
    long wb = t.weight(b);
    if (wa != wb) return wa < wb;
    return a > b;  // (1,0) before (0,1): lexicographically descending
  });
  return out;
}

// ---------------------------------------------------------------------------

bool strict_cone_check(const std::vector<std::vector<Rational>>& vectors) {
  if (vectors.empty()) throw Error(ErrorCode::kInvalidArgument, "empty vector list");
  const size_t n = vectors.front().size();
  // Constraints a·u >= b with b = 1 (scaling makes strict positivity equivalent).
  struct Constraint {
    std::vector<Rational> a;
    Rational b;
  };
  std::vector<Constraint> cons;
  for (const auto& x : vectors) {
    require_rank(n, x.size(), "strict cone input");
    if (std::all_of(x.begin(), x.end(), [](const Rational& c) { return sgn(c) == 0; })) {
      throw Error(ErrorCode::kZeroVector, "zero vector in strict cone check");
    }
    cons.push_back({x, Rational(1)});
  }
  // Fourier–Motzkin elimination of u_{n-1}, ..., u_0.
  for (size_t k = n; k-- > 0;) {
    std::vector<Constraint> pos;
    std::vector<Constraint> neg;
    std::vector<Constraint> next;
    for (auto& c : cons) {
      int s = sgn(c.a[k]);
      if (s > 0) pos.push_back(std::move(c));
      else if (s < 0) neg.push_back(std::move(c));
      else next.push_back(std::move(c));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // (-q_k) * p + p_k * q eliminates u_k with positive multipliers.
        Rational mp = -q.a[k];
        Rational mq = p.a[k];
        Constraint c{std::vector<Rational>(n), mp * p.b + mq * q.b};
        for (size_t i = 0; i < n; ++i) c.a[i] = mp * p.a[i] + mq * q.a[i];
        c.a[k] = 0;
        next.push_back(std::move(c));
      }
    }
    cons = std::move(next);
  }
  return std::all_of(cons.begin(), cons.end(), [](const Constraint& c) { return sgn(c.b) <= 0; });
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Rational>> kernel_basis(const std::vector<std::vector<Rational>>& rows,
                                                size_t cols) {
  std::vector<std::vector<Rational>> m = rows;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[static_cast<size_t>(pivot_col[i])] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

// Leading principal minors of a symmetric matrix, by exact Gaussian
// elimination without pivoting; positive definite iff all are > 0.
bool positive_definite(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  for (size_t k = 0; k < n; ++k) {
    if (sgn(m[k][k]) <= 0) return false;
    for (size_t i = k + 1; i < n; ++i) {
      Rational f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

}  // namespace

SupportReport support_property_check(const QuadForm& q, const CentralCharge& z,
                                     const std::vector<LatticeVec>& support) {
  const size_t n = q.sym.size();
  require_rank(n, z.re.size(), "support property");
  require_rank(n, z.im.size(), "support property");
  SupportReport report;
  report.kernel_basis = kernel_basis({z.re, z.im}, n);
  const auto& k = report.kernel_basis;
  // -Q restricted to the kernel, in the kernel basis.
  std::vector<std::vector<Rational>> restricted(k.size(), std::vector<Rational>(k.size()));
  for (size_t a = 0; a < k.size(); ++a) {
    for (size_t b = 0; b < k.size(); ++b) {
      Rational total = 0;
      for (size_t i = 0; i < n; ++i) {
        if (sgn(k[a][i]) == 0) continue;
        for (size_t j = 0; j < n; ++j) total += k[a][i] * q.sym[i][j] * k[b][j];
      }
      restricted[a][b] = -total;
    }
  }
  report.negative_definite_on_kernel = positive_definite(std::move(restricted));
  for (const auto& g : support) {
    require_rank(n, g.rank(), "support vector");
    if (sgn(q.eval(g)) < 0) report.violating.push_back(g);
  }
  return report;
}

}  // namespace wck
