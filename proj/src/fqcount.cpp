#include "wck/fqcount.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wck/error.hpp"

namespace wck {

namespace {

using Vec = std::vector<int>;

// Matrices are row-major, rows × cols.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<int> e;
  int at(int r, int c) const { return e[static_cast<size_t>(r * cols + c)]; }
};

long mod_inverse(long a, long q) {
  a %= q;
  if (a < 0) a += q;
  for (long x = 1; x < q; ++x) {
    if (a * x % q == 1) return x;
  }
  throw Error(ErrorCode::kInvalidArgument, "no inverse modulo " + std::to_string(q));
}

int reduce(const Rational& c, long q) {
  Integer den = c.get_den() % q;
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "relation coefficient has " + std::to_string(q) + " in its denominator");
  Integer num = c.get_num() % q;
  long n = num.get_si(), dn = den.get_si();
  long r = (n % q + q) % q * mod_inverse(dn, q) % q;
  return static_cast<int>(r);
}

Mat mat_times(const Mat& a, const Mat& b, long q) {
  Mat c{a.rows, b.cols, std::vector<int>(static_cast<size_t>(a.rows * b.cols), 0)};
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      int x = a.at(i, k);
      if (!x) continue;
      for (int j = 0; j < b.cols; ++j) {
        auto& y = c.e[static_cast<size_t>(i * c.cols + j)];
        y = static_cast<int>((y + x * b.at(k, j)) % q);
      }
    }
  }
  return c;
}

Mat identity(int n) {
  Mat m{n, n, std::vector<int>(static_cast<size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i) m.e[static_cast<size_t>(i * n + i)] = 1;
  return m;
}

// A subspace of F_q^n by its reduced row echelon basis.
struct Subspace {
  int n = 0;
  std::vector<Vec> rows;
  std::vector<int> pivots;

  bool contains(Vec w, long q) const {
    for (size_t k = 0; k < rows.size(); ++k) {
      int c = w[static_cast<size_t>(pivots[k])];
      if (!c) continue;
      for (int j = 0; j < n; ++j) {
        w[static_cast<size_t>(j)] = static_cast<int>(((w[static_cast<size_t>(j)] - c * rows[k][static_cast<size_t>(j)]) % q + q) % q);
      }
    }
    return std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
  }
};

// Every k-dimensional subspace of F_q^n, one RREF representative each.
std::vector<Subspace> subspaces(int n, int k, long q) {
  std::vector<Subspace> out;
  if (k == 0) {
    out.push_back({n, {}, {}});
    return out;
  }
  std::vector<int> piv(static_cast<size_t>(k));
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    // Free entries: row r, column j > piv[r] not a pivot column.
    std::vector<std::pair<int, int>> free;
    for (int r = 0; r < k; ++r) {
      for (int j = piv[static_cast<size_t>(r)] + 1; j < n; ++j) {
        if (std::find(piv.begin(), piv.end(), j) == piv.end()) free.emplace_back(r, j);
      }
    }
    std::vector<int> vals(free.size(), 0);
    while (true) {
      Subspace s{n, std::vector<Vec>(static_cast<size_t>(k), Vec(static_cast<size_t>(n), 0)), piv};
      for (int r = 0; r < k; ++r) s.rows[static_cast<size_t>(r)][static_cast<size_t>(piv[static_cast<size_t>(r)])] = 1;
      for (size_t f = 0; f < free.size(); ++f) {
        s.rows[static_cast<size_t>(free[f].first)][static_cast<size_t>(free[f].second)] = vals[f];
      }
      out.push_back(std::move(s));
      size_t f = 0;
      while (f < vals.size() && vals[f] == q - 1) vals[f++] = 0;
      if (f == vals.size()) break;
      ++vals[f];
    }
    // Next pivot set in lexicographic order.
    int r = k - 1;
    while (r >= 0 && piv[static_cast<size_t>(r)] == n - k + r) --r;
    if (r < 0) break;
    ++piv[static_cast<size_t>(r)];
    for (int s = r + 1; s < k; ++s) piv[static_cast<size_t>(s)] = piv[static_cast<size_t>(s - 1)] + 1;
  }
  return out;
}

Vec apply(const Mat& m, const Vec& u, long q) {
  Vec w(static_cast<size_t>(m.rows), 0);
  for (int i = 0; i < m.rows; ++i) {
    long s = 0;
    for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * u[static_cast<size_t>(j)];
    w[static_cast<size_t>(i)] = static_cast<int>(s % q);
  }
  return w;
}

struct Enumerator {
  const QPData& qp;
  DimVector d;
  long q;
  std::vector<Mat> mats;  // one per reduced arrow, d_to × d_from
  std::vector<std::vector<int>> rel_coeffs;

  // Destabilizing subspace tuples, grouped per dimension vector.
  std::vector<std::vector<std::vector<Subspace>>> destab;

  Enumerator(const QPData& qp_, const DimVector& d_, long q_) : qp(qp_), d(d_), q(q_) {
    if (!supported_prime(q)) throw Error(ErrorCode::kInvalidArgument, "q must be one of 2, 3, 5, 7");
    if (d.rank() != qp.quiver.num_vertices()) {
      throw Error(ErrorCode::kDimensionMismatch, "dimension vector " + d.to_string() + " has wrong length");
    }
    if (!d.nonnegative()) throw Error(ErrorCode::kInvalidArgument, "dimension vector must be nonnegative");
    long entries = 0;
    for (const auto& a : qp.reduced.arrows()) {
      int r = static_cast<int>(d[a.to]), c = static_cast<int>(d[a.from]);
      mats.push_back({r, c, std::vector<int>(static_cast<size_t>(r * c), 0)});
      entries += r * c;
    }
    double tuples = 1;
    for (long i = 0; i < entries; ++i) {
      tuples *= static_cast<double>(q);
      if (tuples > static_cast<double>(kMaxTuples)) {
        throw Error(ErrorCode::kTooLarge, "more than 1e8 matrix tuples for d = " + d.to_string());
      }
    }
    for (const auto& rel : qp.relations) {
      std::vector<int> cs;
      for (const auto& t : rel.terms) cs.push_back(reduce(t.coeff, q));
      rel_coeffs.push_back(std::move(cs));
    }
  }

  void prepare_stability(const CentralCharge& z) {
    long total = 0;
    for (long x : d.coords()) total += x;
    if (total > 5) throw Error(ErrorCode::kTooLarge, "semistability check needs Σd ≤ 5");
    if (z.rank() != d.rank()) throw Error(ErrorCode::kDimensionMismatch, "charge rank mismatch");
    const GaussRational zd = charge_eval(z, d);
    DimVector e(d.rank());
    while (true) {
      size_t i = 0;
      while (i < d.rank() && e[i] == d[i]) e[i++] = 0;
      if (i == d.rank()) break;
      ++e[i];
      if (e == d || sgn(cross(charge_eval(z, e), zd)) >= 0) continue;
      std::vector<std::vector<Subspace>> per_vertex;
      for (size_t v = 0; v < d.rank(); ++v) {
        per_vertex.push_back(subspaces(static_cast<int>(d[v]), static_cast<int>(e[v]), q));
      }
      destab.push_back(std::move(per_vertex));
    }
  }

  bool satisfies_relations() const {
    for (size_t r = 0; r < qp.relations.size(); ++r) {
      const Relation& rel = qp.relations[r];
      Mat sum{static_cast<int>(d[rel.to]), static_cast<int>(d[rel.from]),
              std::vector<int>(static_cast<size_t>(d[rel.to] * d[rel.from]), 0)};
      if (sum.e.empty()) continue;
      for (size_t t = 0; t < rel.terms.size(); ++t) {
        Mat prod = identity(static_cast<int>(d[rel.from]));
        for (size_t a : rel.terms[t].path) prod = mat_times(mats[a], prod, q);
        const int c = rel_coeffs[r][t];
        for (size_t k = 0; k < sum.e.size(); ++k) sum.e[k] = static_cast<int>((sum.e[k] + c * prod.e[k]) % q);
      }
      if (std::any_of(sum.e.begin(), sum.e.end(), [](int x) { return x != 0; })) return false;
    }
    return true;
  }

  bool invariant(const std::vector<const Subspace*>& u) const {
    const auto& arrows = qp.reduced.arrows();
    for (size_t a = 0; a < arrows.size(); ++a) {
      const Subspace& src = *u[arrows[a].from];
      const Subspace& dst = *u[arrows[a].to];
      for (const auto& row : src.rows) {
        if (!dst.contains(apply(mats[a], row, q), q)) return false;
      }
    }
    return true;
  }

  bool semistable() const {
    const size_t n = d.rank();
    for (const auto& per_vertex : destab) {
      std::vector<size_t> idx(n, 0);
      std::vector<const Subspace*> u(n);
      while (true) {
        for (size_t v = 0; v < n; ++v) u[v] = &per_vertex[v][idx[v]];
        if (invariant(u)) return false;
        size_t v = 0;
        while (v < n && idx[v] + 1 == per_vertex[v].size()) idx[v++] = 0;
        if (v == n) break;
        ++idx[v];
      }
    }
    return true;
  }

  FqCounts run(bool stability) {
    std::vector<int*> entries;
    for (auto& m : mats) {
      for (auto& x : m.e) entries.push_back(&x);
    }
    FqCounts out;
    while (true) {
      if (satisfies_relations()) {
        ++out.reps;
        if (stability && semistable()) ++out.semistable;
      }
      size_t i = 0;
      while (i < entries.size() && *entries[i] == q - 1) *entries[i++] = 0;
      if (i == entries.size()) break;
      ++*entries[i];
    }
    return out;
  }
};

}  // namespace

bool supported_prime(long q) { return q == 2 || q == 3 || q == 5 || q == 7; }

std::uint64_t count_reps(const QPData& qp, const DimVector& d, long q) {
  return Enumerator(qp, d, q).run(false).reps;
}

FqCounts count_both(const QPData& qp, const DimVector& d, long q, const CentralCharge& z) {
  Enumerator e(qp, d, q);
  e.prepare_stability(z);
  return e.run(true);
}

std::uint64_t count_semistable(const QPData& qp, const DimVector& d, long q, const CentralCharge& z) {
  return count_both(qp, d, q, z).semistable;
}

std::uint64_t count_gl(int n, long q) {
  if (!supported_prime(q)) throw Error(ErrorCode::kInvalidArgument, "q must be one of 2, 3, 5, 7");
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative size");
  if (std::pow(static_cast<double>(q), n * n) > static_cast<double>(kMaxTuples)) {
    throw Error(ErrorCode::kTooLarge, "too many matrices");
  }
  std::vector<int> m(static_cast<size_t>(n * n), 0);
  std::uint64_t count = 0;
  while (true) {
    // Rank by elimination mod q.
    std::vector<int> a = m;
    int rank = 0;
    for (int c = 0; c < n && rank < n; ++c) {
      int p = rank;
      while (p < n && a[static_cast<size_t>(p * n + c)] == 0) ++p;
      if (p == n) continue;
      for (int j = 0; j < n; ++j) std::swap(a[static_cast<size_t>(p * n + j)], a[static_cast<size_t>(rank * n + j)]);
      long inv = mod_inverse(a[static_cast<size_t>(rank * n + c)], q);
      for (int r = rank + 1; r < n; ++r) {
        long f = a[static_cast<size_t>(r * n + c)] * inv % q;
        if (!f) continue;
        for (int j = 0; j < n; ++j) {
          auto& x = a[static_cast<size_t>(r * n + j)];
          x = static_cast<int>(((x - f * a[static_cast<size_t>(rank * n + j)]) % q + q) % q);
        }
      }
      ++rank;
    }
    if (rank == n) ++count;
    size_t i = 0;
    while (i < m.size() && m[i] == q - 1) m[i++] = 0;
    if (i == m.size()) break;
    ++m[i];
  }
  return count;
}

bool verify_poly(const RatFunc& f, const std::map<long, std::uint64_t>& counts) {
  for (const auto& [q, n] : counts) {
    if (ratfunc_eval(f, Rational(q)) != Rational(Integer(std::to_string(n)))) return false;
  }
  return true;
}

RatFunc fit_class(const std::map<long, std::uint64_t>& counts) {
  if (counts.empty()) throw Error(ErrorCode::kInvalidArgument, "no counts to fit");
  const long base = counts.rbegin()->first;
  Integer rest(std::to_string(counts.rbegin()->second));
  std::vector<std::pair<int, Rational>> terms;
  // Digits in (-base/2, base/2].
  for (int k = 0; rest != 0; ++k) {
    Integer digit = rest % base;
    if (digit < 0) digit += base;
    if (2 * digit > base) digit -= base;
    if (digit != 0) terms.emplace_back(2 * k, Rational(digit));
    rest = (rest - digit) / base;
  }
  RatFunc f(LaurentPoly::from_terms(terms));
  if (!verify_poly(f, counts)) {
    throw Error(ErrorCode::kFitFailed, "no small-coefficient polynomial in L matches the counts");
  }
  return f;
}

namespace {

template <typename Count>
ClassTable fit_table(const QPData& qp, const Truncation& trunc, const std::vector<long>& primes, Count count) {
  ClassTable out;
  for (const auto& d : lower_set_enum(trunc, qp.quiver.num_vertices())) {
    std::map<long, std::uint64_t> counts;
    for (long q : primes) counts[q] = count(d, q);
    try {
      out.emplace(d, fit_class(counts));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kFitFailed) throw;
      throw Error(ErrorCode::kFitFailed, "d = " + d.to_string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

ClassTable fit_class_table(const QPData& qp, const Truncation& trunc, const std::vector<long>& primes) {
  return fit_table(qp, trunc, primes, [&](const DimVector& d, long q) { return count_reps(qp, d, q); });
}

ClassTable fit_semistable_table(const QPData& qp, const Truncation& trunc, const std::vector<long>& primes,
                                const CentralCharge& z) {
  return fit_table(qp, trunc, primes,
                   [&](const DimVector& d, long q) { return count_semistable(qp, d, q, z); });
}

}  // namespace wck
