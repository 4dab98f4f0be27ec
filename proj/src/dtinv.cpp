#include "wck/dtinv.hpp"

#include <vector>

#include "wck/error.hpp"

namespace wck {

RatFunc RaySeries::coeff(long k) const {
  auto it = coeffs.find(k);
  return it == coeffs.end() ? RatFunc() : it->second;
}

void RaySeries::set(long k, RatFunc c) {
  if (k < 1 || k > bound) return;
  if (c.is_zero()) {
    coeffs.erase(k);
  } else {
    coeffs[k] = std::move(c);
  }
}

RatFunc DTTable::at(long k) const {
  auto it = omega.find(k);
  return it == omega.end() ? RatFunc() : it->second;
}

RatFunc adams_op(const RatFunc& f, int k, AdamsConvention conv) {
  return conv == AdamsConvention::kSigned ? adams_signed(f, k) : adams(f, k);
}

namespace {

// Dense coefficients 0..bound.
std::vector<RatFunc> dense(const RaySeries& f, RatFunc unit) {
  std::vector<RatFunc> out(f.bound + 1);
  out[0] = std::move(unit);
  for (const auto& [k, c] : f.coeffs) {
    if (k >= 1 && k <= f.bound) out[k] = c;
  }
  return out;
}

RaySeries sparse(const RaySeries& like, const std::vector<RatFunc>& d) {
  RaySeries out{like.base, like.bound, {}};
  for (long k = 1; k <= like.bound; ++k) out.set(k, d[k]);
  return out;
}

}  // namespace

RaySeries pleth_exp(const RaySeries& f, AdamsConvention conv) {
  const long n = f.bound;
  // S = Σ_k ψ_k(f)/k, then E = exp(S) from n E_n = Σ_j j S_j E_{n-j}.
  std::vector<RatFunc> s(n + 1);
  for (const auto& [m, c] : f.coeffs) {
    for (long k = 1; k * m <= n; ++k) {
      s[k * m] += adams_op(c, static_cast<int>(k), conv) * RatFunc(make_rational(1, k));
    }
  }
  std::vector<RatFunc> e(n + 1);
  e[0] = RatFunc(1);
  for (long m = 1; m <= n; ++m) {
    RatFuncAccumulator acc;
    for (long j = 1; j <= m; ++j) acc.add_product(s[j] * RatFunc(j), e[m - j], 0);
    e[m] = acc.total() * RatFunc(make_rational(1, m));
  }
  return sparse(f, e);
}

RaySeries pleth_log(const RaySeries& g, AdamsConvention conv) {
  const long n = g.bound;
  std::vector<RatFunc> e = dense(g, RatFunc(1));
  // log: m S_m = m E_m - Σ_{j<m} j S_j E_{m-j}.
  std::vector<RatFunc> s(n + 1);
  for (long m = 1; m <= n; ++m) {
    RatFuncAccumulator acc;
    acc.add(e[m] * RatFunc(m));
    for (long j = 1; j < m; ++j) acc.add_product(s[j] * RatFunc(-j), e[m - j], 0);
    s[m] = acc.total() * RatFunc(make_rational(1, m));
  }
  // Invert S_m = Σ_{k | m} ψ_k(f_{m/k})/k in increasing m.
  std::vector<RatFunc> f(n + 1);
  for (long m = 1; m <= n; ++m) {
    RatFunc rest = s[m];
    for (long k = 2; k <= m; ++k) {
      if (m % k == 0 && !f[m / k].is_zero()) {
        rest -= adams_op(f[m / k], static_cast<int>(k), conv) * RatFunc(make_rational(1, k));
      }
    }
    f[m] = rest;
  }
  return sparse(g, f);
}

RaySeries ray_mul(const RaySeries& f, const RaySeries& g) {
  if (f.base != g.base || f.bound != g.bound) {
    throw Error(ErrorCode::kTruncationMismatch, "ray series on different rays or bounds");
  }
  auto a = dense(f, RatFunc(1));
  auto b = dense(g, RatFunc(1));
  std::vector<RatFunc> c(f.bound + 1);
  for (long m = 1; m <= f.bound; ++m) {
    RatFuncAccumulator acc;
    for (long j = 0; j <= m; ++j) acc.add_product(a[j], b[m - j], 0);
    c[m] = acc.total();
  }
  return sparse(f, c);
}

DTTable dt_extract(const RaySeries& a, AdamsConvention conv, OmegaNormalization norm) {
  RaySeries log = pleth_log(a, conv);
  const RatFunc kernel = RatFunc::v_power(1) - RatFunc::v_power(-1);
  DTTable out{a.base, a.bound, {}};
  for (const auto& [k, c] : log.coeffs) {
    RatFunc omega = c * kernel;
    if (norm == OmegaNormalization::kMinusV) omega = omega.negate_variable();
    if (!omega.is_zero()) out.omega.emplace(k, std::move(omega));
  }
  return out;
}

RaySeries ray_series_from(const GroupElem& g, const LatticeVec& base) {
  if (base.rank() != g.rank()) throw Error(ErrorCode::kDimensionMismatch, "ray base has wrong rank");
  if (base.content() != 1 || !base.nonnegative()) {
    throw Error(ErrorCode::kInvalidArgument, "ray base " + base.to_string() + " is not primitive");
  }
  RaySeries out{base, 0, {}};
  while (g.trunc().contains((out.bound + 1) * base)) ++out.bound;
  for (const auto& [gamma, c] : g.terms()) {
    long k = 0;
    for (size_t i = 0; i < base.rank() && k == 0; ++i) {
      if (base[i] != 0) k = gamma[i] / base[i];
    }
    if (k < 1 || k * base != gamma) {
      throw Error(ErrorCode::kInvalidArgument,
                  "term " + gamma.to_string() + " is not a multiple of " + base.to_string());
    }
    out.set(k, c);
  }
  return out;
}

}  // namespace wck
