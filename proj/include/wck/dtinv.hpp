#pragma once

#include <map>

#include "wck/exactnum.hpp"
#include "wck/lattice.hpp"
#include "wck/qtorus.hpp"

namespace wck {

/// Σ_{1≤k≤bound} c_k x^{k·base} on a single primitive ray; the x⁰ term is
/// implicit (1 for group-like series, 0 for Lie-like ones).
struct RaySeries {
  LatticeVec base;
  long bound = 0;
  std::map<long, RatFunc> coeffs;  // no zero entries

  RatFunc coeff(long k) const;
  void set(long k, RatFunc c);

  friend bool operator==(const RaySeries&, const RaySeries&) = default;
};

/// Ω(k·base) for 1 ≤ k ≤ bound.
struct DTTable {
  LatticeVec base;
  long bound = 0;
  std::map<long, RatFunc> omega;  // no zero entries

  RatFunc at(long k) const;
  friend bool operator==(const DTTable&, const DTTable&) = default;
};

/// ψ_k on coefficients: kSigned is v ↦ -(-v)^k, kPlain is v ↦ v^k.
enum class AdamsConvention { kSigned, kPlain };

/// kMinusV reports Ω with v replaced by -v.
enum class OmegaNormalization { kV, kMinusV };

RatFunc adams_op(const RatFunc& f, int k, AdamsConvention conv);

/// Exp(f) = exp(Σ_k ψ_k(f)/k); the result has implicit unit 1.
RaySeries pleth_exp(const RaySeries& f, AdamsConvention conv = AdamsConvention::kSigned);
/// Inverse of pleth_exp on series with unit 1.
RaySeries pleth_log(const RaySeries& g, AdamsConvention conv = AdamsConvention::kSigned);

/// Product of two unit-1 series on the same ray (the ray is commutative).
RaySeries ray_mul(const RaySeries& f, const RaySeries& g);

/// Ω(k) = (v - v⁻¹)·[Log A]_k.
DTTable dt_extract(const RaySeries& a, AdamsConvention conv = AdamsConvention::kSigned,
                   OmegaNormalization norm = OmegaNormalization::kV);

/// Restricts a group element supported on multiples of a primitive base.
/// Throws Error(kInvalidArgument) if base is not primitive and positive or some
/// term is off the ray.
RaySeries ray_series_from(const GroupElem& g, const LatticeVec& base);

}  // namespace wck
