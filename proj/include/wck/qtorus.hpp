#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "wck/error.hpp"
#include "wck/exactnum.hpp"
#include "wck/lattice.hpp"

namespace wck {

/// Truncated element Σ c_γ x^γ of the quantum torus x^a·x^b = v^{⟨a,b⟩} x^{a+b}.
/// Every stored key lies in the truncation lower set; zero terms are never stored.
class GradedSeries {
 public:
  GradedSeries() = default;
  GradedSeries(Lattice lattice, Truncation trunc, RatFunc unit = RatFunc());

  static GradedSeries one(const Lattice& lattice, const Truncation& trunc) {
    return GradedSeries(lattice, trunc, RatFunc(1));
  }

  const Lattice& lattice() const { return lattice_; }
  const Truncation& trunc() const { return trunc_; }
  size_t rank() const { return lattice_.rank(); }
  const RatFunc& unit() const { return unit_; }
  const std::map<LatticeVec, RatFunc>& terms() const { return terms_; }
  RatFunc coeff(const LatticeVec& gamma) const;
  bool has_terms() const { return !terms_.empty(); }

  void set_unit(RatFunc c) { unit_ = std::move(c); }
  /// Silently drops γ outside the lower set. Throws Error(kDimensionMismatch).
  void set(const LatticeVec& gamma, RatFunc c);
  void add(const LatticeVec& gamma, const RatFunc& c);

  /// Same lattice and truncation.
  bool compatible(const GradedSeries& o) const {
    return lattice_ == o.lattice_ && trunc_ == o.trunc_;
  }

  GradedSeries& operator+=(const GradedSeries& o);
  GradedSeries& operator-=(const GradedSeries& o);
  friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
  friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }
  GradedSeries scaled(const RatFunc& c) const;
  /// Terms whose γ satisfies keep (unit included only if keep_unit).
  GradedSeries filtered(const std::function<bool(const LatticeVec&)>& keep, bool keep_unit) const;

  friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
    return a.compatible(b) && a.unit_ == b.unit_ && a.terms_ == b.terms_;
  }

 private:
  Lattice lattice_;
  Truncation trunc_;
  RatFunc unit_;
  std::map<LatticeVec, RatFunc> terms_;
};

/// Twisted product; terms above the truncation (or above max_weight when it is
/// nonnegative) are discarded. Throws Error(kTruncationMismatch).
GradedSeries mul(const GradedSeries& f, const GradedSeries& g, long max_weight = -1);

/// Series with unit term 1.
class GroupElem : public GradedSeries {
 public:
  GroupElem() = default;
  /// Throws Error(kInvalidArgument) unless the unit term is 1.
  explicit GroupElem(GradedSeries s);
  static GroupElem one(const Lattice& lattice, const Truncation& trunc) {
    return GroupElem(GradedSeries::one(lattice, trunc));
  }
  bool is_one() const { return !has_terms(); }
};

/// Series with unit term 0.
class LieElem : public GradedSeries {
 public:
  LieElem() = default;
  /// Throws Error(kInvalidArgument) unless the unit term is 0.
  explicit LieElem(GradedSeries s);
  static LieElem zero(const Lattice& lattice, const Truncation& trunc) {
    return LieElem(GradedSeries(lattice, trunc));
  }
};

GroupElem mul(const GroupElem& f, const GroupElem& g);
GroupElem exp(const LieElem& a);
LieElem log(const GroupElem& g);

using RayFactor = std::pair<Ray, GroupElem>;

/// g = ∏ factors[i] in list order, each factor supported on the lattice vectors
/// sent to bin i. bin_of returns -1 for γ that may not carry a factor term;
/// a nonzero correction there raises on_stray. Solved weight by weight.
std::vector<GroupElem> factorize_by_bins(const GroupElem& g, size_t bins,
                                         const std::function<long(const LatticeVec&)>& bin_of,
                                         ErrorCode on_stray);

/// Throws Error(kRayMismatch) or Error(kUnsortedInput), and Error(kInvalidArgument)
/// for an empty list, whose product has no lattice to live in.
GroupElem ordered_product(const std::vector<RayFactor>& factors, const CentralCharge& z,
                          const Sector& sector);
/// As above; an empty list gives the unit of (lattice, trunc).
GroupElem ordered_product(const std::vector<RayFactor>& factors, const CentralCharge& z,
                          const Sector& sector, const Lattice& lattice, const Truncation& trunc);

/// Clockwise factorization. Throws Error(kZeroChargeInSupport) or
/// Error(kSupportOutsideSector).
std::vector<RayFactor> ray_components(const GroupElem& a, const CentralCharge& z,
                                      const Sector& sector);

/// (A_{V₁}, A_{V₂}) with A = A_{V₁}·A_{V₂}. V₁ must end where V₂ starts; V₁ owns
/// the shared boundary ray for products that land on it.
/// Throws Error(kSupportOnBoundary) when a support term lies in neither sector.
std::pair<GroupElem, GroupElem> split_cone(const GroupElem& a, const CentralCharge& z,
                                           const Sector& v1, const Sector& v2);

/// ∏ exp(a_ℓ) over rays in clockwise order. Throws Error(kSupportLeavesSector).
GroupElem exp_Z(const LieElem& a, const CentralCharge& z, const Sector& sector);

/// Refactorizes exp_Z(a, z0) by the rays of z1. Throws Error(kSupportLeavesSector).
LieElem ks_transport(const LieElem& a, const CentralCharge& z0, const CentralCharge& z1,
                     const Sector& sector);

struct Projection {
  GroupElem plus;
  GroupElem zero;
  GroupElem minus;
};

/// g = g₊·g₀·g₋ split by the sign of x(γ). Throws Error(kDimensionMismatch).
Projection wcs_project(const GroupElem& g, const std::vector<Rational>& x);

/// Lattice vectors reachable as sums of support vectors, within the truncation.
std::vector<LatticeVec> semigroup_closure(const GradedSeries& s);

}  // namespace wck
