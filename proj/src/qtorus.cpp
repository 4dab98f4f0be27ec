#include "wck/qtorus.hpp"

#include <algorithm>
#include <set>

#include "wck/error.hpp"

namespace wck {

GradedSeries::GradedSeries(Lattice lattice, Truncation trunc, RatFunc unit)
    : lattice_(std::move(lattice)), trunc_(std::move(trunc)), unit_(std::move(unit)) {
  if (trunc_.u.size() != lattice_.rank()) {
    throw Error(ErrorCode::kDimensionMismatch, "truncation covector does not match lattice rank");
  }
}

RatFunc GradedSeries::coeff(const LatticeVec& gamma) const {
  if (gamma.is_zero()) return unit_;
  auto it = terms_.find(gamma);
  return it == terms_.end() ? RatFunc() : it->second;
}

void GradedSeries::set(const LatticeVec& gamma, RatFunc c) {
  if (gamma.rank() != rank()) {
    throw Error(ErrorCode::kDimensionMismatch, "series term " + gamma.to_string() + " has wrong rank");
  }
  if (gamma.is_zero()) {
    unit_ = std::move(c);
    return;
  }
  if (!trunc_.contains(gamma)) return;
  if (c.is_zero()) {
    terms_.erase(gamma);
  } else {
    terms_[gamma] = std::move(c);
  }
}

void GradedSeries::add(const LatticeVec& gamma, const RatFunc& c) {
  if (c.is_zero()) return;
  set(gamma, coeff(gamma) + c);
}

GradedSeries& GradedSeries::operator+=(const GradedSeries& o) {
  if (!compatible(o)) throw Error(ErrorCode::kTruncationMismatch, "series sum across truncations");
  unit_ += o.unit_;
  for (const auto& [g, c] : o.terms_) add(g, c);
  return *this;
}

GradedSeries& GradedSeries::operator-=(const GradedSeries& o) {
  if (!compatible(o)) throw Error(ErrorCode::kTruncationMismatch, "series difference across truncations");
  unit_ -= o.unit_;
  for (const auto& [g, c] : o.terms_) add(g, -c);
  return *this;
}

GradedSeries GradedSeries::scaled(const RatFunc& c) const {
  GradedSeries out(lattice_, trunc_, unit_ * c);
  if (c.is_zero()) return out;
  for (const auto& [g, x] : terms_) out.terms_.emplace(g, x * c);
  return out;
}

GradedSeries GradedSeries::filtered(const std::function<bool(const LatticeVec&)>& keep,
                                    bool keep_unit) const {
  GradedSeries out(lattice_, trunc_, keep_unit ? unit_ : RatFunc());
  for (const auto& [g, c] : terms_) {
    if (keep(g)) out.terms_.emplace(g, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct WeightedTerm {
  long weight;
  const LatticeVec* gamma;  // null for the unit term
  const RatFunc* coeff;
};

std::vector<WeightedTerm> weighted_terms(const GradedSeries& s) {
  std::vector<WeightedTerm> out;
  if (!s.unit().is_zero()) out.push_back({0, nullptr, &s.unit()});
  for (const auto& [g, c] : s.terms()) out.push_back({s.trunc().weight(g), &g, &c});
  std::stable_sort(out.begin(), out.end(),
                   [](const WeightedTerm& a, const WeightedTerm& b) { return a.weight < b.weight; });
  return out;
}

}  // namespace

GradedSeries mul(const GradedSeries& f, const GradedSeries& g, long max_weight) {
  if (!f.compatible(g)) throw Error(ErrorCode::kTruncationMismatch, "product across truncations");
  const Truncation& t = f.trunc();
  const long cap = max_weight < 0 ? t.bound : std::min(max_weight, t.bound);
  const LatticeVec zero(f.rank());

  std::map<LatticeVec, RatFuncAccumulator> acc;
  RatFunc unit = f.unit() * g.unit();
  auto fs = weighted_terms(f);
  auto gs = weighted_terms(g);
  for (const auto& a : fs) {
    for (const auto& b : gs) {
      if (a.weight + b.weight > cap) break;
      if (!a.gamma && !b.gamma) continue;
      const LatticeVec& ga = a.gamma ? *a.gamma : zero;
      const LatticeVec& gb = b.gamma ? *b.gamma : zero;
      int twist = (a.gamma && b.gamma) ? static_cast<int>(f.lattice().pairing(ga, gb)) : 0;
      acc[ga + gb].add_product(*a.coeff, *b.coeff, twist);
    }
  }
  GradedSeries out(f.lattice(), t, unit);
  for (const auto& [gamma, sum] : acc) out.set(gamma, sum.total());
  return out;
}

GroupElem::GroupElem(GradedSeries s) : GradedSeries(std::move(s)) {
  if (!unit().is_one()) throw Error(ErrorCode::kInvalidArgument, "group element needs unit term 1");
}

LieElem::LieElem(GradedSeries s) : GradedSeries(std::move(s)) {
  if (!unit().is_zero()) throw Error(ErrorCode::kInvalidArgument, "Lie element needs unit term 0");
}

GroupElem mul(const GroupElem& f, const GroupElem& g) {
  return GroupElem(mul(static_cast<const GradedSeries&>(f), static_cast<const GradedSeries&>(g)));
}

GroupElem exp(const LieElem& a) {
  GradedSeries sum = GradedSeries::one(a.lattice(), a.trunc());
  GradedSeries power = a;
  Integer factorial = 1;
  for (long n = 1; power.has_terms(); ++n) {
    factorial *= n;
    sum += power.scaled(RatFunc(Rational(1) / Rational(factorial)));
    power = mul(power, a);
  }
  return GroupElem(std::move(sum));
}

LieElem log(const GroupElem& g) {
  GradedSeries h = g;
  h.set_unit(RatFunc());
  GradedSeries sum(g.lattice(), g.trunc());
  GradedSeries power = h;
  for (long n = 1; power.has_terms(); ++n) {
    sum += power.scaled(RatFunc(make_rational(n % 2 ? 1 : -1, n)));
    power = mul(power, h);
  }
  return LieElem(std::move(sum));
}

// ---------------------------------------------------------------------------

std::vector<GroupElem> factorize_by_bins(const GroupElem& g, size_t bins,
                                         const std::function<long(const LatticeVec&)>& bin_of,
                                         ErrorCode on_stray) {
  std::vector<GroupElem> factors(bins, GroupElem::one(g.lattice(), g.trunc()));
  std::vector<LatticeVec> members = lower_set_enum(g.trunc(), g.rank());
  size_t i = 0;
  while (i < members.size()) {
    const long w = g.trunc().weight(members[i]);
    size_t end = i;
    while (end < members.size() && g.trunc().weight(members[end]) == w) ++end;

    // Everything below weight w already matches g; each unknown at weight w
    // enters the product linearly.
    GradedSeries product = GradedSeries::one(g.lattice(), g.trunc());
    for (const auto& f : factors) {
      if (!f.is_one()) product = mul(product, f, w);
    }
    for (; i < end; ++i) {
      const LatticeVec& gamma = members[i];
      RatFunc diff = g.coeff(gamma) - product.coeff(gamma);
      if (diff.is_zero()) continue;
      long b = bin_of(gamma);
      if (b < 0 || static_cast<size_t>(b) >= bins) {
        throw Error(on_stray, "factorization needs a term at " + gamma.to_string() +
                                  " outside every admissible bin");
      }
      factors[b].add(gamma, diff);
    }
  }
  return factors;
}

std::vector<LatticeVec> semigroup_closure(const GradedSeries& s) {
  std::vector<LatticeVec> support;
  for (const auto& [g, c] : s.terms()) support.push_back(g);
  std::set<LatticeVec> seen(support.begin(), support.end());
  std::vector<LatticeVec> frontier = support;
  while (!frontier.empty()) {
    std::vector<LatticeVec> next;
    for (const auto& a : frontier) {
      for (const auto& b : support) {
        LatticeVec c = a + b;
        if (s.trunc().contains(c) && seen.insert(c).second) next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

namespace {

void sort_clockwise(std::vector<Ray>& rays) {
  std::sort(rays.begin(), rays.end(), [](const Ray& a, const Ray& b) {
    return clockwise_before(a.direction(), b.direction());
  });
}

}  // namespace

GroupElem ordered_product(const std::vector<RayFactor>& factors, const CentralCharge& z,
                          const Sector& sector, const Lattice& lattice, const Truncation& trunc) {
  if (factors.empty()) return GroupElem::one(lattice, trunc);
  return ordered_product(factors, z, sector);
}

GroupElem ordered_product(const std::vector<RayFactor>& factors, const CentralCharge& z,
                          const Sector& sector) {
  if (factors.empty()) throw Error(ErrorCode::kInvalidArgument, "empty ordered product");
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& [ray, f] = factors[i];
    if (!sector.contains(ray.direction())) {
      throw Error(ErrorCode::kRayMismatch, "ray " + ray.to_string() + " lies outside the sector");
    }
    for (const auto& [g, c] : f.terms()) {
      GaussRational w = charge_eval(z, g);
      if (w.is_zero() || !ray.contains(w)) {
        throw Error(ErrorCode::kRayMismatch,
                    "term " + g.to_string() + " is not on ray " + ray.to_string());
      }
    }
    if (i > 0 && !clockwise_before(factors[i - 1].first.direction(), ray.direction())) {
      throw Error(ErrorCode::kUnsortedInput, "factors are not in strict clockwise order");
    }
  }
  GroupElem out = factors.front().second;
  for (size_t i = 1; i < factors.size(); ++i) out = mul(out, factors[i].second);
  return out;
}

std::vector<RayFactor> ray_components(const GroupElem& a, const CentralCharge& z,
                                      const Sector& sector) {
  for (const auto& [g, c] : a.terms()) {
    GaussRational w = charge_eval(z, g);
    if (w.is_zero()) throw Error(ErrorCode::kZeroChargeInSupport, "Z vanishes on " + g.to_string());
    if (!sector.contains(w)) {
      throw Error(ErrorCode::kSupportOutsideSector, "Z(" + g.to_string() + ") is outside the sector");
    }
  }
  std::map<LatticeVec, Ray> ray_at;
  std::vector<Ray> rays;
  for (const auto& g : semigroup_closure(a)) {
    Ray r = ray_of(z, g);
    ray_at.emplace(g, r);
    if (std::find(rays.begin(), rays.end(), r) == rays.end()) rays.push_back(r);
  }
  sort_clockwise(rays);
  std::map<Ray, long> index;
  for (size_t i = 0; i < rays.size(); ++i) index.emplace(rays[i], static_cast<long>(i));

  auto factors = factorize_by_bins(
      a, rays.size(),
      [&](const LatticeVec& g) {
        auto it = ray_at.find(g);
        return it == ray_at.end() ? -1L : index.at(it->second);
      },
      ErrorCode::kSupportOutsideSector);

  std::vector<RayFactor> out;
  for (size_t i = 0; i < rays.size(); ++i) {
    if (!factors[i].is_one()) out.emplace_back(rays[i], std::move(factors[i]));
  }
  return out;
}

std::pair<GroupElem, GroupElem> split_cone(const GroupElem& a, const CentralCharge& z,
                                           const Sector& v1, const Sector& v2) {
  if (v1.end() != v2.start()) {
    throw Error(ErrorCode::kInvalidArgument, "split sectors must share the boundary ray");
  }
  auto bin = [&](const LatticeVec& g) -> long {
    GaussRational w = charge_eval(z, g);
    if (w.is_zero()) return -1;
    if (v1.contains(w) || v1.end().contains(w)) return 0;
    if (v2.contains(w)) return 1;
    return -1;
  };
  for (const auto& [g, c] : a.terms()) {
    GaussRational w = charge_eval(z, g);
    if (w.is_zero() || !(v1.contains(w) || v2.contains(w))) {
      throw Error(ErrorCode::kSupportOnBoundary,
                  "Z(" + g.to_string() + ") lies in neither open sector");
    }
  }
  auto f = factorize_by_bins(a, 2, bin, ErrorCode::kSupportOnBoundary);
  return {std::move(f[0]), std::move(f[1])};
}

GroupElem exp_Z(const LieElem& a, const CentralCharge& z, const Sector& sector) {
  std::map<Ray, LieElem> parts;
  for (const auto& [g, c] : a.terms()) {
    GaussRational w = charge_eval(z, g);
    if (w.is_zero() || !sector.contains(w)) {
      throw Error(ErrorCode::kSupportLeavesSector, "Z(" + g.to_string() + ") is not inside the sector");
    }
    auto [it, fresh] = parts.try_emplace(Ray(w), LieElem::zero(a.lattice(), a.trunc()));
    it->second.set(g, c);
  }
  std::vector<Ray> rays;
  for (const auto& [r, p] : parts) rays.push_back(r);
  sort_clockwise(rays);
  GroupElem out = GroupElem::one(a.lattice(), a.trunc());
  for (const auto& r : rays) out = mul(out, exp(parts.at(r)));
  return out;
}

LieElem ks_transport(const LieElem& a, const CentralCharge& z0, const CentralCharge& z1,
                     const Sector& sector) {
  for (const auto& g : semigroup_closure(a)) {
    for (const CentralCharge* z : {&z0, &z1}) {
      GaussRational w = charge_eval(*z, g);
      if (w.is_zero() || !sector.contains(w)) {
        throw Error(ErrorCode::kSupportLeavesSector,
                    "charge sends " + g.to_string() + " outside the sector");
      }
    }
  }
  GroupElem total = exp_Z(a, z0, sector);
  LieElem out = LieElem::zero(a.lattice(), a.trunc());
  for (const auto& [ray, factor] : ray_components(total, z1, sector)) out += log(factor);
  return out;
}

Projection wcs_project(const GroupElem& g, const std::vector<Rational>& x) {
  if (x.size() != g.rank()) throw Error(ErrorCode::kDimensionMismatch, "covector rank mismatch");
  auto bin = [&](const LatticeVec& gamma) -> long {
    Rational s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * gamma[i];
    int sign = sgn(s);
    return sign > 0 ? 0 : sign == 0 ? 1 : 2;
  };
  auto f = factorize_by_bins(g, 3, bin, ErrorCode::kInvalidArgument);
  return {std::move(f[0]), std::move(f[1]), std::move(f[2])};
}

}  // namespace wck
