#pragma once

// Harder–Narasimhan recursion for W = 0 quivers, written independently of
// the triangular solve in qtorus. Classes are stack classes [R(d)]/[GL_d].

#include <map>
#include <utility>

#include "wck/quiver.hpp"

namespace wck::oracle {

class HNRecursion {
 public:
  HNRecursion(Quiver q, CentralCharge z) : q_(std::move(q)), z_(std::move(z)) {}

  /// [R(d)]/[GL_d].
  RatFunc stack_class(const DimVector& d) const {
    return rep_space_class(q_, d) / gl_class_dim(d);
  }

  /// [R^ss(d)]/[GL_d].
  RatFunc semistable(const DimVector& d) {
    auto it = ss_.find(d);
    if (it != ss_.end()) return it->second;
    RatFunc rest;
    for (const auto& first : below(d)) {
      if (first == d) continue;
      rest += term(d, first);
    }
    RatFunc out = stack_class(d) - rest;
    ss_.emplace(d, out);
    return out;
  }

  /// [R^ss(d)], evaluable at L = q.
  RatFunc semistable_numerator(const DimVector& d) { return semistable(d) * gl_class_dim(d); }

  /// Ray factors 1 + Σ v^{χ(d,d)} [R^ss(d)]/[GL_d] x^d, one per ray with support.
  std::map<Ray, GroupElem> ray_factors(const Truncation& trunc) {
    std::map<Ray, GroupElem> out;
    const Lattice lattice = skew_lattice(q_);
    for (const auto& d : lower_set_enum(trunc, q_.num_vertices())) {
      RatFunc c = semistable(d);
      if (c.is_zero()) continue;
      Ray ray = ray_of(z_, d);
      auto [it, fresh] = out.try_emplace(ray, GroupElem::one(lattice, trunc));
      it->second.set(d, c.times_v_power(static_cast<int>(euler_form_q(q_, d, d))));
    }
    return out;
  }

 private:
  // All nonzero e ≤ d.
  static std::vector<DimVector> below(const DimVector& d) {
    std::vector<DimVector> out;
    DimVector e(d.rank());
    while (true) {
      size_t i = 0;
      while (i < d.rank() && e[i] == d[i]) e[i++] = 0;
      if (i == d.rank()) break;
      ++e[i];
      out.push_back(e);
    }
    return out;
  }

  // phase(a) < phase(b).
  bool lower_phase(const DimVector& a, const DimVector& b) const {
    return sgn(cross(charge_eval(z_, a), charge_eval(z_, b))) > 0;
  }

  // HN types of d whose first (largest phase) piece is `first`.
  RatFunc term(const DimVector& d, const DimVector& first) {
    DimVector rest = d - first;
    RatFunc head = semistable(first).times_v_power(static_cast<int>(-2 * euler_form_q(q_, rest, first)));
    return head * tail(rest, first);
  }

  // Σ over HN types of e with every phase below phase(bound).
  RatFunc tail(const DimVector& e, const DimVector& bound) {
    if (e.is_zero()) return RatFunc(1);
    auto key = std::make_pair(e, bound);
    auto it = tail_.find(key);
    if (it != tail_.end()) return it->second;
    RatFunc sum;
    for (const auto& first : below(e)) {
      if (lower_phase(first, bound)) sum += term(e, first);
    }
    tail_.emplace(key, sum);
    return sum;
  }

  Quiver q_;
  CentralCharge z_;
  std::map<DimVector, RatFunc> ss_;
  std::map<std::pair<DimVector, DimVector>, RatFunc> tail_;
};

}  // namespace wck::oracle
