#pragma once

#include <string>

#include "wck/exactnum.hpp"

namespace wck {

/// ch = (r, a₁H, a₂·pt) on ℙ². Entries are rational so twists stay in the type;
/// classes of objects have r, a₁ ∈ ℤ and 2a₂ ∈ ℤ.
struct ChernVector {
  Rational r;
  Rational a1;
  Rational a2;

  friend bool operator==(const ChernVector& a, const ChernVector& b) {
    return a.r == b.r && a.a1 == b.a1 && a.a2 == b.a2;
  }
  /// "r,a1,a2".
  std::string to_string() const { return wck::to_string(r) + "," + wck::to_string(a1) + "," + wck::to_string(a2); }
};

}  // namespace wck
