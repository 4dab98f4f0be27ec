#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wck/chern.hpp"
#include "wck/exactnum.hpp"
#include "wck/lattice.hpp"
#include "wck/qtorus.hpp"

namespace wck {

/// Dimension vectors live in ℤ^{Q₀}; entries are nonnegative for representations.
using DimVector = LatticeVec;

struct Arrow {
  std::string name;
  size_t from = 0;
  size_t to = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  Quiver() = default;
  /// Throws Error(kInvalidArgument) on duplicate names or bad endpoints.
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  size_t num_vertices() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  /// Throws Error(kUnknownArrow).
  size_t arrow_index(const std::string& name) const;
  bool has_arrow(const std::string& name) const;
  /// Throws Error(kInvalidArgument).
  size_t vertex_index(const std::string& name) const;

  /// The quiver without the named arrows, vertex set unchanged.
  Quiver without(const std::set<std::string>& names) const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// A cycle is listed in traversal order: cycle[k+1] starts where cycle[k] ends.
struct PotentialTerm {
  Rational coeff;
  std::vector<std::string> cycle;

  friend bool operator==(const PotentialTerm& a, const PotentialTerm& b) {
    return a.coeff == b.coeff && a.cycle == b.cycle;
  }
};

/// Σ c_u u with each cycle stored at its lexicographically least rotation.
class Potential {
 public:
  Potential() = default;
  /// Throws Error(kUnknownArrow), or Error(kInvalidArgument) for open paths.
  Potential(const Quiver& q, std::vector<PotentialTerm> terms);

  const std::vector<PotentialTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

 private:
  std::vector<PotentialTerm> terms_;
};

using Cut = std::set<std::string>;

/// A path in traversal order, by arrow index into the reduced quiver.
struct PathTerm {
  Rational coeff;
  std::vector<size_t> path;
};

/// ∂W/∂a for a cut arrow a: a combination of paths from a.to back to a.from.
struct Relation {
  std::string cut_arrow;
  size_t from = 0;
  size_t to = 0;
  std::vector<PathTerm> terms;

  /// Composition notation, e.g. "a1*b2 - a2*b1".
  std::string to_string(const Quiver& reduced) const;
};

struct QPData {
  Quiver quiver;
  Potential potential;
  Cut cut;
  Quiver reduced;
  std::vector<Relation> relations;
};

/// Throws Error(kUnknownArrow) for names outside the quiver.
bool cut_check(const Quiver& q, const Potential& w, const Cut& cut);

/// Validates the cut and derives Q' and the relations.
/// Throws Error(kInvalidCut) or Error(kUnknownArrow).
QPData make_qp(Quiver q, Potential w, Cut cut);

std::vector<Relation> partial_jacobian_relations(const QPData& qp);

/// Σ dᵢd'ᵢ - Σ_{a:i→j} dᵢd'ⱼ. Throws Error(kDimensionMismatch).
long euler_form_q(const Quiver& q, const DimVector& d, const DimVector& d2);
/// χ_Q(d,d') - χ_Q(d',d) as a lattice.
Lattice skew_lattice(const Quiver& q);
/// Σ_{(a:i→j) ∈ cut} dᵢd'ⱼ.
long gamma_cut(const Quiver& q, const Cut& cut, const DimVector& d, const DimVector& d2);
/// v^{2 Σ_{a:i→j} dᵢdⱼ}.
RatFunc rep_space_class(const Quiver& q, const DimVector& d);
/// ∏ [GL_{dᵢ}].
RatFunc gl_class_dim(const DimVector& d);

/// [R(J_{W,I}, d)] per dimension vector.
using ClassTable = std::map<DimVector, RatFunc>;

/// A₀ = Σ_d v^{χ_Q(d,d)+2γ_I(d,d)} [R(J_{W,I},d)]/[GL_d] x^d. Without a table the
/// potential must vanish, and the reduced quiver's affine classes are used.
/// Throws Error(kMissingClassTableEntry).
GroupElem total_series(const QPData& qp, const ClassTable* table, const Truncation& trunc);

/// Clockwise ray factors of a total series for a stability function, inside the
/// strict sector spanned by the upper half-plane values Z(eᵢ).
/// Throws Error(kOutsideSector) when some Z(eᵢ) is not in the open upper half-plane.
std::vector<RayFactor> hn_factorize(const GroupElem& total, const CentralCharge& z,
                                    const Truncation& trunc);

/// Sector used by hn_factorize.
Sector stability_sector(const CentralCharge& z);

using Mat3 = std::array<std::array<Rational, 3>, 3>;

Mat3 mat_mul(const Mat3& a, const Mat3& b);
Mat3 mat_transpose(const Mat3& a);
/// Throws Error(kInvalidArgument) when singular.
Mat3 mat_inverse(const Mat3& a);
Mat3 mat_identity();

struct P2Data {
  QPData qp;
  Mat3 a;
  Mat3 b;
  Mat3 c;
  Mat3 m;
};

/// Beilinson quiver: arrows aᵢ: 1→0, bᵢ: 2→1, cᵢ: 0→2, potential
/// Σ sgn(σ) a_{σ1}b_{σ2}c_{σ3}, cut {c₁,c₂,c₃}.
const P2Data& p2_build();

ChernVector dim_to_chern(const DimVector& d);
/// Throws Error(kNonIntegralClass).
DimVector chern_to_dim(const ChernVector& a);

/// χ_Q(d,d') + 3d₂d'₀ + 3d₀d'₂ on the ℙ² quiver.
long euler_x_via_quiver(const DimVector& d, const DimVector& d2);

}  // namespace wck
