#include "wck/quiver.hpp"

#include <algorithm>
#include <sstream>

#include "wck/error.hpp"

namespace wck {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::set<std::string> seen;
  for (const auto& v : vertices_) {
    if (!seen.insert(v).second) throw Error(ErrorCode::kInvalidArgument, "duplicate vertex " + v);
  }
  seen.clear();
  for (const auto& a : arrows_) {
    if (!seen.insert(a.name).second) throw Error(ErrorCode::kInvalidArgument, "duplicate arrow " + a.name);
    if (a.from >= vertices_.size() || a.to >= vertices_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "arrow " + a.name + " has an endpoint outside the quiver");
    }
  }
}

size_t Quiver::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].name == name) return i;
  }
  throw Error(ErrorCode::kUnknownArrow, "no arrow named " + name);
}

bool Quiver::has_arrow(const std::string& name) const {
  return std::any_of(arrows_.begin(), arrows_.end(), [&](const Arrow& a) { return a.name == name; });
}

size_t Quiver::vertex_index(const std::string& name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) throw Error(ErrorCode::kInvalidArgument, "no vertex named " + name);
  return static_cast<size_t>(it - vertices_.begin());
}

Quiver Quiver::without(const std::set<std::string>& names) const {
  std::vector<Arrow> kept;
  for (const auto& a : arrows_) {
    if (!names.count(a.name)) kept.push_back(a);
  }
  return Quiver(vertices_, std::move(kept));
}

// ---------------------------------------------------------------------------

Potential::Potential(const Quiver& q, std::vector<PotentialTerm> terms) {
  for (auto& t : terms) {
    if (t.cycle.empty()) throw Error(ErrorCode::kInvalidArgument, "empty cycle in potential");
    const size_t n = t.cycle.size();
    for (size_t k = 0; k < n; ++k) {
      const Arrow& here = q.arrows()[q.arrow_index(t.cycle[k])];
      const Arrow& next = q.arrows()[q.arrow_index(t.cycle[(k + 1) % n])];
      if (here.to != next.from) {
        throw Error(ErrorCode::kInvalidArgument,
                    "potential term is not a closed path at " + here.name + " -> " + next.name);
      }
    }
    if (sgn(t.coeff) == 0) continue;
    auto best = t.cycle;
    for (size_t s = 1; s < n; ++s) {
      std::vector<std::string> rot(t.cycle.begin() + static_cast<long>(s), t.cycle.end());
      rot.insert(rot.end(), t.cycle.begin(), t.cycle.begin() + static_cast<long>(s));
      if (rot < best) best = std::move(rot);
    }
    t.cycle = std::move(best);
    auto same = std::find_if(terms_.begin(), terms_.end(),
                             [&](const PotentialTerm& u) { return u.cycle == t.cycle; });
    if (same == terms_.end()) {
      terms_.push_back(std::move(t));
    } else {
      same->coeff += t.coeff;
      if (sgn(same->coeff) == 0) terms_.erase(same);
    }
  }
}

std::string Relation::to_string(const Quiver& reduced) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (first) {
      if (sgn(t.coeff) < 0) os << '-';
    } else {
      os << (sgn(t.coeff) < 0 ? " - " : " + ");
    }
    Rational mag = abs(t.coeff);
    if (mag != 1) os << mag.get_str() << '*';
    // Composition order: the last arrow traversed is written first.
    for (size_t i = t.path.size(); i-- > 0;) {
      os << reduced.arrows()[t.path[i]].name << (i ? "*" : "");
    }
    if (t.path.empty()) os << "e" << reduced.vertices()[from];
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

bool cut_check(const Quiver& q, const Potential& w, const Cut& cut) {
  for (const auto& name : cut) q.arrow_index(name);
  for (const auto& t : w.terms()) {
    long hits = std::count_if(t.cycle.begin(), t.cycle.end(),
                              [&](const std::string& a) { return cut.count(a) > 0; });
    if (hits != 1) return false;
  }
  return true;
}

std::vector<Relation> partial_jacobian_relations(const QPData& qp) {
  std::vector<Relation> out;
  for (const auto& name : qp.cut) {
    const Arrow& cut_arrow = qp.quiver.arrows()[qp.quiver.arrow_index(name)];
    Relation rel{name, cut_arrow.to, cut_arrow.from, {}};
    for (const auto& t : qp.potential.terms()) {
      const size_t n = t.cycle.size();
      for (size_t i = 0; i < n; ++i) {
        if (t.cycle[i] != name) continue;
        std::vector<size_t> path;
        for (size_t k = 1; k < n; ++k) path.push_back(qp.reduced.arrow_index(t.cycle[(i + k) % n]));
        auto same = std::find_if(rel.terms.begin(), rel.terms.end(),
                                 [&](const PathTerm& p) { return p.path == path; });
        if (same == rel.terms.end()) {
          rel.terms.push_back({t.coeff, std::move(path)});
        } else {
          same->coeff += t.coeff;
        }
      }
    }
    std::erase_if(rel.terms, [](const PathTerm& p) { return sgn(p.coeff) == 0; });
    if (!rel.terms.empty()) out.push_back(std::move(rel));
  }
  return out;
}

QPData make_qp(Quiver q, Potential w, Cut cut) {
  if (!cut_check(q, w, cut)) {
    throw Error(ErrorCode::kInvalidCut, "some potential term does not meet the cut exactly once");
  }
  QPData qp{std::move(q), std::move(w), std::move(cut), {}, {}};
  qp.reduced = qp.quiver.without(qp.cut);
  qp.relations = partial_jacobian_relations(qp);
  return qp;
}

// ---------------------------------------------------------------------------

namespace {

void require_dims(const Quiver& q, const DimVector& d) {
  if (d.rank() != q.num_vertices()) {
    throw Error(ErrorCode::kDimensionMismatch, "dimension vector " + d.to_string() + " has wrong length");
  }
}

}  // namespace

long euler_form_q(const Quiver& q, const DimVector& d, const DimVector& d2) {
  require_dims(q, d);
  require_dims(q, d2);
  long total = 0;
  for (size_t i = 0; i < d.rank(); ++i) total += d[i] * d2[i];
  for (const auto& a : q.arrows()) total -= d[a.from] * d2[a.to];
  return total;
}

Lattice skew_lattice(const Quiver& q) {
  const size_t n = q.num_vertices();
  std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      DimVector ei = DimVector::basis(n, i), ej = DimVector::basis(n, j);
      m[i][j] = euler_form_q(q, ei, ej) - euler_form_q(q, ej, ei);
    }
  }
  return Lattice(m);
}

long gamma_cut(const Quiver& q, const Cut& cut, const DimVector& d, const DimVector& d2) {
  require_dims(q, d);
  require_dims(q, d2);
  long total = 0;
  for (const auto& name : cut) {
    const Arrow& a = q.arrows()[q.arrow_index(name)];
    total += d[a.from] * d2[a.to];
  }
  return total;
}

RatFunc rep_space_class(const Quiver& q, const DimVector& d) {
  require_dims(q, d);
  long dim = 0;
  for (const auto& a : q.arrows()) dim += d[a.from] * d[a.to];
  return RatFunc::v_power(static_cast<int>(2 * dim));
}

RatFunc gl_class_dim(const DimVector& d) {
  RatFunc out(1);
  for (long x : d.coords()) out *= gl_class(static_cast<int>(x));
  return out;
}

GroupElem total_series(const QPData& qp, const ClassTable* table, const Truncation& trunc) {
  const Quiver& q = qp.quiver;
  if (trunc.u.size() != q.num_vertices()) {
    throw Error(ErrorCode::kDimensionMismatch, "truncation does not match the quiver");
  }
  if (!table && !qp.potential.is_zero()) {
    throw Error(ErrorCode::kMissingClassTableEntry, "a nonzero potential needs a class table");
  }
  GroupElem out = GroupElem::one(skew_lattice(q), trunc);
  for (const auto& d : lower_set_enum(trunc, q.num_vertices())) {
    RatFunc cls;
    if (table) {
      auto it = table->find(d);
      if (it == table->end()) {
        throw Error(ErrorCode::kMissingClassTableEntry, "no class for d = " + d.to_string());
      }
      cls = it->second;
    } else {
      cls = rep_space_class(qp.reduced, d);
    }
    int exponent = static_cast<int>(euler_form_q(q, d, d) + 2 * gamma_cut(q, qp.cut, d, d));
    out.set(d, (cls / gl_class_dim(d)).times_v_power(exponent));
  }
  return out;
}

Sector stability_sector(const CentralCharge& z) {
  std::vector<GaussRational> values;
  for (size_t i = 0; i < z.rank(); ++i) values.push_back(z.value_on_basis(i));
  return Sector::upper_half_plane_hull(values);
}

std::vector<RayFactor> hn_factorize(const GroupElem& total, const CentralCharge& z,
                                    const Truncation& trunc) {
  if (!(total.trunc() == trunc)) {
    throw Error(ErrorCode::kTruncationMismatch, "series truncation differs from the requested one");
  }
  if (z.rank() != total.rank()) throw Error(ErrorCode::kDimensionMismatch, "charge rank mismatch");
  return ray_components(total, z, stability_sector(z));
}

// ---------------------------------------------------------------------------

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

Mat3 mat_transpose(const Mat3& a) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  }
  return t;
}

Mat3 mat_identity() {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  return m;
}

Mat3 mat_inverse(const Mat3& a) {
  Mat3 m = a;
  Mat3 inv = mat_identity();
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    while (pivot < 3 && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == 3) throw Error(ErrorCode::kInvalidArgument, "singular matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational s = 1 / m[col][col];
    for (int j = 0; j < 3; ++j) {
      m[col][j] *= s;
      inv[col][j] *= s;
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (int j = 0; j < 3; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

namespace {

P2Data build_p2() {
  std::vector<Arrow> arrows;
  for (int i = 1; i <= 3; ++i) arrows.push_back({"a" + std::to_string(i), 1, 0});
  for (int i = 1; i <= 3; ++i) arrows.push_back({"b" + std::to_string(i), 2, 1});
  for (int i = 1; i <= 3; ++i) arrows.push_back({"c" + std::to_string(i), 0, 2});
  Quiver q({"0", "1", "2"}, arrows);

  // a_{σ1} b_{σ2} c_{σ3} composes to the traversal c, b, a.
  std::vector<PotentialTerm> terms;
  std::array<int, 3> s{1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) inversions += s[i] > s[j];
    }
    terms.push_back({Rational(inversions % 2 ? -1 : 1),
                     {"c" + std::to_string(s[2]), "b" + std::to_string(s[1]), "a" + std::to_string(s[0])}});
  } while (std::next_permutation(s.begin(), s.end()));
  Potential w(q, terms);

  P2Data p{make_qp(q, w, {"c1", "c2", "c3"}), {}, {}, {}, {}};
  const Rational half = make_rational(1, 2);
  p.a = Mat3{{{1, 3, 6}, {0, 1, 3}, {0, 0, 1}}};
  p.b = Mat3{{{1, 0, 0}, {-3, 1, 0}, {3, -3, 1}}};
  p.c = Mat3{{{1, 1, 1}, {0, 1, 2}, {0, half, 2}}};
  p.m = Mat3{{{1, -2, 1}, {0, 1, -1}, {0, half, half}}};
  return p;
}

}  // namespace

const P2Data& p2_build() {
  static const P2Data data = build_p2();
  return data;
}

ChernVector dim_to_chern(const DimVector& d) {
  if (d.rank() != 3) throw Error(ErrorCode::kDimensionMismatch, "ℙ² dimension vectors have 3 entries");
  const Mat3& m = p2_build().m;
  std::array<Rational, 3> out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * d[j];
  }
  return {out[0], out[1], out[2]};
}

DimVector chern_to_dim(const ChernVector& a) {
  static const Mat3 inv = mat_inverse(p2_build().m);
  const std::array<Rational, 3> in{a.r, a.a1, a.a2};
  DimVector d(3);
  for (int i = 0; i < 3; ++i) {
    Rational x = 0;
    for (int j = 0; j < 3; ++j) x += inv[i][j] * in[j];
    if (x.get_den() != 1 || !x.get_num().fits_slong_p()) {
      throw Error(ErrorCode::kNonIntegralClass, "class " + a.to_string() + " has no integral dimension vector");
    }
    d[i] = x.get_num().get_si();
  }
  return d;
}

long euler_x_via_quiver(const DimVector& d, const DimVector& d2) {
  const Quiver& q = p2_build().qp.quiver;
  return euler_form_q(q, d, d2) + 3 * d[2] * d2[0] + 3 * d[0] * d2[2];
}

}  // namespace wck
