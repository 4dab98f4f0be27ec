#include "wck/io.hpp"

#include <fstream>

#include "wck/error.hpp"

namespace wck::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kParse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

long integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<long>();
  if (j.is_string()) {
    Rational r = parse_rational(j.get<std::string>());
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  }
  bad("expected an integer, got " + j.dump());
}

RatFunc ratfunc_from_json(const Json& j) {
  if (j.is_number_integer()) return RatFunc(j.get<long>());
  if (!j.is_string()) bad("expected a rational function string, got " + j.dump());
  return RatFunc::parse(j.get<std::string>());
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected a rational, got " + j.dump());
}

Json rational_to_json(const Rational& r) { return to_string(r); }

LatticeVec vec_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an integer list, got " + j.dump());
  std::vector<long> c;
  for (const auto& x : j) c.push_back(integer_from_json(x));
  return LatticeVec(c);
}

Json vec_to_json(const LatticeVec& v) { return v.coords(); }

CentralCharge charge_from_json(const Json& j) {
  const Json& re = field(j, "re");
  const Json& im = field(j, "im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty()) {
    bad("charge needs equally long nonempty re and im lists");
  }
  CentralCharge z;
  for (const auto& x : re) z.re.push_back(rational_from_json(x));
  for (const auto& x : im) z.im.push_back(rational_from_json(x));
  return z;
}

Json charge_to_json(const CentralCharge& z) {
  Json re = Json::array(), im = Json::array();
  for (const auto& x : z.re) re.push_back(rational_to_json(x));
  for (const auto& x : z.im) im.push_back(rational_to_json(x));
  return {{"re", re}, {"im", im}};
}

Truncation trunc_from_json(const Json& j) {
  Truncation t{vec_from_json(field(j, "u")).coords(), integer_from_json(field(j, "bound"))};
  if (t.u.empty() || std::any_of(t.u.begin(), t.u.end(), [](long x) { return x <= 0; })) {
    bad("truncation weights must be positive");
  }
  return t;
}

Json trunc_to_json(const Truncation& t) { return {{"u", t.u}, {"bound", t.bound}}; }

Sector sector_from_json(const Json& j) {
  auto ray = [](const Json& r) {
    LatticeVec v = vec_from_json(r);
    if (v.rank() != 2) bad("a ray is given by two integers");
    return Ray(v[0], v[1]);
  };
  return Sector(ray(field(j, "start")), ray(field(j, "end")));
}

GradedSeries series_from_json(const Json& j, const RatFunc& unit) {
  const Json& skew = field(field(j, "lattice"), "skew");
  std::vector<std::vector<long>> m;
  if (!skew.is_array()) bad("skew must be a matrix");
  for (const auto& row : skew) m.push_back(vec_from_json(row).coords());
  Lattice lattice(m);
  Truncation trunc = trunc_from_json(field(j, "trunc"));
  if (trunc.u.size() != lattice.rank()) bad("truncation and lattice ranks differ");
  GradedSeries s(lattice, trunc, unit);
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) bad("terms must be a list");
  for (const auto& t : terms) {
    LatticeVec gamma = vec_from_json(field(t, "gamma"));
    if (gamma.rank() != lattice.rank()) bad("term " + gamma.to_string() + " has the wrong rank");
    if (gamma.is_zero()) bad("the unit term is implicit");
    if (!trunc.contains(gamma)) bad("term " + gamma.to_string() + " lies outside the truncation");
    s.add(gamma, ratfunc_from_json(field(t, "coeff")));
  }
  return s;
}

Json terms_to_json(const GradedSeries& s) {
  Json terms = Json::array();
  for (const auto& [gamma, c] : s.terms()) terms.push_back({{"gamma", vec_to_json(gamma)}, {"coeff", c.to_string()}});
  return terms;
}

Json series_to_json(const GradedSeries& s) {
  return {{"lattice", {{"skew", s.lattice().skew()}}}, {"trunc", trunc_to_json(s.trunc())}, {"terms", terms_to_json(s)}};
}

RaySeries ray_series_from_json(const Json& j) {
  RaySeries s{vec_from_json(field(j, "base")), integer_from_json(field(j, "bound")), {}};
  if (s.base.is_zero() || !s.base.nonnegative() || s.base.content() != 1) bad("ray base must be primitive and nonnegative");
  if (s.bound < 0) bad("bound must be nonnegative");
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_object()) bad("coeffs must map k to a rational function");
  for (const auto& [key, value] : coeffs.items()) {
    long k = integer_from_json(Json(key));
    if (k < 1 || k > s.bound) bad("coefficient index " + key + " outside 1.." + std::to_string(s.bound));
    s.set(k, ratfunc_from_json(value));
  }
  return s;
}

Json dt_table_to_json(const DTTable& t) {
  Json omega = Json::object();
  for (const auto& [k, w] : t.omega) omega[std::to_string(k)] = w.to_string();
  return {{"base", vec_to_json(t.base)}, {"omega", omega}};
}

QPData quiver_from_json(const Json& j) {
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) bad("vertices must be a list");
  std::vector<std::string> vertices;
  for (const auto& v : vs) vertices.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  auto vertex = [&](const Json& x) -> size_t {
    if (x.is_number_integer()) {
      long i = x.get<long>();
      if (i < 0 || static_cast<size_t>(i) >= vertices.size()) bad("vertex index " + x.dump() + " out of range");
      return static_cast<size_t>(i);
    }
    if (!x.is_string()) bad("bad vertex reference " + x.dump());
    auto it = std::find(vertices.begin(), vertices.end(), x.get<std::string>());
    if (it == vertices.end()) bad("unknown vertex " + x.dump());
    return static_cast<size_t>(it - vertices.begin());
  };
  std::vector<Arrow> arrows;
  const Json& as = field(j, "arrows");
  if (!as.is_array()) bad("arrows must be a list");
  for (const auto& a : as) {
    const Json& name = field(a, "name");
    if (!name.is_string()) bad("arrow names are strings");
    arrows.push_back({name.get<std::string>(), vertex(field(a, "from")), vertex(field(a, "to"))});
  }
  Quiver q(vertices, arrows);
  std::vector<PotentialTerm> terms;
  if (j.contains("potential")) {
    for (const auto& t : j.at("potential")) {
      PotentialTerm term{rational_from_json(field(t, "coeff")), {}};
      for (const auto& a : field(t, "cycle")) {
        if (!a.is_string()) bad("cycles list arrow names");
        term.cycle.push_back(a.get<std::string>());
      }
      terms.push_back(std::move(term));
    }
  }
  Cut cut;
  if (j.contains("cut")) {
    for (const auto& a : j.at("cut")) {
      if (!a.is_string()) bad("cuts list arrow names");
      cut.insert(a.get<std::string>());
    }
  }
  Potential w(q, terms);
  return make_qp(std::move(q), std::move(w), std::move(cut));
}

Json quiver_to_json(const QPData& qp) {
  Json arrows = Json::array();
  for (const auto& a : qp.quiver.arrows()) {
    arrows.push_back({{"name", a.name}, {"from", qp.quiver.vertices()[a.from]}, {"to", qp.quiver.vertices()[a.to]}});
  }
  Json potential = Json::array();
  for (const auto& t : qp.potential.terms()) potential.push_back({{"coeff", rational_to_json(t.coeff)}, {"cycle", t.cycle}});
  return {{"vertices", qp.quiver.vertices()}, {"arrows", arrows}, {"potential", potential}, {"cut", qp.cut}};
}

ClassTable class_table_from_json(const Json& j) {
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) bad("entries must be a list");
  ClassTable t;
  for (const auto& e : entries) {
    LatticeVec d = vec_from_json(field(e, "d"));
    if (!t.emplace(d, ratfunc_from_json(field(e, "class"))).second) bad("duplicate entry for d = " + d.to_string());
  }
  return t;
}

Json class_table_to_json(const ClassTable& t) {
  Json entries = Json::array();
  for (const auto& [d, c] : t) entries.push_back({{"d", vec_to_json(d)}, {"class", c.to_string()}});
  return {{"entries", entries}};
}

Polarization polarization_from_json(const Json& j) {
  Polarization p{rational_from_json(field(j, "s")), rational_from_json(field(j, "t"))};
  if (sgn(p.t) <= 0) bad("polarization needs t > 0");
  return p;
}

ChernVector chern_from_json(const Json& j) {
  return {rational_from_json(field(j, "r")), rational_from_json(field(j, "a1")), rational_from_json(field(j, "a2"))};
}

Json chern_to_json(const ChernVector& a) {
  return {{"r", rational_to_json(a.r)}, {"a1", rational_to_json(a.a1)}, {"a2", rational_to_json(a.a2)}};
}

}  // namespace wck::io
