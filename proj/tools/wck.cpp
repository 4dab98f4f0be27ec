#include <CLI11.hpp>
#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "wck/dtinv.hpp"
#include "wck/error.hpp"
#include "wck/fqcount.hpp"
#include "wck/io.hpp"
#include "wck/qtorus.hpp"
#include "wck/quiver.hpp"
#include "wck/surface.hpp"

using namespace wck;
using io::Json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

struct Options {
  long trunc = -1;
  std::string format = "tsv";
  std::string out;
  std::string rotate;
};

// A rendered result: a TSV table and the same data as JSON.
struct Output {
  std::ostringstream tsv;
  Json json;
};

void emit(const Options& opt, const Output& o) {
  std::string text = opt.format == "json" ? o.json.dump(2) + "\n" : o.tsv.str();
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw Error(ErrorCode::kParse, "cannot write " + opt.out);
  f << text;
}

long require_trunc(const Options& opt) {
  if (opt.trunc < 0) throw Error(ErrorCode::kInvalidArgument, "--trunc N is required");
  return opt.trunc;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

LatticeVec parse_vec(const std::string& s) {
  std::vector<long> c;
  for (const auto& x : split(s, ',')) {
    Rational r = parse_rational(x);
    if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw Error(ErrorCode::kParse, "not an integer: " + x);
    c.push_back(r.get_num().get_si());
  }
  if (c.empty()) throw Error(ErrorCode::kParse, "empty vector");
  return LatticeVec(c);
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& x : split(s, ',')) out.push_back(parse_rational(x));
  return out;
}

// Rotation by the angle θ with tan(θ/2) = u, kept Gaussian-rational.
CentralCharge rotated(const Options& opt, CentralCharge z) {
  if (opt.rotate.empty()) return z;
  const Rational u = parse_rational(opt.rotate);
  const Rational n = 1 + u * u;
  return z.times(GaussRational{(1 - u * u) / n, 2 * u / n});
}

CentralCharge read_charge(const Options& opt, const std::string& path) {
  return rotated(opt, io::charge_from_json(io::read_json_file(path)));
}

void series_rows(Output& o, const GradedSeries& s, const std::string& prefix = "") {
  for (const auto& [gamma, c] : s.terms()) o.tsv << prefix << gamma.to_string() << '\t' << c.to_string() << '\n';
}

// ---------------------------------------------------------------------------
// Count cache: DIR/<quiver hash>/<key>.json, guarded by DIR/.lock.

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

class CacheLock {
 public:
  explicit CacheLock(const std::filesystem::path& dir) : path_(dir / ".lock") {
    for (int attempt = 0; attempt < 100; ++attempt) {
      int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
      if (fd >= 0) {
        ::close(fd);
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    throw Error(ErrorCode::kInvalidArgument, "cache is locked: " + path_.string());
  }
  ~CacheLock() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  std::filesystem::path path_;
};

class CountCache {
 public:
  CountCache(std::string dir, const QPData& qp, const CentralCharge* z) : dir_(std::move(dir)) {
    std::string key = io::quiver_to_json(qp).dump();
    if (z) key += io::charge_to_json(*z).dump();
    sub_ = hex(fnv1a(key));
  }

  FqCounts get(const QPData& qp, const DimVector& d, long q, const CentralCharge* z) {
    if (dir_.empty()) return compute(qp, d, q, z);
    const std::filesystem::path dir = std::filesystem::path(dir_) / sub_;
    const std::filesystem::path file = dir / ("d" + d.to_string() + "_q" + std::to_string(q) + ".json");
    if (std::filesystem::exists(file)) {
      Json j = io::read_json_file(file);
      return {j.at("reps").get<std::uint64_t>(), j.value("semistable", std::uint64_t{0})};
    }
    FqCounts c = compute(qp, d, q, z);
    std::filesystem::create_directories(dir);
    CacheLock lock(dir_);
    Json j = record(d, q, c, z != nullptr);
    std::ofstream(file) << j.dump() << '\n';
    return c;
  }

  static Json record(const DimVector& d, long q, const FqCounts& c, bool with_semistable) {
    Json j = {{"d", io::vec_to_json(d)}, {"q", q}, {"reps", c.reps}};
    if (with_semistable) j["semistable"] = c.semistable;
    return j;
  }

 private:
  static FqCounts compute(const QPData& qp, const DimVector& d, long q, const CentralCharge* z) {
    if (z) return count_both(qp, d, q, *z);
    return {count_reps(qp, d, q), 0};
  }

  std::string dir_;
  std::string sub_;
};

ClassTable fitted_table(const QPData& qp, const Truncation& trunc, const std::vector<long>& primes,
                        const std::string& cache_dir, const CentralCharge* z) {
  CountCache cache(cache_dir, qp, z);
  ClassTable out;
  for (const auto& d : lower_set_enum(trunc, qp.quiver.num_vertices())) {
    std::map<long, std::uint64_t> counts;
    for (long q : primes) {
      FqCounts c = cache.get(qp, d, q, z);
      counts[q] = z ? c.semistable : c.reps;
    }
    out.emplace(d, fit_class(counts));
  }
  return out;
}

std::vector<long> parse_primes(const std::string& s) {
  std::vector<long> out;
  const LatticeVec v = parse_vec(s);
  for (long x : v.coords()) {
    if (!supported_prime(x)) throw Error(ErrorCode::kInvalidArgument, "primes must be among 2, 3, 5, 7");
    out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------

void cmd_total(const Options& opt, const std::string& quiver, const std::string& table_path) {
  QPData qp = io::quiver_from_json(io::read_json_file(quiver));
  Truncation t = Truncation::total_degree(qp.quiver.num_vertices(), require_trunc(opt));
  std::optional<ClassTable> table;
  if (!table_path.empty()) table = io::class_table_from_json(io::read_json_file(table_path));
  GroupElem total = total_series(qp, table ? &*table : nullptr, t);
  Output o;
  o.tsv << "gamma\tcoeff\n";
  series_rows(o, total);
  o.json = io::series_to_json(total);
  emit(opt, o);
}

void cmd_hn(const Options& opt, const std::string& quiver, const std::string& charge, const std::string& table_path) {
  QPData qp = io::quiver_from_json(io::read_json_file(quiver));
  Truncation t = Truncation::total_degree(qp.quiver.num_vertices(), require_trunc(opt));
  std::optional<ClassTable> table;
  if (!table_path.empty()) table = io::class_table_from_json(io::read_json_file(table_path));
  CentralCharge z = read_charge(opt, charge);
  if (z.rank() != qp.quiver.num_vertices()) throw Error(ErrorCode::kDimensionMismatch, "charge rank mismatch");
  GroupElem total = total_series(qp, table ? &*table : nullptr, t);
  Output o;
  o.tsv << "ray\tgamma\tcoeff\n";
  o.json = {{"rays", Json::array()}};
  for (const auto& [ray, factor] : hn_factorize(total, z, t)) {
    series_rows(o, factor, ray.to_string() + '\t');
    o.json["rays"].push_back({{"ray", {ray.x().get_si(), ray.y().get_si()}}, {"terms", io::terms_to_json(factor)}});
  }
  emit(opt, o);
}

void cmd_transport(const Options& opt, const std::string& data, const std::string& from, const std::string& to,
                   const std::string& sector) {
  LieElem a(io::series_from_json(io::read_json_file(data), RatFunc()));
  CentralCharge z0 = read_charge(opt, from), z1 = read_charge(opt, to);
  Sector v = io::sector_from_json(io::read_json_file(sector));
  LieElem b = ks_transport(a, z0, z1, v);
  Output o;
  o.tsv << "gamma\tcoeff\n";
  series_rows(o, b);
  o.json = io::series_to_json(b);
  emit(opt, o);
}

void cmd_project(const Options& opt, const std::string& data, const std::string& covector) {
  GroupElem g(io::series_from_json(io::read_json_file(data), RatFunc(1)));
  Projection p = wcs_project(g, parse_rationals(covector));
  Output o;
  o.tsv << "part\tgamma\tcoeff\n";
  series_rows(o, p.plus, "+\t");
  series_rows(o, p.zero, "0\t");
  series_rows(o, p.minus, "-\t");
  o.json = {{"plus", io::terms_to_json(p.plus)}, {"zero", io::terms_to_json(p.zero)}, {"minus", io::terms_to_json(p.minus)}};
  emit(opt, o);
}

void cmd_dt(const Options& opt, const std::string& series, const std::string& adams, const std::string& norm) {
  RaySeries s = io::ray_series_from_json(io::read_json_file(series));
  AdamsConvention conv = adams == "plain" ? AdamsConvention::kPlain : AdamsConvention::kSigned;
  OmegaNormalization n = norm == "minus-v" ? OmegaNormalization::kMinusV : OmegaNormalization::kV;
  DTTable t = dt_extract(s, conv, n);
  Output o;
  o.tsv << "k\tomega\n";
  for (const auto& [k, w] : t.omega) o.tsv << k << '\t' << w.to_string() << '\n';
  o.json = io::dt_table_to_json(t);
  emit(opt, o);
}

Polarization polarization(const std::string& s, const std::string& t) {
  Polarization p{parse_rational(s), parse_rational(t)};
  require_polarization(p);
  return p;
}

ChernVector parse_chern(const std::string& s) {
  auto v = parse_rationals(s);
  if (v.size() != 3) throw Error(ErrorCode::kParse, "a Chern vector has three entries: " + s);
  return {v[0], v[1], v[2]};
}

void cmd_p2_charge(const Options& opt, const Polarization& p, const std::vector<std::string>& classes) {
  std::vector<ChernVector> list;
  for (const auto& c : classes) list.push_back(parse_chern(c));
  if (list.empty()) {
    for (size_t i = 0; i < 3; ++i) list.push_back(dim_to_chern(DimVector::basis(3, i)));
  }
  Output o;
  o.tsv << "chern\tre\tim\n";
  o.json = {{"s", io::rational_to_json(p.s)}, {"t", io::rational_to_json(p.t)}, {"values", Json::array()}};
  for (const auto& a : list) {
    GaussRational z = central_charge_st(p, a);
    o.tsv << a.to_string() << '\t' << to_string(z.re) << '\t' << to_string(z.im) << '\n';
    o.json["values"].push_back({{"chern", io::chern_to_json(a)}, {"re", io::rational_to_json(z.re)}, {"im", io::rational_to_json(z.im)}});
  }
  emit(opt, o);
}

void cmd_p2_region(const Options& opt, const Polarization& p) {
  const bool special = special_region_check(p), signs = simples_sign_check(p);
  Output o;
  o.tsv << "check\tvalue\n" << "special_region\t" << (special ? "true" : "false") << '\n'
        << "simples_sign\t" << (signs ? "true" : "false") << '\n';
  o.json = {{"special_region", special}, {"simples_sign", signs}};
  emit(opt, o);
}

void cmd_p2_walls(const Options& opt, const std::string& gamma, const std::vector<std::string>& points,
                  const std::string& target) {
  std::vector<Polarization> path;
  for (const auto& pt : points) {
    auto st = parse_rationals(pt);
    if (st.size() != 2) throw Error(ErrorCode::kParse, "a breakpoint is s,t: " + pt);
    path.push_back({st[0], st[1]});
  }
  LatticeVec dir = parse_vec(target);
  if (dir.rank() != 2) throw Error(ErrorCode::kParse, "target ray is x,y");
  auto hits = wall_scan(parse_vec(gamma), path, Ray(dir[0], dir[1]));
  Output o;
  o.tsv << "segment\tkind\tlo\thi\ts\tt\n";
  o.json = {{"hits", Json::array()}};
  for (const auto& h : hits) {
    const std::string kind = h.whole_segment ? "segment" : h.exact() ? "exact" : "interval";
    std::string s = "", t = "";
    if (h.exact() && !h.whole_segment) {
      const auto& a = path[h.segment];
      const auto& b = path[h.segment + 1];
      s = to_string(a.s + h.lo * (b.s - a.s));
      t = to_string(a.t + h.lo * (b.t - a.t));
    }
    o.tsv << h.segment << '\t' << kind << '\t' << to_string(h.lo) << '\t' << to_string(h.hi) << '\t' << s << '\t' << t
          << '\n';
    Json row = {{"segment", h.segment}, {"kind", kind}, {"lo", to_string(h.lo)}, {"hi", to_string(h.hi)}};
    if (!s.empty()) {
      row["s"] = s;
      row["t"] = t;
    }
    o.json["hits"].push_back(row);
  }
  emit(opt, o);
}

// Returns false when some comparison fails.
bool cmd_p2_glue(const Options& opt, const Polarization& p, const std::string& table_path,
                 const std::string& semistable_path, const std::string& primes, const std::string& cache) {
  const QPData& qp = p2_build().qp;
  Truncation t = Truncation::total_degree(3, require_trunc(opt));
  const std::vector<long> ps = parse_primes(primes);
  ClassTable table = table_path.empty() ? fitted_table(qp, t, ps, cache, nullptr)
                                        : io::class_table_from_json(io::read_json_file(table_path));
  if (!special_region_check(p)) {
    throw Error(ErrorCode::kRegionViolation, "(s,t) is outside the region s > -1/2, s + t < 0");
  }
  const CentralCharge z = glue_charge(p);
  ClassTable semistable = semistable_path.empty() ? fitted_table(qp, t, ps, cache, &z)
                                                  : io::class_table_from_json(io::read_json_file(semistable_path));
  GlueReport r = glue_check(p, table, t, &semistable);
  Output o;
  o.tsv << "ray\tequal\tgamma\tcoeff\n";
  o.json = {{"charge", io::charge_to_json(r.z)}, {"rays", Json::array()}};
  for (const auto& ray : r.rays) {
    const std::string eq = ray.equal ? "true" : "false";
    series_rows(o, ray.quiver_factor, ray.ray.to_string() + '\t' + eq + '\t');
    o.json["rays"].push_back({{"ray", {ray.ray.x().get_si(), ray.ray.y().get_si()}},
                              {"equal", ray.equal},
                              {"terms", io::terms_to_json(ray.quiver_factor)}});
  }
  o.tsv << "product\t" << (r.product_matches_total ? "true" : "false") << "\t\t\n";
  o.json["product_matches_total"] = r.product_matches_total;
  emit(opt, o);
  return r.ok();
}

void cmd_fq(const Options& opt, const std::string& quiver, const std::string& d, long q, const std::string& charge,
            bool table, const std::string& primes, const std::string& cache) {
  QPData qp = io::quiver_from_json(io::read_json_file(quiver));
  std::optional<CentralCharge> z;
  if (!charge.empty()) z = read_charge(opt, charge);
  const CentralCharge* zp = z ? &*z : nullptr;
  Output o;
  if (table) {
    Truncation t = Truncation::total_degree(qp.quiver.num_vertices(), require_trunc(opt));
    ClassTable fitted = fitted_table(qp, t, parse_primes(primes), cache, zp);
    o.tsv << "d\tclass\n";
    for (const auto& [dv, c] : fitted) o.tsv << dv.to_string() << '\t' << c.to_string() << '\n';
    o.json = io::class_table_to_json(fitted);
    emit(opt, o);
    return;
  }
  if (d.empty()) throw Error(ErrorCode::kInvalidArgument, "--d is required without --table");
  DimVector dv = parse_vec(d);
  FqCounts c = CountCache(cache, qp, zp).get(qp, dv, q, zp);
  o.tsv << "d\tq\treps" << (zp ? "\tsemistable" : "") << '\n';
  o.tsv << dv.to_string() << '\t' << q << '\t' << c.reps;
  if (zp) o.tsv << '\t' << c.semistable;
  o.tsv << '\n';
  o.json = CountCache::record(dv, q, c, zp != nullptr);
  emit(opt, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact wall-crossing and stability computations for quivers and P2"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--trunc", opt.trunc, "Total degree bound N of the truncation");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
  app.add_option("--out", opt.out, "Write output to PATH instead of stdout");
  app.add_option("--rotate", opt.rotate, "Rotate charges by the angle with tan(θ/2) = p/q");

  std::string quiver, table, charge, data, from, to, sector, covector, series, adams = "signed", norm = "v";
  std::string s, t, gamma, target = "0,1", semistable, primes = "2,3,5", cache, dvec;
  std::vector<std::string> classes, points;
  long q = 2;
  bool fit_table = false;

  auto* total = app.add_subcommand("total", "Total series of a quiver with potential");
  total->add_option("--quiver", quiver, "Quiver file")->required();
  total->add_option("--table", table, "Class table file");

  auto* hn = app.add_subcommand("hn", "Ray factors of the total series for a stability function");
  hn->add_option("--quiver", quiver, "Quiver file")->required();
  hn->add_option("--charge", charge, "Charge file")->required();
  hn->add_option("--table", table, "Class table file");

  auto* transport = app.add_subcommand("transport", "Move Lie data across walls");
  transport->add_option("--data", data, "Series file (no unit term)")->required();
  transport->add_option("--from", from, "Charge file for the input data")->required();
  transport->add_option("--to", to, "Charge file for the output data")->required();
  transport->add_option("--sector", sector, "Sector file")->required();

  auto* project = app.add_subcommand("project", "Split a group element by the sign of a covector");
  project->add_option("--data", data, "Series file")->required();
  project->add_option("--covector", covector, "Comma-separated rationals")->required();

  auto* dt = app.add_subcommand("dt", "DT invariants of a ray series");
  dt->add_option("--series", series, "Ray series file")->required();
  dt->add_option("--adams", adams, "Adams operation convention")->check(CLI::IsMember({"signed", "plain"}));
  dt->add_option("--norm", norm, "Variable normalization of Omega")->check(CLI::IsMember({"v", "minus-v"}));

  auto* p2 = app.add_subcommand("p2", "Projective plane computations");
  p2->require_subcommand(1);
  auto add_st = [&](CLI::App* c) {
    c->add_option("--s", s, "s as p/q")->required();
    c->add_option("--t", t, "t as p/q")->required();
  };
  auto* p2_charge = p2->add_subcommand("charge", "Central charges of Chern vectors");
  add_st(p2_charge);
  p2_charge->add_option("--chern", classes, "r,a1,a2 (repeatable); defaults to the quiver simples");
  auto* p2_region = p2->add_subcommand("region", "Special region and sign checks");
  add_st(p2_region);
  auto* p2_walls = p2->add_subcommand("walls", "Where a class crosses a ray along a path");
  p2_walls->add_option("--gamma", gamma, "Dimension vector d0,d1,d2")->required();
  p2_walls->add_option("--point", points, "Breakpoint s,t (repeat, at least twice)")->required();
  p2_walls->add_option("--target", target, "Target ray x,y");
  auto* p2_glue = p2->add_subcommand("glue", "Compare quiver and geometric ray factors");
  add_st(p2_glue);
  p2_glue->add_option("--table", table, "Class table file; fitted from counts when absent");
  p2_glue->add_option("--semistable", semistable, "Semistable class table file; fitted when absent");
  p2_glue->add_option("--primes", primes, "Primes for fitting");
  p2_glue->add_option("--cache", cache, "Count cache directory");

  auto* fq = app.add_subcommand("fq", "Finite field representation counts");
  fq->add_option("--quiver", quiver, "Quiver file")->required();
  fq->add_option("--d", dvec, "Dimension vector");
  fq->add_option("--q", q, "Prime field size");
  fq->add_option("--charge", charge, "Charge file for semistable counts");
  fq->add_flag("--table", fit_table, "Fit a class table over the truncation instead");
  fq->add_option("--primes", primes, "Primes for --table");
  fq->add_option("--cache", cache, "Count cache directory");

  for (auto* sub : {total, hn, transport, project, dt, p2, fq, p2_charge, p2_region, p2_walls, p2_glue}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*total) cmd_total(opt, quiver, table);
    if (*hn) cmd_hn(opt, quiver, charge, table);
    if (*transport) cmd_transport(opt, data, from, to, sector);
    if (*project) cmd_project(opt, data, covector);
    if (*dt) cmd_dt(opt, series, adams, norm);
    if (*p2_charge) cmd_p2_charge(opt, polarization(s, t), classes);
    if (*p2_region) cmd_p2_region(opt, polarization(s, t));
    if (*p2_walls) cmd_p2_walls(opt, gamma, points, target);
    if (*p2_glue && !cmd_p2_glue(opt, polarization(s, t), table, semistable, primes, cache)) {
      std::cerr << "wck: ray factors do not match\n";
      return kExitCompute;
    }
    if (*fq) cmd_fq(opt, quiver, dvec, q, charge, fit_table, primes, cache);
  } catch (const Error& e) {
    std::cerr << "wck: " << e.what() << '\n';
    return is_config_error(e.code()) ? kExitConfig : kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "wck: " << e.what() << '\n';
    return kExitCompute;
  }
  return 0;
}
