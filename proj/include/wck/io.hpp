#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "wck/dtinv.hpp"
#include "wck/fqcount.hpp"
#include "wck/quiver.hpp"
#include "wck/surface.hpp"

namespace wck::io {

using Json = nlohmann::ordered_json;

// Every reader throws Error(kParse) on malformed input.

Json read_json_file(const std::filesystem::path& path);

/// "p/q" strings or JSON integers.
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);

LatticeVec vec_from_json(const Json& j);
Json vec_to_json(const LatticeVec& v);

/// {"re": [...], "im": [...]}.
CentralCharge charge_from_json(const Json& j);
Json charge_to_json(const CentralCharge& z);

/// {"u": [...], "bound": N}.
Truncation trunc_from_json(const Json& j);
Json trunc_to_json(const Truncation& t);

/// {"start": [x,y], "end": [x,y]}.
Sector sector_from_json(const Json& j);

/// {"lattice": {"skew": [[...]]}, "trunc": {...}, "terms": [{"gamma", "coeff"}]}.
/// The unit term is implicit and given by `unit`.
GradedSeries series_from_json(const Json& j, const RatFunc& unit);
Json series_to_json(const GradedSeries& s);
/// Just the term records.
Json terms_to_json(const GradedSeries& s);

/// {"base": [...], "bound": N, "coeffs": {"k": RatFunc}}.
RaySeries ray_series_from_json(const Json& j);
/// {"base": [...], "omega": {"k": RatFunc}}.
Json dt_table_to_json(const DTTable& t);

/// {"vertices", "arrows": [{"name","from","to"}], "potential": [{"coeff","cycle"}], "cut"}.
/// Arrow endpoints are vertex names or indices.
QPData quiver_from_json(const Json& j);
Json quiver_to_json(const QPData& qp);

/// {"entries": [{"d", "class"}]}.
ClassTable class_table_from_json(const Json& j);
Json class_table_to_json(const ClassTable& t);

/// {"s": "p/q", "t": "p/q"}.
Polarization polarization_from_json(const Json& j);
/// {"r", "a1", "a2"}.
ChernVector chern_from_json(const Json& j);
Json chern_to_json(const ChernVector& a);

}  // namespace wck::io
