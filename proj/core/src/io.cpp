#include "toric/io.hpp"

#include "toric/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace toric::io {

using latlin::Integer;
using latlin::IntVector;
using latlin::Rational;
using latlin::RatVector;

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::invalid_argument(line ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                 : what),
      line_(line),
      column_(column) {}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ": invalid JSON", line, column);
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_to(std::string& out, const json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::number_float: {
      double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_to(out, e, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_to(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();
}

json rational_json(const Rational& q) { return latlin::to_string(q); }

json normal_json(const RatVector& v) {
  json out = json::array();
  for (const auto& q : v) {
    if (denominator(q) == 1)
      out.push_back(integer_json(numerator(q)));
    else
      out.push_back(rational_json(q));
  }
  return out;
}

Rational rational_from(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return latlin::parse_rational(j.get<std::string>());
    } catch (const PreconditionError& e) {
      throw ParseError(what + ": " + e.what());
    }
  }
  throw ParseError(what + " must be an integer or a \"p/q\" string");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t dim_from(const json& j) {
  const auto& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 1) throw ParseError("\"dim\" must be a positive integer");
  return static_cast<std::size_t>(d.get<long long>());
}

std::vector<FacetFunctional> facets_from(const json& j, std::size_t dim) {
  const auto& facets = field(j, "facets");
  if (!facets.is_array()) throw ParseError("\"facets\" must be an array");
  std::vector<FacetFunctional> out;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const std::string where = "facet " + std::to_string(i);
    const auto& normal = field(facets[i], "normal");
    if (!normal.is_array() || normal.size() != dim) throw ParseError(where + ": normal must have dim entries");
    FacetFunctional f;
    for (std::size_t k = 0; k < dim; ++k) f.normal.push_back(rational_from(normal[k], where + " normal"));
    f.offset = facets[i].contains("offset") ? rational_from(facets[i]["offset"], where + " offset") : Rational(0);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<AffineForm> forms_from(const json& j, std::size_t dim) {
  std::vector<AffineForm> out;
  for (const auto& f : field(j, "forms")) {
    AffineForm a;
    a.normal = vector_from_json(field(f, "normal"));
    if (static_cast<std::size_t>(a.normal.size()) != dim) throw ParseError("form normal must have dim entries");
    a.offset = f.value("offset", 0.0);
    out.push_back(std::move(a));
  }
  return out;
}

json forms_json(const std::vector<AffineForm>& forms) {
  json out = json::array();
  for (const auto& f : forms) out.push_back({{"normal", to_json(f.normal)}, {"offset", f.offset}});
  return out;
}

}  // namespace

std::string dump(const json& j, int indent) {
  std::string out;
  dump_to(out, j, indent, 0);
  return out;
}

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Eigen::VectorXd(m.row(i).transpose())));
  return out;
}

json to_json(const LabeledPolytope& p) {
  json facets = json::array();
  for (const auto& f : p.facets()) facets.push_back({{"normal", normal_json(f.normal)}, {"offset", rational_json(f.offset)}});
  json vertices = json::array();
  for (const auto& v : p.vertices()) {
    json row = json::array();
    for (const auto& q : v) row.push_back(rational_json(q));
    vertices.push_back(std::move(row));
  }
  return {{"dim", p.dim()}, {"facets", std::move(facets)}, {"vertices", std::move(vertices)}};
}

json to_json(const MomentCone& c) {
  json facets = json::array();
  for (const auto& nu : c.normals()) {
    json row = json::array();
    for (const auto& v : nu) row.push_back(integer_json(v));
    facets.push_back({{"normal", std::move(row)}, {"offset", "0/1"}});
  }
  json rays = json::array();
  for (const auto& eta : c.rays()) {
    json row = json::array();
    for (const auto& v : eta) row.push_back(integer_json(v));
    rays.push_back(std::move(row));
  }
  return {{"dim", c.dim()}, {"facets", std::move(facets)}, {"rays", std::move(rays)}};
}

json to_json(const GoodnessCertificate& cert) {
  json faces = json::array();
  for (const auto& f : cert.faces) {
    json factors = json::array();
    for (const auto& d : f.invariant_factors) factors.push_back(integer_json(d));
    faces.push_back({{"facets", f.facets}, {"codim", f.codim}, {"invariant_factors", std::move(factors)}, {"ok", f.ok}});
  }
  json out = {{"verdict", cert.verdict}, {"faces", std::move(faces)}};
  out["failing_face"] = cert.failing_face ? json(*cert.failing_face) : json(nullptr);
  return out;
}

json to_json(const LinearEquivalence& e) {
  json rows = json::array();
  for (std::size_t i = 0; i < e.map.rows(); ++i) {
    RatVector row;
    for (std::size_t j = 0; j < e.map.cols(); ++j) row.push_back(e.map(i, j));
    rows.push_back(normal_json(row));
  }
  return {{"map", std::move(rows)}, {"direction", to_string(e.direction)}, {"pairing", e.pairing}};
}

json to_json(const PotentialExpr& s) {
  const auto& node = s.node();
  switch (node.kind) {
    case PotentialKind::Guillemin:
      if (node.polytope) return {{"type", "guillemin"}, {"polytope", to_json(*node.polytope)}};
      return {{"type", "guillemin"}, {"dim", node.dim}, {"forms", forms_json(node.forms)}};
    case PotentialKind::CanonicalCone:
      if (node.cone) return {{"type", "canonical_cone"}, {"cone", to_json(*node.cone)}};
      return {{"type", "canonical_cone"}, {"dim", node.dim}, {"forms", forms_json(node.forms)}};
    case PotentialKind::SbCorrection:
      if (node.cone) return {{"type", "sb_correction"}, {"cone", to_json(*node.cone)}, {"b", to_json(node.b)}};
      return {{"type", "sb_correction"}, {"dim", node.dim}, {"forms", forms_json(node.forms)}, {"b", to_json(node.b)}};
    case PotentialKind::Homogeneous1:
      throw PreconditionError("homogeneous terms are code and cannot be serialized");
    case PotentialKind::Sum: {
      json terms = json::array();
      for (const auto& c : node.children) terms.push_back(to_json(c));
      return {{"type", "sum"}, {"terms", std::move(terms)}};
    }
    case PotentialKind::PulledBack:
      return {{"type", "pulled_back"},
              {"base", to_json(node.children.front())},
              {"map", to_json(node.map)},
              {"shift", to_json(node.shift)}};
    case PotentialKind::BoothbyWang:
      return {{"type", "boothby_wang"}, {"base", to_json(node.children.front())}};
    case PotentialKind::CalabiFamily:
      return {{"type", "calabi"}, {"n", node.calabi_n}, {"A", node.calabi_a_param}};
  }
  throw PreconditionError("unknown potential kind");
}

json to_json(const calabi::CalabiSolution& s) {
  json forms = forms_json(s.cone_forms);
  json vertices = json::array();
  for (const auto& v : s.polytope.vertices) vertices.push_back(to_json(v));
  return {{"n", s.n},
          {"k", s.k},
          {"m", s.m},
          {"A", s.a_param},
          {"a", s.roots.a},
          {"b", s.roots.b},
          {"lambda", s.lambda},
          {"gamma", s.gamma()},
          {"gamma_from_a", s.gamma_from_a},
          {"gamma_from_b", s.gamma_from_b},
          {"gamma_gap", s.gamma_gap()},
          {"polytope", {{"dim", s.polytope.dim}, {"forms", forms_json(s.polytope.forms)}, {"vertices", vertices}}},
          {"cone", {{"dim", s.polytope.dim + 1}, {"forms", std::move(forms)}}},
          {"map", to_json(s.equivalence)},
          {"reeb", to_json(s.reeb)}};
}

json to_json(const EinsteinReport& r) {
  json grid = json::array();
  for (const auto& x : r.grid) grid.push_back(to_json(x));
  return {{"grid", std::move(grid)},
          {"sc", r.sc},
          {"target", r.target},
          {"max_deviation", r.max_deviation},
          {"mean_deviation", r.mean_deviation},
          {"tolerance", r.tolerance},
          {"verdict", r.verdict},
          {"note", r.note}};
}

json to_json(const CurvatureSample& s) {
  json out = {{"point", to_json(s.point)},
              {"S", to_json(s.S)},
              {"S_inv", to_json(s.S_inv)},
              {"scalar_curvature", s.scalar_curvature},
              {"raw", s.raw},
              {"det_S", s.det_S},
              {"step", to_json(s.step)}};
  out["reeb"] = s.reeb.size() ? to_json(s.reeb) : json(nullptr);
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_number())
      v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    else
      v(static_cast<Eigen::Index>(i)) = rational_from(j[i], "vector entry").convert_to<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty array of rows");
  const auto cols = vector_from_json(j[0]).size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto row = vector_from_json(j[i]);
    if (row.size() != cols) throw ParseError("ragged matrix");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

latlin::RatMatrix rat_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty array of rows");
  std::vector<RatVector> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("matrix rows must be arrays");
    RatVector row;
    for (const auto& e : r) row.push_back(rational_from(e, "matrix entry"));
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("ragged matrix");
    rows.push_back(std::move(row));
  }
  return latlin::RatMatrix::from_rows(rows, rows.front().size());
}

LabeledPolytope polytope_from_json(const json& j) {
  const auto dim = dim_from(j);
  return build_polytope(dim, facets_from(j, dim));
}

MomentCone cone_from_json(const json& j) {
  const auto dim = dim_from(j);
  std::vector<IntVector> normals;
  for (auto& f : facets_from(j, dim)) {
    if (f.offset != 0) throw ParseError("cone facets must have offset 0");
    IntVector nu;
    for (const auto& q : f.normal) {
      if (denominator(q) != 1) throw ParseError("cone normals must be integral");
      nu.push_back(numerator(q));
    }
    normals.push_back(std::move(nu));
  }
  return build_cone(std::move(normals));
}

PotentialExpr potential_from_json(const json& j) {
  const auto& type_field = field(j, "type");
  if (!type_field.is_string()) throw ParseError("\"type\" must be a string");
  const auto type = type_field.get<std::string>();
  if (type == "guillemin") {
    if (j.contains("polytope")) return PotentialExpr::guillemin(polytope_from_json(j["polytope"]));
    const auto dim = dim_from(j);
    return PotentialExpr::guillemin(RealPolytope::from_forms(dim, forms_from(j, dim), false));
  }
  if (type == "canonical_cone") {
    if (j.contains("cone")) return PotentialExpr::canonical_cone(cone_from_json(j["cone"]));
    const auto dim = dim_from(j);
    return PotentialExpr::canonical_cone(dim, forms_from(j, dim));
  }
  if (type == "sb_correction") {
    auto b = vector_from_json(field(j, "b"));
    if (j.contains("cone")) return PotentialExpr::sb_correction(cone_from_json(j["cone"]), b);
    const auto dim = dim_from(j);
    return PotentialExpr::sb_correction(dim, forms_from(j, dim), b);
  }
  if (type == "sum") {
    std::vector<PotentialExpr> terms;
    for (const auto& t : field(j, "terms")) terms.push_back(potential_from_json(t));
    return PotentialExpr::sum(std::move(terms));
  }
  if (type == "pulled_back") {
    std::optional<Eigen::VectorXd> shift;
    if (j.contains("shift")) shift = vector_from_json(j["shift"]);
    return PotentialExpr::pulled_back(potential_from_json(field(j, "base")), matrix_from_json(field(j, "map")),
                                      shift);
  }
  if (type == "boothby_wang") return PotentialExpr::boothby_wang(potential_from_json(field(j, "base")));
  if (type == "calabi") {
    const auto& n = field(j, "n");
    if (!n.is_number_integer()) throw ParseError("\"n\" must be an integer");
    return PotentialExpr::calabi(n.get<int>(), field(j, "A").get<double>());
  }
  throw ParseError("unknown potential type \"" + type + "\"");
}

}  // namespace toric::io
