#pragma once

// JSON and CSV encodings. Exact rationals travel as "p/q" strings; integer
// entries that overflow 64 bits are written as strings too.

#include "toric/calabi.hpp"
#include "toric/cone.hpp"
#include "toric/curvature.hpp"
#include "toric/polytope.hpp"
#include "toric/potential.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>

namespace toric::io {

using nlohmann::json;

/// Malformed text or schema violation; carries a 1-based line and column
/// when the failure is syntactic (0 otherwise).
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

json parse_text(const std::string& text, const std::string& source = "<input>");
json read_file(const std::string& path);

json to_json(const LabeledPolytope& p);
json to_json(const MomentCone& c);
json to_json(const GoodnessCertificate& cert);
json to_json(const LinearEquivalence& e);
json to_json(const PotentialExpr& s);
json to_json(const calabi::CalabiSolution& s);
json to_json(const EinsteinReport& r);
json to_json(const CurvatureSample& s);
json to_json(const Eigen::VectorXd& v);
json to_json(const Eigen::MatrixXd& m);

LabeledPolytope polytope_from_json(const json& j);
/// Cone schema: polytope schema with every offset equal to zero.
MomentCone cone_from_json(const json& j);
/// Expression tree; "homogeneous" terms carry code and cannot be read back.
PotentialExpr potential_from_json(const json& j);
Eigen::VectorXd vector_from_json(const json& j);
Eigen::MatrixXd matrix_from_json(const json& j);
latlin::RatMatrix rat_matrix_from_json(const json& j);

/// printf("%.17g"), so identical doubles give identical bytes.
std::string format_double(double x);

/// Serializes like json::dump but writes every float with format_double;
/// non-finite floats become null.
std::string dump(const json& j, int indent = 2);

}  // namespace toric::io
