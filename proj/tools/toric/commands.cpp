#include "toric/commands.hpp"

#include "toric/calabi.hpp"
#include "toric/cone.hpp"
#include "toric/curvature.hpp"
#include "toric/errors.hpp"
#include "toric/io.hpp"
#include "toric/manifest.hpp"
#include "toric/polytope.hpp"
#include "toric/potential.hpp"
#include "toric/settings.hpp"

#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>

namespace toric_tool {

namespace {

using namespace toric;
using io::json;

int require(const std::optional<int>& v, const char* flag) {
  if (!v) throw PreconditionError(std::string("missing required flag ") + flag);
  return *v;
}

Settings with_overrides(Settings s, const Options& o) {
  if (o.seed) s.seed = *o.seed;
  if (o.grid) {
    s.grid_points = *o.grid;
    s.calabi.grid_points = *o.grid;
  }
  return s;
}

class Session {
 public:
  explicit Session(const Options& opts)
      : opts_(opts), settings_(with_overrides(load_settings(opts.config), opts)),
        manifest_(opts.command, opts.arguments, settings_.to_json()) {
    if (!opts.config.empty()) manifest_.add_input(opts.config);
  }

  const Options& opts() const { return opts_; }
  const Settings& settings() const { return settings_; }

  json read_input() {
    manifest_.add_input(opts_.input);
    return io::read_file(opts_.input);
  }

  void emit_json(json j) {
    j["manifest_digest"] = manifest_.digest();
    emit(io::dump(j) + "\n");
  }

  void emit_csv(const std::string& body) { emit("# manifest " + manifest_.digest() + "\n" + body); }

 private:
  void emit(const std::string& text) {
    if (opts_.out.empty()) {
      std::cout << text;
      return;
    }
    manifest_.write_output(opts_.out, text);
    manifest_.finish(opts_.out);
  }

  Options opts_;
  Settings settings_;
  RunManifest manifest_;
};

MomentCone load_cone(Session& s) {
  const auto& o = s.opts();
  if (!o.input.empty()) return io::cone_from_json(s.read_input());
  if (o.family == "ckm") return c_km(require(o.n, "--n"), require(o.k, "--k"), require(o.m, "--m"));
  if (o.family == "ypq") return c_pq(require(o.p, "--p"), require(o.q, "--q"));
  if (o.family == "orthant") {
    int n = require(o.n, "--n");
    if (n < 0) throw PreconditionError("--n must be non-negative");
    return orthant(static_cast<std::size_t>(n) + 1);
  }
  if (o.family == "simplex") return standard_cone(standard_simplex(require(o.n, "--n")));
  throw PreconditionError("need --input or --family ckm|ypq|orthant|simplex");
}

LabeledPolytope load_polytope(Session& s) {
  const auto& o = s.opts();
  if (!o.input.empty()) return io::polytope_from_json(s.read_input());
  if (o.family == "simplex") return standard_simplex(require(o.n, "--n"));
  if (o.family == "hirzebruch") return hirzebruch_polytope(require(o.n, "--n"), require(o.m, "--m"));
  throw PreconditionError("need --input or --family simplex|hirzebruch");
}

PotentialExpr load_potential(Session& s) {
  const auto& o = s.opts();
  auto base = [&]() -> PotentialExpr {
    if (!o.input.empty()) return io::potential_from_json(s.read_input());
    if (o.family == "simplex") return PotentialExpr::guillemin(standard_simplex(require(o.n, "--n")));
    if (o.family == "hirzebruch")
      return PotentialExpr::guillemin(hirzebruch_polytope(require(o.n, "--n"), require(o.m, "--m")));
    return PotentialExpr::canonical_cone(load_cone(s));
  }();
  return o.lift ? PotentialExpr::boothby_wang(base) : base;
}

std::string csv_field(const std::string& text) {
  std::string out = text;
  for (char& c : out)
    if (c == ',' || c == '\n') c = ';';
  return out;
}

int cmd_good_cone(Session& s) {
  auto cone = load_cone(s);
  auto cert = is_good(cone);
  json j = io::to_json(cert);
  j["cone"] = io::to_json(cone);
  s.emit_json(std::move(j));
  return cert.verdict ? kOk : kVerifiedFalse;
}

int cmd_dual_cone(Session& s) {
  auto cone = load_cone(s);
  s.emit_json({{"cone", io::to_json(cone)}, {"dual", io::to_json(dual_cone(cone))}});
  return kOk;
}

int cmd_ypq_check(Session& s) {
  const int p = require(s.opts().p, "--p");
  const int q = require(s.opts().q, "--q");
  if (!(0 < q && q < p)) throw PreconditionError("need 0 < q < p");
  const int k = p - 1;
  const int m = p + q - 2;
  auto t = t_km(k, m);
  bool integral = true;
  for (std::size_t i = 0; i < t.map.rows(); ++i)
    for (std::size_t c = 0; c < t.map.cols(); ++c) integral = integral && boost::multiprecision::denominator(t.map(i, c)) == 1;
  auto det = latlin::determinant(t.map);
  auto check = verify_equivalence(c_km(2, k, m), c_pq(p, q), t.map, t.direction);
  t.pairing = check.pairing;
  const int g = std::gcd(p, q);
  const bool verdict = integral && det == 1 && check.equivalent;
  s.emit_json({{"p", p},
               {"q", q},
               {"k", k},
               {"m", m},
               {"map", io::to_json(t)},
               {"determinant", latlin::to_string(det)},
               {"integral", integral},
               {"equivalent", check.equivalent},
               {"pairing", check.pairing},
               {"gcd", g},
               {"simply_connected_flag", g == 1},
               {"note", "gcd(p,q) = 1 is the literature condition for Y^{p,q} = S^2 x S^3; not computed here"},
               {"verdict", verdict}});
  return verdict ? kOk : kVerifiedFalse;
}

int cmd_std_cone(Session& s) {
  auto poly = load_polytope(s);
  auto cone = standard_cone(poly);
  json reeb = json::array();
  for (const auto& v : cone.canonical_reeb()) reeb.push_back(v.convert_to<long long>());
  s.emit_json({{"polytope", io::to_json(poly)}, {"cone", io::to_json(cone)}, {"canonical_reeb", reeb}});
  return kOk;
}

int cmd_transform(Session& s) {
  auto poly = load_polytope(s);
  const auto& text = s.opts().map;
  if (text.empty()) throw PreconditionError("missing required flag --map");
  json mj = (!text.empty() && text.front() == '[') ? io::parse_text(text, "--map") : io::read_file(text);
  auto t = io::rat_matrix_from_json(mj);
  auto result = transform_polytope(poly, t);
  json rows = json::array();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < t.cols(); ++c) row.push_back(latlin::to_string(t(i, c)));
    rows.push_back(std::move(row));
  }
  s.emit_json({{"source", io::to_json(poly)}, {"map", rows}, {"result", io::to_json(result)}});
  return kOk;
}

int cmd_potential_eval(Session& s) {
  auto pot = load_potential(s);
  if (s.opts().point.empty()) throw PreconditionError("missing required flag --point");
  auto x = io::vector_from_json(io::parse_text(s.opts().point, "--point"));
  auto h = hessian(pot, x);
  json j = {{"potential", io::to_json(pot)},
            {"point", io::to_json(x)},
            {"value", pot.value(x)},
            {"gradient", io::to_json(h.gradient)},
            {"hessian", io::to_json(h.hessian)},
            {"positive_definite", h.positive_definite},
            {"affine_ambiguous", pot.affine_ambiguous()}};
  j["reeb"] = pot.conic() ? io::to_json(Eigen::VectorXd(reeb_vector(pot, x))) : json(nullptr);
  s.emit_json(std::move(j));
  return kOk;
}

int cmd_curvature_grid(Session& s) {
  auto pot = load_potential(s);
  const auto& set = s.settings();
  const auto dim = pot.dim();
  const bool lifted = pot.kind() == PotentialKind::BoothbyWang;
  std::ostringstream csv;
  for (std::size_t i = 0; i < dim; ++i) {
    if (lifted && i + 1 == dim)
      csv << "z,";
    else
      csv << "x_" << i + 1 << ',';
  }
  csv << "Sc,detS";
  if (pot.conic())
    for (std::size_t i = 0; i < dim; ++i) csv << ",reeb_" << i + 1;
  csv << ",status\n";
  for (const auto& x : interior_grid(pot, set.grid_points, set.seed)) {
    for (Eigen::Index i = 0; i < x.size(); ++i) csv << io::format_double(x(i)) << ',';
    try {
      auto sample = curvature_sample(pot, x, set.curvature);
      csv << io::format_double(sample.scalar_curvature) << ',' << io::format_double(sample.det_S);
      for (Eigen::Index i = 0; i < sample.reeb.size(); ++i) csv << ',' << io::format_double(sample.reeb(i));
      csv << ",ok\n";
    } catch (const std::exception& e) {
      csv << ',';
      if (pot.conic())
        for (std::size_t i = 0; i < dim; ++i) csv << ',';
      csv << ',' << csv_field(std::string("error: ") + e.what()) << '\n';
    }
  }
  s.emit_csv(csv.str());
  return kOk;
}

int cmd_einstein_verify(Session& s) {
  auto pot = load_potential(s);
  if (!s.opts().target) throw PreconditionError("missing required flag --target");
  const double tol = s.opts().tol.value_or(s.settings().einstein_tolerance);
  auto grid = interior_grid(pot, s.settings().grid_points, s.settings().seed);
  auto report = einstein_verify(pot, grid, *s.opts().target, tol, s.settings().curvature);
  json j = io::to_json(report);
  j["potential"] = io::to_json(pot);
  s.emit_json(std::move(j));
  return report.verdict ? kOk : kVerifiedFalse;
}

struct PipelineResult {
  json report;
  bool pass = false;
};

PipelineResult calabi_pipeline(const Settings& set, int n, int k, int m, std::optional<double> tol_override) {
  auto tol = set.calabi;
  if (tol_override) tol.curvature = *tol_override;
  auto sol = calabi::solve_A(n, k, m, tol);
  const double root_residual = std::max(std::abs(calabi::p_A(n, sol.a_param, -sol.roots.a)),
                                        std::abs(calabi::p_A(n, sol.a_param, sol.roots.b)));
  auto pot = calabi::calabi_potential(n, sol.a_param);
  auto einstein = einstein_verify(pot, interior_grid(pot, tol.grid_points, set.seed), 2.0 * n * (n + 1),
                                  tol.curvature, set.curvature);
  auto lift = PotentialExpr::boothby_wang(pot);
  double lift_max = 0;
  for (const auto& x : interior_grid(lift, tol.lift_points, set.seed + 1))
    lift_max = std::max(lift_max, std::abs(scalar_curvature(lift, x, set.curvature)));

  json equivalence;
  bool equivalence_ok = false;
  try {
    auto eq = calabi::equivalence_to_ckm(sol, tol.equivalence);
    equivalence = {{"map", io::to_json(eq.map)},
                   {"direction", to_string(eq.direction)},
                   {"pairing", eq.pairing},
                   {"max_residual", eq.max_residual}};
    equivalence_ok = true;
  } catch (const NumericError& e) {
    equivalence = {{"error", e.what()}};
  }
  json checks = {{"roots", root_residual < 1e-12},
                 {"gamma", sol.gamma_gap() < tol.gamma},
                 {"curvature", einstein.verdict},
                 {"lift_curvature", lift_max < tol.lift_curvature},
                 {"equivalence", equivalence_ok}};
  bool pass = true;
  for (const auto& [_, v] : checks.items()) pass = pass && v.get<bool>();
  PipelineResult r;
  r.pass = pass;
  r.report = {{"solution", io::to_json(sol)},
              {"root_residual", root_residual},
              {"einstein", io::to_json(einstein)},
              {"lift", {{"points", tol.lift_points}, {"max_abs_scalar_curvature", lift_max},
                        {"tolerance", tol.lift_curvature}}},
              {"equivalence", equivalence},
              {"regularity", {{"class", to_string(calabi::classify_reeb(sol))},
                              {"heuristic", true},
                              {"note", "continued-fraction rationality test on the Reeb ratios, denominators up to 1e4, tolerance 1e-11"}}},
              {"checks", checks},
              {"verdict", pass}};
  return r;
}

int cmd_calabi(Session& s) {
  const auto& o = s.opts();
  auto r = calabi_pipeline(s.settings(), require(o.n, "--n"), require(o.k, "--k"), require(o.m, "--m"), o.tol);
  s.emit_json(std::move(r.report));
  return r.pass ? kOk : kVerifiedFalse;
}

int cmd_calabi_sweep(Session& s) {
  const auto& o = s.opts();
  const int n = require(o.n, "--n");
  const int k_max = o.k.value_or(3);
  if (n < 2 || k_max < 1) throw PreconditionError("sweep needs n >= 2 and k >= 1");
  std::ostringstream csv;
  csv << "n,k,m,A,a,b,lambda,gamma,gamma_gap,sc_max_deviation,lift_max_abs,equivalence_residual,regularity,status\n";
  bool all_pass = true;
  for (int k = 1; k <= k_max; ++k)
    for (int m = 0; m < k * n; ++m) {
      if (!calabi::admissible(n, k, m)) continue;
      csv << n << ',' << k << ',' << m << ',';
      try {
        auto r = calabi_pipeline(s.settings(), n, k, m, o.tol).report;
        const auto& sol = r["solution"];
        for (const char* key : {"A", "a", "b", "lambda", "gamma", "gamma_gap"})
          csv << io::format_double(sol[key].get<double>()) << ',';
        csv << io::format_double(r["einstein"]["max_deviation"].get<double>()) << ','
            << io::format_double(r["lift"]["max_abs_scalar_curvature"].get<double>()) << ',';
        if (r["equivalence"].contains("max_residual"))
          csv << io::format_double(r["equivalence"]["max_residual"].get<double>());
        csv << ',' << r["regularity"]["class"].get<std::string>() << ','
            << (r["verdict"].get<bool>() ? "ok" : "failed") << '\n';
        all_pass = all_pass && r["verdict"].get<bool>();
      } catch (const std::exception& e) {
        csv << ",,,,,,,,,," << csv_field(std::string("error: ") + e.what()) << '\n';
        all_pass = false;
      }
    }
  s.emit_csv(csv.str());
  return all_pass ? kOk : kVerifiedFalse;
}

int cmd_pi1(Session& s) {
  auto cone = load_cone(s);
  auto normals = cone.normal_matrix();
  auto snf = latlin::smith_normal_form(normals);
  auto order = latlin::cokernel_order(normals);
  json factors = json::array();
  for (const auto& d : snf.invariant_factors()) factors.push_back(d.convert_to<long long>());
  json j = {{"cone", io::to_json(cone)},
            {"invariant_factors", factors},
            {"order", order ? json(order->convert_to<long long>()) : json("infinite")},
            {"simply_connected", order && *order == 1}};
  const auto& o = s.opts();
  if (o.input.empty() && o.family == "ckm") {
    int g = std::gcd(*o.m + *o.n, *o.k + 1);
    j["gcd_formula"] = g;
    j["agrees_with_gcd_formula"] = order && *order == g;
  }
  s.emit_json(std::move(j));
  return kOk;
}

}  // namespace

int run_command(const Options& opts) {
  Session session(opts);
  const auto& c = opts.command;
  if (c == "good-cone") return cmd_good_cone(session);
  if (c == "dual-cone") return cmd_dual_cone(session);
  if (c == "ypq-check") return cmd_ypq_check(session);
  if (c == "std-cone") return cmd_std_cone(session);
  if (c == "transform") return cmd_transform(session);
  if (c == "potential-eval") return cmd_potential_eval(session);
  if (c == "curvature-grid") return cmd_curvature_grid(session);
  if (c == "einstein-verify") return cmd_einstein_verify(session);
  if (c == "calabi") return cmd_calabi(session);
  if (c == "calabi-sweep") return cmd_calabi_sweep(session);
  if (c == "pi1") return cmd_pi1(session);
  throw PreconditionError("unknown command " + c);
}

}  // namespace toric_tool
