#include "toric/commands.hpp"
#include "toric/cone.hpp"
#include "toric/errors.hpp"
#include "toric/io.hpp"
#include "toric/polytope.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace toric_tool;

const char* const kCommands[][2] = {
    {"good-cone", "Decide goodness of a moment cone, with a per-face certificate"},
    {"dual-cone", "Dual cone of a moment cone"},
    {"ypq-check", "Check the C(p-1, p+q-2) ~ Y^{p,q} equivalence"},
    {"std-cone", "Standard cone over a labeled polytope"},
    {"transform", "Apply a rational linear map to a polytope"},
    {"potential-eval", "Value, gradient and Hessian of a symplectic potential"},
    {"curvature-grid", "Scalar curvature on a seeded interior grid (CSV)"},
    {"einstein-verify", "Constant scalar curvature check against --target"},
    {"calabi", "Solve and verify the Calabi family member for (n, k, m)"},
    {"calabi-sweep", "Run calabi over every admissible (k, m) up to --k (CSV)"},
    {"pi1", "Fundamental group order of the link from the normals"},
};

int fail(int code, const std::string& what) {
  std::cerr << "toric: " << what << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric Sasaki geometry toolkit"};
  app.set_version_flag("--version", TORIC_VERSION);
  app.require_subcommand(1);

  Options opts;
  bool sweep = false;
  for (const auto& [name, help] : kCommands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", opts.input, "JSON input file")->check(CLI::ExistingFile);
    sub->add_option("--family", opts.family, "Built-in family")
        ->check(CLI::IsMember({"ckm", "ypq", "orthant", "simplex", "hirzebruch"}));
    sub->add_option("--n", opts.n, "Dimension parameter");
    sub->add_option("--k", opts.k, "k parameter (calabi-sweep: largest k)");
    sub->add_option("--m", opts.m, "m parameter");
    sub->add_option("--p", opts.p, "p parameter");
    sub->add_option("--q", opts.q, "q parameter");
    sub->add_option("--grid", opts.grid, "Number of interior sample points");
    sub->add_option("--tol", opts.tol, "Tolerance override")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opts.seed, "Random seed");
    sub->add_option("--out", opts.out, "Output file (also writes <out>.manifest.json)");
    sub->add_option("--config", opts.config, "Settings JSON replacing the built-in defaults")
        ->check(CLI::ExistingFile);
    sub->add_option("--map", opts.map, "Matrix as JSON text or a JSON file");
    sub->add_option("--point", opts.point, "Point as a JSON array");
    sub->add_option("--target", opts.target, "Target scalar curvature");
    sub->add_flag("--lift", opts.lift, "Use the Boothby-Wang lift of the potential");
    if (std::string(name) == "calabi") sub->add_flag("--sweep", sweep, "Same as calabi-sweep");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kPrecondition;
  }

  opts.command = app.get_subcommands().front()->get_name();
  if (sweep) opts.command = "calabi-sweep";
  opts.arguments.assign(argv + 1, argv + argc);

  try {
    return run_command(opts);
  } catch (const toric::io::ParseError& e) {
    return fail(kPrecondition, std::string("parse error: ") + e.what());
  } catch (const toric::NumericError& e) {
    return fail(kNumeric, std::string("numeric failure: ") + e.what());
  } catch (const toric::PreconditionError& e) {
    return fail(kPrecondition, std::string("precondition: ") + e.what());
  } catch (const toric::DomainError& e) {
    return fail(kPrecondition, std::string("domain: ") + e.what());
  } catch (const toric::SingularMatrixError& e) {
    return fail(kPrecondition, std::string("singular map: ") + e.what());
  } catch (const toric::InvalidCone& e) {
    return fail(kPrecondition, "invalid cone (" + toric::to_string(e.defect()) + "): " + e.what());
  } catch (const toric::InvalidPolytope& e) {
    return fail(kPrecondition, "invalid polytope (" + toric::to_string(e.defect()) + "): " + e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kPrecondition, e.what());
  } catch (const std::exception& e) {
    return fail(kNumeric, e.what());
  }
}
