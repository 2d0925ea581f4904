#include "toric/calabi.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace toric::calabi {

namespace {

double shifted(int n) { return static_cast<double>(n) / (n + 1); }

void require_range(int n, double a_param) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (!(a_param > 0.0 && a_param < a_upper_bound(n)))
    throw PreconditionError("A must lie in (0, n^n/(n+1)^(n+1))");
}

// Root of a function with f(lo) and f(hi) of opposite signs, to machine precision.
template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Descending coefficients divided by (r - root); the remainder is dropped.
std::vector<double> deflate(const std::vector<double>& desc, double root) {
  std::vector<double> out(desc.size() - 1);
  double carry = 0;
  for (std::size_t i = 0; i + 1 < desc.size(); ++i) {
    carry = desc[i] + carry * root;
    out[i] = carry;
  }
  return out;
}

double horner(const std::vector<double>& desc, double r) {
  double v = 0;
  for (double c : desc) v = v * r + c;
  return v;
}

}  // namespace

double a_upper_bound(int n) { return std::pow(static_cast<double>(n), n) / std::pow(n + 1.0, n + 1); }

double p_A(int n, double a_param, double r) {
  return std::pow(r + shifted(n), n) * (1.0 / (n + 1) - r) - a_param;
}

double h_A_second(int n, double a_param, double r) {
  double u = r + shifted(n);
  return -1.0 / u + std::pow(u, n - 1) / p_A(n, a_param, r);
}

Roots solve_roots(int n, double a_param, double tol) {
  require_range(n, a_param);
  auto p = [&](double r) { return p_A(n, a_param, r); };
  Roots roots;
  roots.a = -bisect(p, -shifted(n), 0.0);
  roots.b = bisect(p, 0.0, 1.0 / (n + 1));
  double scale = std::max(1.0, a_param);
  if (std::abs(p(-roots.a)) > tol * scale || std::abs(p(roots.b)) > tol * scale)
    throw NumericError("roots of p_A did not reach the requested tolerance");
  return roots;
}

std::vector<double> p_A_coefficients(int n, double a_param) {
  // (r + c)^n by binomial expansion, then times (1/(n+1) - r), minus A
  const double c = shifted(n);
  std::vector<double> pow_n(static_cast<std::size_t>(n) + 1);
  double binom = 1;
  for (int j = 0; j <= n; ++j) {
    pow_n[static_cast<std::size_t>(j)] = binom * std::pow(c, n - j);
    binom = binom * (n - j) / (j + 1);
  }
  std::vector<double> out(static_cast<std::size_t>(n) + 2, 0.0);
  for (std::size_t j = 0; j < pow_n.size(); ++j) {
    out[j] += pow_n[j] / (n + 1);
    out[j + 1] -= pow_n[j];
  }
  out[0] -= a_param;
  return out;
}

QValues q_closed_form(int n, const Roots& roots) {
  const double c = shifted(n);
  const double a = roots.a;
  const double b = roots.b;
  QValues q;
  q.at_minus_a = (n + 1) * a / (a + b) * std::pow(c - a, n - 1);
  q.at_b = (n + 1) * b / (a + b) * std::pow(b + c, n - 1);
  return q;
}

QValues q_by_division(int n, double a_param, const Roots& roots) {
  auto asc = p_A_coefficients(n, a_param);
  std::vector<double> desc(asc.rbegin(), asc.rend());
  // p = (r + a)(r - b) * (-q)
  auto quotient = deflate(deflate(desc, -roots.a), roots.b);
  for (double& c : quotient) c = -c;
  return {horner(quotient, -roots.a), horner(quotient, roots.b)};
}

double residue_at_minus_a(int n, double a_param, const Roots& roots) {
  auto q = q_by_division(n, a_param, roots);
  return std::pow(shifted(n) - roots.a, n - 1) / ((roots.a + roots.b) * q.at_minus_a);
}

double lambda_of_A(int n, double a_param) {
  auto r = solve_roots(n, a_param);
  return (r.b / r.a) * (n - (n + 1) * r.a) / (n + (n + 1) * r.b);
}

double target_lambda(int n, int k, int m) { return static_cast<double>(k * n - m) / (n + m); }

bool admissible(int n, int k, int m) { return n >= 2 && k >= 1 && (k - 1) * n < 2 * m && m < k * n; }

RealPolytope p_A_polytope(int n, double a_param) {
  auto roots = solve_roots(n, a_param);
  const auto dim = static_cast<Eigen::Index>(n);
  std::vector<AffineForm> forms;
  for (Eigen::Index i = 0; i < dim; ++i) forms.push_back({Eigen::VectorXd::Unit(dim, i), 1.0 / (n + 1)});
  forms.push_back({Eigen::VectorXd::Constant(dim, 1.0 / ((n + 1) * roots.a)), 1.0 / (n + 1)});
  forms.push_back({Eigen::VectorXd::Constant(dim, -1.0 / ((n + 1) * roots.b)), 1.0 / (n + 1)});
  return RealPolytope::from_forms(static_cast<std::size_t>(n), std::move(forms), false);
}

std::vector<AffineForm> c_A_forms(int n, double a_param) { return standard_cone_forms(p_A_polytope(n, a_param)); }

PotentialExpr calabi_potential(int n, double a_param) { return PotentialExpr::calabi(n, a_param); }

double CalabiSolution::gamma_gap() const { return std::abs(gamma_from_a - gamma_from_b); }

namespace {

CalabiSolution make_solution(int n, int k, int m, double a_param) {
  CalabiSolution s;
  s.n = n;
  s.k = k;
  s.m = m;
  s.a_param = a_param;
  s.roots = solve_roots(n, a_param);
  s.lambda = lambda_of_A(n, a_param);
  const double a = s.roots.a;
  const double b = s.roots.b;
  s.gamma_from_a = (k * (n + 1) * a - m) / ((n + 1) * a - n);
  s.gamma_from_b = (m - (n + 1) * b) / (n + (n + 1) * b);
  s.polytope = p_A_polytope(n, a_param);
  s.cone_forms = standard_cone_forms(s.polytope);

  const double g = s.gamma();
  const auto dim = static_cast<Eigen::Index>(n) + 1;
  const Eigen::Index en = dim - 2;
  Eigen::MatrixXd t_transpose = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < en; ++i) {
    t_transpose(i, i) = 1;
    t_transpose(en, i) = -g;
  }
  for (Eigen::Index i = 0; i < en; ++i) t_transpose(i, en) = -1;
  t_transpose(en, en) = m - g;  // (m + 1 - gamma) e_n - d
  t_transpose(en, dim - 1) = (n + 1) * g;
  t_transpose(dim - 1, dim - 1) = n + 1;
  s.equivalence = t_transpose.transpose();
  s.reeb = Eigen::VectorXd::Zero(dim);
  s.reeb(en) = (n + 1) * g;
  s.reeb(dim - 1) = n + 1;
  return s;
}

}  // namespace

std::vector<CalabiSolution> solve_A_candidates(int n, int k, int m, const Tolerances& tol) {
  if (!admissible(n, k, m))
    throw PreconditionError("(k, m) must satisfy n >= 2, k >= 1 and (k-1)n/2 < m < kn");
  const double target = target_lambda(n, k, m);
  const double top = a_upper_bound(n);
  auto f = [&](double a_param) { return lambda_of_A(n, a_param) - target; };

  // Log-spaced from both ends of (0, top): lambda_A varies fastest there.
  const std::size_t half = std::max<std::size_t>(tol.a_grid / 2, 2);
  std::vector<double> grid;
  for (std::size_t i = 0; i < half; ++i) {
    double e = -12.0 + 12.0 * static_cast<double>(i) / static_cast<double>(half - 1);
    double offset = top * 0.5 * std::pow(10.0, e);
    grid.push_back(offset);
    grid.push_back(top - offset);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.erase(std::remove_if(grid.begin(), grid.end(), [&](double x) { return !(x > 0 && x < top); }), grid.end());

  std::vector<double> values;
  for (double x : grid) values.push_back(f(x));
  std::vector<double> found;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (values[i] == 0.0) {
      found.push_back(grid[i]);
    } else if ((values[i] < 0) != (values[i + 1] < 0) && values[i + 1] != 0.0) {
      found.push_back(bisect(f, grid[i], grid[i + 1]));
    }
  }
  if (found.empty()) throw NumericError("no sign change of lambda_A - target on the A grid");

  std::vector<CalabiSolution> out;
  for (double a_param : found) {
    auto s = make_solution(n, k, m, a_param);
    if (s.gamma_gap() <= tol.gamma) out.push_back(std::move(s));
  }
  if (out.empty()) throw NumericError("no bracketed A has matching gamma values");
  return out;
}

CalabiSolution solve_A(int n, int k, int m, const Tolerances& tol) {
  auto candidates = solve_A_candidates(n, k, m, tol);
  if (candidates.size() > 1) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "ambiguous A:";
    for (const auto& c : candidates) msg << ' ' << c.a_param;
    throw NumericError(msg.str());
  }
  return std::move(candidates.front());
}

RealEquivalence equivalence_to_ckm(const CalabiSolution& s, double tol) {
  auto target = c_km(s.n, s.k, s.m).real_forms();
  if (target.size() != s.cone_forms.size()) throw NumericError("C_A and C(k,m) have different facet counts");
  RealEquivalence out;
  out.map = s.equivalence;
  Eigen::MatrixXd tt = s.equivalence.transpose();
  std::vector<bool> used(target.size(), false);
  for (const auto& f : s.cone_forms) {
    Eigen::VectorXd image = tt * f.normal;
    std::size_t best = target.size();
    double best_err = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (used[j]) continue;
      double err = (image - target[j].normal).cwiseAbs().maxCoeff();
      if (err < best_err) {
        best_err = err;
        best = j;
      }
    }
    if (best == target.size() || best_err > tol) {
      std::ostringstream msg;
      msg.precision(3);
      msg << "T^t does not map C_A onto C(k,m): residual " << best_err << " exceeds " << tol;
      throw NumericError(msg.str());
    }
    used[best] = true;
    out.pairing.push_back(best);
    out.max_residual = std::max(out.max_residual, best_err);
  }
  return out;
}

Regularity classify_reeb(const CalabiSolution& s) { return toric::classify_reeb(c_km(s.n, s.k, s.m), s.reeb); }

}  // namespace toric::calabi
