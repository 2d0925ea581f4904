#pragma once

// Calabi's U(n)-invariant Kahler-Einstein potentials s_A, the roots of p_A,
// the polytope P_A and its standard cone C_A, and the explicit linear
// equivalence C_A ~ C(k, m).

#include "toric/cone.hpp"
#include "toric/polytope.hpp"
#include "toric/potential.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace toric::calabi {

/// Tolerances for one reproducible pipeline run.
struct Tolerances {
  double root = 1e-13;            ///< |p_A| at the bracketed roots
  double gamma = 1e-8;            ///< agreement of the two gamma formulas
  double curvature = 1e-4;        ///< |Sc(s_A) - 2n(n+1)| on the grid
  double lift_curvature = 1e-3;   ///< |Sc~| of the Boothby-Wang lift
  double equivalence = 1e-8;      ///< |T^t nu' - nu| entrywise
  std::size_t grid_points = 100;
  std::size_t lift_points = 50;
  std::size_t a_grid = 1024;
};

/// n^n / (n+1)^{n+1}: the open range of A is (0, a_upper_bound(n)).
double a_upper_bound(int n);

/// (r + n/(n+1))^n (1/(n+1) - r) - A.
double p_A(int n, double a_param, double r);

/// h_A''(r) = -1/(r + n/(n+1)) + (r + n/(n+1))^{n-1} / p_A(r).
double h_A_second(int n, double a_param, double r);

/// -a and b are the zeros of p_A nearest to 0 on either side.
struct Roots {
  double a = 0.0;
  double b = 0.0;
};
/// Bisection on (-n/(n+1), 0) and (0, 1/(n+1)); p_A is monotone on both.
Roots solve_roots(int n, double a_param, double tol = 1e-13);

/// Coefficients of p_A in ascending powers of r.
std::vector<double> p_A_coefficients(int n, double a_param);

/// q_A(-a) and q_A(b) where p_A(r) = (r + a)(b - r) q_A(r).
struct QValues {
  double at_minus_a = 0.0;
  double at_b = 0.0;
};
QValues q_closed_form(int n, const Roots& roots);
/// Synthetic division of p_A by (r + a) and (b - r), then evaluation.
QValues q_by_division(int n, double a_param, const Roots& roots);
/// Coefficient of 1/(r + a) in (r + n/(n+1))^{n-1} / p_A(r).
double residue_at_minus_a(int n, double a_param, const Roots& roots);

/// (b/a) (n - (n+1)a) / (n + (n+1)b).
double lambda_of_A(int n, double a_param);
/// (kn - m) / (n + m).
double target_lambda(int n, int k, int m);
/// (k-1)n/2 < m < kn with n >= 2, k >= 1.
bool admissible(int n, int k, int m);

/// P_A: x_i + 1/(n+1) >= 0, (r + a)/((n+1)a) >= 0, (b - r)/((n+1)b) >= 0.
RealPolytope p_A_polytope(int n, double a_param);
/// Standard cone normals of P_A: (e_i, 1/(n+1)), (d/((n+1)a), 1/(n+1)),
/// (-d/((n+1)b), 1/(n+1)).
std::vector<AffineForm> c_A_forms(int n, double a_param);

/// s_A = 1/2 (sum (x_i + 1/(n+1)) log(x_i + 1/(n+1)) + h_A(r)).
PotentialExpr calabi_potential(int n, double a_param);

struct CalabiSolution {
  int n = 0;
  int k = 0;
  int m = 0;
  double a_param = 0.0;
  Roots roots;
  double lambda = 0.0;
  double gamma_from_a = 0.0;
  double gamma_from_b = 0.0;
  RealPolytope polytope;
  std::vector<AffineForm> cone_forms;
  /// T with T^t acting on C_A normals giving the C(k, m) normals.
  Eigen::MatrixXd equivalence;
  /// ((n+1) gamma e_n, n+1) in C(k, m) coordinates.
  Eigen::VectorXd reeb;

  double gamma() const { return 0.5 * (gamma_from_a + gamma_from_b); }
  double gamma_gap() const;
};

/// Every A on the bracket grid whose lambda_A hits (kn-m)/(n+m) and whose
/// gamma formulas agree. Throws PreconditionError if the (k, m) condition
/// fails and NumericError when no bracket is found.
std::vector<CalabiSolution> solve_A_candidates(int n, int k, int m, const Tolerances& tol = {});
/// The unique candidate; NumericError when several A qualify.
CalabiSolution solve_A(int n, int k, int m, const Tolerances& tol = {});

/// Builds T from gamma and checks T^t nu'_j = nu_j for the C(k,m) normals.
struct RealEquivalence {
  Eigen::MatrixXd map;
  MapDirection direction = MapDirection::TransposeOnNormals;
  std::vector<std::size_t> pairing;
  double max_residual = 0.0;
};
RealEquivalence equivalence_to_ckm(const CalabiSolution& s, double tol = 1e-8);

/// Heuristic: continued-fraction rationality of gamma (denominators up to
/// 10^4, tolerance 1e-11); rational Reeb vectors are then tested for a free circle action.
Regularity classify_reeb(const CalabiSolution& s);

}  // namespace toric::calabi
