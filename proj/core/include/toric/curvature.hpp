#pragma once

// Kahler metric blocks and scalar curvature in action-angle coordinates.
// Sc = -sum_{j,k} d_j d_k s^{jk} where (s^{jk}) = S^{-1}; the second
// derivatives come from central differences of the analytic Hessian inverse.

#include "toric/potential.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace toric {

struct CurvatureOptions {
  double relative_step = 1e-3;  ///< h_j = relative_step * max(1, |x_j|)
  int max_shrinks = 20;         ///< halvings allowed to fit the stencil
  bool richardson = true;       ///< (4 Sc(h/2) - Sc(h)) / 3
};

struct CurvatureSample {
  Eigen::VectorXd point;
  Eigen::MatrixXd S;
  Eigen::MatrixXd S_inv;
  double scalar_curvature = 0.0;  ///< extrapolated when richardson is set
  double raw = 0.0;               ///< plain central differences at step h
  double det_S = 0.0;
  Eigen::VectorXd reeb;  ///< 2 S x; empty unless the potential lives on a cone
  Eigen::VectorXd step;  ///< h_j actually used
};

/// Sc at x. Throws NumericError if S is not positive definite or the
/// stencil cannot be fitted into the domain.
double scalar_curvature(const PotentialExpr& s, const Eigen::VectorXd& x, const CurvatureOptions& opts = {});
CurvatureSample curvature_sample(const PotentialExpr& s, const Eigen::VectorXd& x,
                                 const CurvatureOptions& opts = {});

/// Plain central-difference Sc at explicit steps (no shrinking, no extrapolation).
double scalar_curvature_at_step(const PotentialExpr& s, const Eigen::VectorXd& x, const Eigen::VectorXd& step);

struct MetricBlocks {
  Eigen::MatrixXd S;
  Eigen::MatrixXd S_inv;
  /// block-diag(S, S^{-1}) in coordinates (x, theta).
  Eigen::MatrixXd full() const;
};
MetricBlocks metric_blocks(const PotentialExpr& s, const Eigen::VectorXd& x);

struct BwRelationSample {
  Eigen::VectorXd x;  ///< point of the cone, x = z y
  double z = 0.0;
  double lifted_sc = 0.0;  ///< Sc~(x, z)
  double base_sc = 0.0;    ///< Sc(x / z)
  double residual = 0.0;   ///< Sc~ z - (Sc - 2n(n+1))
};
struct BwRelationReport {
  std::vector<BwRelationSample> samples;
  double max_residual = 0.0;
  double max_lifted = 0.0;
};
/// Evaluates both sides of Sc~(x,z) z = Sc(x/z) - 2n(n+1) at the given
/// (y, z) pairs, y in the base domain.
BwRelationReport bw_curvature_relation(const PotentialExpr& base, const std::vector<Eigen::VectorXd>& ys,
                                       const std::vector<double>& zs, const CurvatureOptions& opts = {});

struct EinsteinReport {
  std::vector<Eigen::VectorXd> grid;
  std::vector<double> sc;
  double target = 0.0;
  double max_deviation = 0.0;
  double mean_deviation = 0.0;
  double tolerance = 0.0;
  bool verdict = false;
  std::string note;
};
/// Constant-Sc check; the verdict only states "Sc = target within tol".
EinsteinReport einstein_verify(const PotentialExpr& s, const std::vector<Eigen::VectorXd>& grid, double target,
                               double tolerance, const CurvatureOptions& opts = {});

/// sample_interior over the potential's own domain.
std::vector<Eigen::VectorXd> interior_grid(const PotentialExpr& s, std::size_t count, std::uint64_t seed);

}  // namespace toric
