#include "toric/curvature.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <cmath>

namespace toric {

namespace {

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& s) {
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) throw NumericError("Hessian is not positive definite");
  return llt.solve(Eigen::MatrixXd::Identity(s.rows(), s.cols()));
}

Eigen::MatrixXd inverse_hessian(const PotentialExpr& s, const Eigen::VectorXd& x) {
  return checked_inverse(s.hessian(x));
}

bool stencil_fits(const PotentialExpr& s, const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
  const auto n = x.size();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j; k < n; ++k)
      for (int sj : {-1, 1})
        for (int sk : {-1, 1}) {
          Eigen::VectorXd y = x;
          y(j) += sj * h(j);
          if (k != j) y(k) += sk * h(k);
          if (!s.contains(y)) return false;
        }
  return true;
}

}  // namespace

double scalar_curvature_at_step(const PotentialExpr& s, const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
  const auto n = x.size();
  const Eigen::MatrixXd g0 = inverse_hessian(s, x);
  auto shifted = [&](Eigen::Index j, double dj, Eigen::Index k, double dk) {
    Eigen::VectorXd y = x;
    y(j) += dj;
    y(k) += dk;
    return inverse_hessian(s, y);
  };
  double total = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd y = x;
    y(j) = x(j) + h(j);
    double plus = inverse_hessian(s, y)(j, j);
    y(j) = x(j) - h(j);
    double minus = inverse_hessian(s, y)(j, j);
    total += (plus - 2.0 * g0(j, j) + minus) / (h(j) * h(j));
    for (Eigen::Index k = j + 1; k < n; ++k) {
      double pp = shifted(j, h(j), k, h(k))(j, k);
      double pm = shifted(j, h(j), k, -h(k))(j, k);
      double mp = shifted(j, -h(j), k, h(k))(j, k);
      double mm = shifted(j, -h(j), k, -h(k))(j, k);
      // (j,k) and (k,j) contribute equally
      total += 2.0 * (pp - pm - mp + mm) / (4.0 * h(j) * h(k));
    }
  }
  return -total;
}

CurvatureSample curvature_sample(const PotentialExpr& s, const Eigen::VectorXd& x, const CurvatureOptions& opts) {
  CurvatureSample out;
  out.point = x;
  out.S = s.hessian(x);
  out.S_inv = checked_inverse(out.S);
  out.det_S = out.S.determinant();
  if (s.conic()) out.reeb = 2.0 * out.S * x;

  Eigen::VectorXd h = opts.relative_step * x.cwiseAbs().cwiseMax(1.0);
  int shrinks = 0;
  while (!stencil_fits(s, x, h)) {
    if (++shrinks > opts.max_shrinks) throw NumericError("finite-difference stencil does not fit inside the domain");
    h *= 0.5;
  }
  out.step = h;
  out.raw = scalar_curvature_at_step(s, x, h);
  out.scalar_curvature = out.raw;
  if (opts.richardson) {
    double half = scalar_curvature_at_step(s, x, 0.5 * h);
    out.scalar_curvature = (4.0 * half - out.raw) / 3.0;
  }
  if (!std::isfinite(out.scalar_curvature)) throw NumericError("scalar curvature is not finite");
  return out;
}

double scalar_curvature(const PotentialExpr& s, const Eigen::VectorXd& x, const CurvatureOptions& opts) {
  return curvature_sample(s, x, opts).scalar_curvature;
}

Eigen::MatrixXd MetricBlocks::full() const {
  const auto n = S.rows();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  g.topLeftCorner(n, n) = S;
  g.bottomRightCorner(n, n) = S_inv;
  return g;
}

MetricBlocks metric_blocks(const PotentialExpr& s, const Eigen::VectorXd& x) {
  MetricBlocks b;
  b.S = s.hessian(x);
  b.S_inv = checked_inverse(b.S);
  return b;
}

BwRelationReport bw_curvature_relation(const PotentialExpr& base, const std::vector<Eigen::VectorXd>& ys,
                                       const std::vector<double>& zs, const CurvatureOptions& opts) {
  if (ys.size() != zs.size()) throw PreconditionError("need one z per base point");
  const auto lifted = PotentialExpr::boothby_wang(base);
  const double n = static_cast<double>(base.dim());
  BwRelationReport report;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    BwRelationSample sample;
    sample.z = zs[i];
    if (!(sample.z > 0)) throw DomainError("z must be positive");
    Eigen::VectorXd point(ys[i].size() + 1);
    point << sample.z * ys[i], sample.z;
    sample.x = point.head(ys[i].size());
    sample.lifted_sc = scalar_curvature(lifted, point, opts);
    sample.base_sc = scalar_curvature(base, ys[i], opts);
    sample.residual = sample.lifted_sc * sample.z - (sample.base_sc - 2.0 * n * (n + 1.0));
    report.max_residual = std::max(report.max_residual, std::abs(sample.residual));
    report.max_lifted = std::max(report.max_lifted, std::abs(sample.lifted_sc));
    report.samples.push_back(std::move(sample));
  }
  return report;
}

EinsteinReport einstein_verify(const PotentialExpr& s, const std::vector<Eigen::VectorXd>& grid, double target,
                               double tolerance, const CurvatureOptions& opts) {
  if (grid.empty()) throw PreconditionError("empty grid");
  EinsteinReport r;
  r.grid = grid;
  r.target = target;
  r.tolerance = tolerance;
  double sum = 0;
  for (const auto& x : grid) {
    double sc = scalar_curvature(s, x, opts);
    double dev = std::abs(sc - target);
    r.sc.push_back(sc);
    r.max_deviation = std::max(r.max_deviation, dev);
    sum += dev;
  }
  r.mean_deviation = sum / static_cast<double>(grid.size());
  r.verdict = r.max_deviation < tolerance;
  r.note = "constant scalar curvature check only; Ricci curvature is not computed";
  return r;
}

std::vector<Eigen::VectorXd> interior_grid(const PotentialExpr& s, std::size_t count, std::uint64_t seed) {
  auto pts = sample_interior(s.domain(), s.dim(), count, seed);
  for (const auto& p : pts)
    if (!s.contains(p)) throw NumericError("sampled point fell outside the domain");
  return pts;
}

}  // namespace toric
