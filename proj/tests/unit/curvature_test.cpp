#include "toric/curvature.hpp"

#include "toric/calabi.hpp"
#include "toric/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace toric {
namespace {

HomogeneousTerm quadratic(std::size_t dim, double c) {
  HomogeneousTerm t;
  t.name = "c|x|^2";
  t.degree = 2.0;
  t.value = [c](const Eigen::VectorXd& x) { return c * x.squaredNorm(); };
  t.gradient = [c](const Eigen::VectorXd& x) { return Eigen::VectorXd(2 * c * x); };
  t.hessian = [dim, c](const Eigen::VectorXd&) {
    return Eigen::MatrixXd(2 * c * Eigen::MatrixXd::Identity(dim, dim));
  };
  return t;
}

PotentialExpr perturbed_simplex() {
  return PotentialExpr::sum({PotentialExpr::guillemin(standard_simplex(2)),
                             PotentialExpr::homogeneous(quadratic(2, 0.05), 2, Eigen::Vector2d(1, 2))});
}

TEST(ScalarCurvature, FlatOrthant) {
  for (int n = 1; n <= 3; ++n) {
    auto s = PotentialExpr::canonical_cone(orthant(n + 1));
    for (const auto& x : interior_grid(s, 20, n)) EXPECT_LT(std::abs(scalar_curvature(s, x)), 1e-6) << n;
  }
}

TEST(ScalarCurvature, SegmentIsFour) {
  auto s = PotentialExpr::guillemin(standard_simplex(1));
  for (double x : {0.05, 0.3, 0.5, 0.77, 0.95}) EXPECT_NEAR(scalar_curvature(s, Eigen::VectorXd::Constant(1, x)), 4.0, 1e-6);
}

TEST(ScalarCurvature, SegmentOfLengthL) {
  // S^{-1} = 2x(L-x)/L, so Sc = 4/L
  std::vector<FacetFunctional> f{{{1}, 0}, {{-1}, 3}};
  auto s = PotentialExpr::guillemin(build_polytope(1, f));
  EXPECT_NEAR(scalar_curvature(s, Eigen::VectorXd::Constant(1, 1.1)), 4.0 / 3.0, 1e-6);
}

TEST(ScalarCurvature, SimplexIsConstant) {
  auto s = PotentialExpr::guillemin(standard_simplex(2));
  auto grid = interior_grid(s, 40, 3);
  std::vector<double> sc;
  for (const auto& x : grid) sc.push_back(scalar_curvature(s, x));
  auto [lo, hi] = std::minmax_element(sc.begin(), sc.end());
  EXPECT_LT(*hi - *lo, 1e-5);
  RecordProperty("simplex2_scalar_curvature", std::to_string(sc.front()));
}

TEST(ScalarCurvature, IndefiniteHessianIsNumericError) {
  auto s = PotentialExpr::sum({PotentialExpr::guillemin(standard_simplex(2)),
                               PotentialExpr::homogeneous(quadratic(2, -5.0), 2, Eigen::Vector2d(1, 2))});
  Eigen::Vector2d x(1.0 / 3, 1.0 / 3);
  EXPECT_FALSE(hessian(s, x).positive_definite);
  EXPECT_THROW(scalar_curvature(s, x), NumericError);
  EXPECT_THROW(metric_blocks(s, x), NumericError);
}

TEST(ScalarCurvature, StencilShrinksNearTheBoundary) {
  auto s = PotentialExpr::guillemin(standard_simplex(1));
  auto sample = curvature_sample(s, Eigen::VectorXd::Constant(1, 1e-5));
  EXPECT_LT(sample.step(0), 1e-5);
  EXPECT_NEAR(sample.scalar_curvature, 4.0, 1e-3);
}

TEST(CurvatureSample, Invariants) {
  auto s = PotentialExpr::canonical_cone(c_km(2, 1, 1));
  for (const auto& x : interior_grid(s, 10, 5)) {
    auto c = curvature_sample(s, x);
    EXPECT_LT((c.S * c.S_inv - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_TRUE(std::isfinite(c.scalar_curvature));
    EXPECT_TRUE(std::isfinite(c.raw));
    EXPECT_NEAR(c.det_S, c.S.determinant(), 1e-12 * std::abs(c.det_S));
    ASSERT_EQ(c.reeb.size(), 3);
    EXPECT_LT((c.reeb - Eigen::Vector3d(0, 1, 4)).cwiseAbs().maxCoeff(), 1e-10);
  }
  auto p = curvature_sample(PotentialExpr::guillemin(standard_simplex(2)), Eigen::Vector2d(0.2, 0.3));
  EXPECT_EQ(p.reeb.size(), 0);
}

TEST(MetricBlocks, Examples) {
  auto orth = metric_blocks(PotentialExpr::canonical_cone(orthant(3)), Eigen::Vector3d::Ones());
  EXPECT_LT((orth.S - 0.5 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((orth.S_inv - 2.0 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  auto full = orth.full();
  ASSERT_EQ(full.rows(), 6);
  EXPECT_LT(full.topRightCorner(3, 3).cwiseAbs().maxCoeff(), 0.0 + 1e-300);
  EXPECT_EQ(full.bottomRightCorner(3, 3), orth.S_inv);

  auto seg = metric_blocks(PotentialExpr::guillemin(standard_simplex(1)), Eigen::VectorXd::Constant(1, 0.5));
  EXPECT_NEAR(seg.S(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(seg.S_inv(0, 0), 0.5, 1e-14);
}

TEST(MetricBlocks, PulledBackTransformRule) {
  auto pair = hirzebruch_pair(2);
  auto base = PotentialExpr::guillemin(pair.delzant_form);
  Eigen::Matrix2d t;
  t << 2, -1, 0, 1;
  auto pulled = PotentialExpr::pulled_back(base, t);
  for (const auto& x : interior_grid(pulled, 8, 4)) {
    auto mine = metric_blocks(pulled, x);
    auto theirs = metric_blocks(base, t * x);
    Eigen::Matrix2d ti = t.inverse();
    EXPECT_LT((mine.S - t.transpose() * theirs.S * t).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((mine.S_inv - ti * theirs.S_inv * ti.transpose()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ScalarCurvature, InvariantUnderPullBack) {
  auto pair = hirzebruch_pair(2);
  auto base = PotentialExpr::guillemin(pair.delzant_form);
  Eigen::Matrix2d t;
  t << 2, -1, 0, 1;
  auto pulled = PotentialExpr::pulled_back(base, t);
  for (const auto& x : interior_grid(pulled, 15, 6))
    EXPECT_NEAR(scalar_curvature(pulled, x), scalar_curvature(base, t * x), 1e-6);
}

TEST(ScalarCurvature, DegreeMinusOneOnCones) {
  auto s = PotentialExpr::canonical_cone(c_km(2, 2, 3));
  for (const auto& x : interior_grid(s, 10, 2)) {
    double sc = scalar_curvature(s, x);
    for (double t : {0.5, 2.0, 3.0})
      EXPECT_NEAR(scalar_curvature(s, t * x), sc / t, 1e-6 * std::max(1.0, std::abs(sc)));
  }
}

TEST(ScalarCurvature, StepHalvingConsistency) {
  // error of Sc(h/2) is estimated from the pair (h, h/2); Sc(h/4) must then
  // sit within four times that estimate
  std::vector<std::pair<std::string, PotentialExpr>> cases{
      {"perturbed simplex", perturbed_simplex()},
      {"canonical cone", PotentialExpr::canonical_cone(c_km(2, 1, 1))},
      {"calabi", calabi::calabi_potential(2, 0.09)}};
  for (const auto& [name, s] : cases) {
    for (const auto& x : interior_grid(s, 10, 12)) {
      Eigen::VectorXd h = 0.02 * x.cwiseAbs().cwiseMax(1.0);
      double s1 = scalar_curvature_at_step(s, x, h);
      double s2 = scalar_curvature_at_step(s, x, h / 2);
      double s4 = scalar_curvature_at_step(s, x, h / 4);
      double estimate = std::abs(s1 - s2) / 3;
      EXPECT_LE(std::abs(s2 - s4), 4 * estimate + 1e-7) << name;
    }
  }
}

TEST(ScalarCurvature, DefaultsAreDeterministic) {
  auto s = perturbed_simplex();
  Eigen::Vector2d x(0.21, 0.33);
  EXPECT_EQ(scalar_curvature(s, x), scalar_curvature(s, x));
  CurvatureOptions raw;
  raw.richardson = false;
  auto sample = curvature_sample(s, x);
  EXPECT_EQ(sample.raw, scalar_curvature(s, x, raw));
}

TEST(BwRelation, SegmentLiftIsScalarFlat) {
  auto base = PotentialExpr::guillemin(standard_simplex(1));
  std::vector<Eigen::VectorXd> ys;
  std::vector<double> zs;
  for (double y : {0.1, 0.4, 0.5, 0.8})
    for (double z : {0.3, 1.0, 2.5}) {
      ys.push_back(Eigen::VectorXd::Constant(1, y));
      zs.push_back(z);
    }
  auto report = bw_curvature_relation(base, ys, zs);
  EXPECT_LT(report.max_lifted, 1e-5);
  EXPECT_LT(report.max_residual, 1e-5);
  for (const auto& s : report.samples) EXPECT_NEAR(s.base_sc, 4.0, 1e-6);
}

TEST(BwRelation, HeightOneSlice) {
  auto base = PotentialExpr::guillemin(hirzebruch_polytope(2, 1));
  auto ys = interior_grid(base, 8, 1);
  std::vector<double> zs(ys.size(), 1.0);
  auto report = bw_curvature_relation(base, ys, zs);
  for (const auto& s : report.samples) EXPECT_NEAR(s.lifted_sc, s.base_sc - 12.0, 1e-5);
}

TEST(BwRelation, PerturbedSimplex) {
  auto base = perturbed_simplex();
  auto ys = interior_grid(base, 10, 7);
  std::vector<double> zs;
  for (std::size_t i = 0; i < ys.size(); ++i) zs.push_back(0.5 + 0.25 * static_cast<double>(i % 5));
  auto report = bw_curvature_relation(base, ys, zs);
  EXPECT_LT(report.max_residual, 1e-3);
  EXPECT_THROW(bw_curvature_relation(base, ys, std::vector<double>(ys.size(), -1.0)), DomainError);
}

TEST(EinsteinVerify, FlatOrthantPasses) {
  auto s = PotentialExpr::canonical_cone(orthant(3));
  auto report = einstein_verify(s, interior_grid(s, 30, 0), 0.0, 1e-6);
  EXPECT_TRUE(report.verdict);
  EXPECT_GE(report.mean_deviation, 0.0);
  EXPECT_LE(report.mean_deviation, report.max_deviation);
  EXPECT_EQ(report.sc.size(), report.grid.size());
  EXPECT_NE(report.note.find("Ricci curvature is not computed"), std::string::npos);
}

TEST(EinsteinVerify, RectangleFails) {
  // [0,1] x [0,2]: Sc = 4 + 2, not 2n(n+1) = 12
  std::vector<FacetFunctional> f{{{1, 0}, 0}, {{-1, 0}, 1}, {{0, 1}, 0}, {{0, -1}, 2}};
  auto s = PotentialExpr::guillemin(build_polytope(2, f));
  auto report = einstein_verify(s, interior_grid(s, 20, 0), 12.0, 1e-4);
  EXPECT_FALSE(report.verdict);
  EXPECT_NEAR(report.max_deviation, 6.0, 1e-5);
  EXPECT_NEAR(report.mean_deviation, 6.0, 1e-5);
}

TEST(EinsteinVerify, VerdictMatchesTolerance) {
  auto s = PotentialExpr::guillemin(standard_simplex(1));
  auto grid = interior_grid(s, 10, 0);
  auto report = einstein_verify(s, grid, 4.0, 1e-4);
  EXPECT_EQ(report.verdict, report.max_deviation < report.tolerance);
  EXPECT_THROW(einstein_verify(s, {}, 4.0, 1e-4), PreconditionError);
}

TEST(InteriorGrid, ReproducibleAndInside) {
  auto s = calabi::calabi_potential(2, 0.09);
  auto a = interior_grid(s, 25, 42);
  auto b = interior_grid(s, 25, 42);
  ASSERT_EQ(a.size(), 25u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_TRUE(s.contains(a[i]));
  }
  EXPECT_NE(interior_grid(s, 25, 43)[0], a[0]);
}

}  // namespace
}  // namespace toric
