#include "toric/potential.hpp"

#include "oracles.hpp"
#include "toric/calabi.hpp"
#include "toric/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace toric {
namespace {

LabeledPolytope segment() { return standard_simplex(1); }

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x(i++) = d;
  return x;
}

double rel_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

// q(x) = 0.1 |x|^2, smooth everywhere, declared degree two
HomogeneousTerm quadratic(std::size_t dim) {
  HomogeneousTerm t;
  t.name = "0.1|x|^2";
  t.degree = 2.0;
  t.value = [](const Eigen::VectorXd& x) { return 0.1 * x.squaredNorm(); };
  t.gradient = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(0.2 * x); };
  t.hessian = [dim](const Eigen::VectorXd&) {
    return Eigen::MatrixXd(0.2 * Eigen::MatrixXd::Identity(dim, dim));
  };
  return t;
}

struct Variant {
  std::string name;
  PotentialExpr s;
};

std::vector<Variant> variants() {
  auto cone = c_km(2, 1, 1);
  Eigen::MatrixXd t(2, 2);
  t << 2, -1, 0, 1;
  auto pair = hirzebruch_pair(2);
  auto guillemin = PotentialExpr::guillemin(standard_simplex(2));
  std::vector<Variant> out;
  out.push_back({"guillemin", guillemin});
  out.push_back({"canonical_cone", PotentialExpr::canonical_cone(cone)});
  out.push_back({"sb_correction", PotentialExpr::sum({PotentialExpr::canonical_cone(cone),
                                                      PotentialExpr::sb_correction(cone, vec({0.2, 1.1, 3.7}))})});
  out.push_back({"homogeneous", PotentialExpr::sum({guillemin, PotentialExpr::homogeneous(quadratic(2), 2, vec({1, 2}))})});
  out.push_back({"pulled_back", PotentialExpr::pulled_back(PotentialExpr::guillemin(pair.delzant_form), t)});
  out.push_back({"boothby_wang", PotentialExpr::boothby_wang(guillemin)});
  out.push_back({"calabi", calabi::calabi_potential(2, 0.09)});
  return out;
}

TEST(Evaluate, Examples) {
  auto g = PotentialExpr::guillemin(segment());
  EXPECT_NEAR(g.value(vec({0.5})), -std::log(2.0) / 2, 1e-15);
  EXPECT_NEAR(evaluate(PotentialExpr::canonical_cone(orthant(3)), vec({1, 1, 1})), 0.0, 1e-15);
  EXPECT_NEAR(PotentialExpr::boothby_wang(g).value(vec({0.5, 1})), -std::log(2.0) / 2, 1e-15);
}

TEST(Evaluate, BoothbyWangFormula) {
  auto g = PotentialExpr::guillemin(standard_simplex(2));
  auto bw = PotentialExpr::boothby_wang(g);
  for (double z : {0.5, 1.0, 3.0}) {
    Eigen::VectorXd y = vec({0.2, 0.3});
    Eigen::VectorXd x(3);
    x << z * y, z;
    EXPECT_NEAR(bw.value(x), z * g.value(y) + 0.5 * z * std::log(z), 1e-13);
  }
}

TEST(Evaluate, DomainViolations) {
  auto g = PotentialExpr::guillemin(segment());
  EXPECT_THROW(g.value(vec({0.0})), DomainError);
  EXPECT_THROW(g.hessian(vec({1.5})), DomainError);
  EXPECT_THROW(PotentialExpr::boothby_wang(g).value(vec({0.5, -1})), DomainError);
  EXPECT_THROW(g.value(vec({0.5, 0.5})), PreconditionError);
  EXPECT_FALSE(g.contains(vec({1.0})));
  EXPECT_TRUE(g.contains(vec({0.999})));
}

TEST(Hessian, Examples) {
  auto g = PotentialExpr::guillemin(segment());
  for (double x : {0.1, 0.5, 0.8}) EXPECT_NEAR(g.hessian(vec({x}))(0, 0), 1 / (2 * x * (1 - x)), 1e-12);
  EXPECT_NEAR(g.hessian(vec({0.5}))(0, 0), 2.0, 1e-14);

  auto c = PotentialExpr::canonical_cone(orthant(3));
  Eigen::Vector3d x(0.3, 1.7, 2.5);
  Eigen::Matrix3d expected = Eigen::Vector3d(1 / 0.6, 1 / 3.4, 1 / 5.0).asDiagonal();
  EXPECT_LT((c.hessian(x) - expected).cwiseAbs().maxCoeff(), 1e-14);

  auto id = PotentialExpr::pulled_back(c, Eigen::MatrixXd::Identity(3, 3));
  EXPECT_LT((id.hessian(x) - c.hessian(x)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Hessian, AnalyticDerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(2);
  for (const auto& [name, s] : variants()) {
    for (const auto& x : sample_interior(s.domain(), s.dim(), 6, rng())) {
      auto grad_fd = oracle::fd_gradient([&](const Eigen::VectorXd& y) { return s.value(y); }, x);
      EXPECT_LT(rel_error(s.gradient(x), grad_fd), 1e-6) << name;
      auto hess_fd = oracle::fd_jacobian([&](const Eigen::VectorXd& y) { return s.gradient(y); }, x);
      EXPECT_LT(rel_error(s.hessian(x), hess_fd), 1e-6) << name;
      Eigen::MatrixXd h = s.hessian(x);
      EXPECT_LT((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-12) << name;
      EXPECT_TRUE(hessian(s, x).positive_definite) << name;
    }
  }
}

TEST(Hessian, PulledBackChainRule) {
  auto base = PotentialExpr::guillemin(hirzebruch_pair(2).delzant_form);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    auto u = oracle::random_unimodular(2, rng, 4);
    Eigen::MatrixXd t(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) t(i, j) = u(i, j).convert_to<double>();
    auto pulled = PotentialExpr::pulled_back(base, t);
    for (const auto& x : sample_interior(pulled.domain(), 2, 5, trial)) {
      Eigen::MatrixXd expected = t.transpose() * base.hessian(t * x) * t;
      EXPECT_LT(rel_error(pulled.hessian(x), expected), 1e-10);
    }
  }
  Eigen::MatrixXd singular(2, 2);
  singular << 1, 2, 2, 4;
  EXPECT_THROW(PotentialExpr::pulled_back(base, singular), SingularMatrixError);
}

TEST(ReebVector, CanonicalCones) {
  for (int n = 1; n <= 3; ++n) {
    auto s = PotentialExpr::canonical_cone(orthant(n + 1));
    for (const auto& x : sample_interior(s.domain(), s.dim(), 5, n))
      EXPECT_LT((reeb_vector(s, x) - Eigen::VectorXd::Ones(n + 1)).cwiseAbs().maxCoeff(), 1e-12);
    auto simplex = PotentialExpr::canonical_cone(standard_cone(standard_simplex(n)));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n + 1);
    e(n) = 1;
    for (const auto& x : sample_interior(simplex.domain(), simplex.dim(), 5, n))
      EXPECT_LT((reeb_vector(simplex, x) - e).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ReebVector, SbCorrectionGivesConstantB) {
  std::mt19937_64 rng(4);
  for (const auto& cone : {c_km(2, 1, 1), c_km(2, 2, 3), c_km(3, 1, 2), orthant(3)}) {
    auto rays = cone.rays();
    for (int trial = 0; trial < 3; ++trial) {
      // b = positive combination of the dual generators (the normals)
      Eigen::VectorXd b = Eigen::VectorXd::Zero(cone.dim());
      std::uniform_real_distribution<double> w(0.2, 2.0);
      for (const auto& nu : cone.normals())
        for (std::size_t i = 0; i < cone.dim(); ++i) b(i) += w(rng) * nu[i].convert_to<double>();
      ASSERT_TRUE(reeb_admissible(cone, b));
      auto s = PotentialExpr::sum({PotentialExpr::canonical_cone(cone), PotentialExpr::sb_correction(cone, b)});
      auto points = sample_interior(s.domain(), s.dim(), 12, rng());
      ASSERT_GE(points.size(), 10u);
      for (const auto& x : points) EXPECT_LT((reeb_vector(s, x) - b).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(ReebVector, BoothbyWangLiftIsVertical) {
  for (const auto& p : {standard_simplex(2), hirzebruch_polytope(2, 1), hirzebruch_polytope(3, 1)}) {
    auto lift = PotentialExpr::boothby_wang(PotentialExpr::guillemin(p));
    Eigen::VectorXd e = Eigen::VectorXd::Zero(lift.dim());
    e(e.size() - 1) = 1;
    for (const auto& x : sample_interior(lift.domain(), lift.dim(), 10, 3))
      EXPECT_LT((reeb_vector(lift, x) - e).cwiseAbs().maxCoeff(), 1e-10);
  }
  auto calabi_lift = PotentialExpr::boothby_wang(calabi::calabi_potential(2, 0.09));
  for (const auto& x : sample_interior(calabi_lift.domain(), 3, 5, 1))
    EXPECT_LT((reeb_vector(calabi_lift, x) - Eigen::Vector3d(0, 0, 1)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Homogeneity, Defect) {
  auto s = PotentialExpr::canonical_cone(c_km(2, 1, 1));
  Eigen::Vector3d x(0.1, 0.3, 1.0);
  ASSERT_TRUE(s.contains(x));
  EXPECT_EQ(homogeneity_defect(s, x, 0.0), 0.0);
  EXPECT_LE(homogeneity_defect(s, x, 0.3), 1e-10);
  // a polytope potential is not homogeneous
  auto g = PotentialExpr::guillemin(standard_simplex(2));
  EXPECT_GT(homogeneity_defect(g, vec({0.1, 0.1}), 0.1), 1e-2);
}

TEST(Homogeneity, EulerCheckAtConstruction) {
  auto t = quadratic(2);
  t.degree = 1.0;
  EXPECT_THROW(PotentialExpr::homogeneous(t, 2, vec({1, 2})), PreconditionError);
}

TEST(BoundaryScan, GuilleminSegmentLimitIsOneHalf) {
  auto seg = segment();
  auto report = boundary_validity_scan(PotentialExpr::guillemin(seg), RealPolytope::from_exact(seg));
  EXPECT_TRUE(report.all_converged);
  ASSERT_FALSE(report.paths.empty());
  for (const auto& path : report.paths) {
    EXPECT_NEAR(path.limit, 0.5, 1e-9);
    for (double v : path.products) EXPECT_NEAR(v, 0.5, 1e-9);
  }
}

TEST(BoundaryScan, SmoothPerturbationKeepsLimitsPositive) {
  auto p = standard_simplex(2);
  auto s = PotentialExpr::sum({PotentialExpr::guillemin(p), PotentialExpr::homogeneous(quadratic(2), 2, vec({1, 2}))});
  auto report = boundary_validity_scan(s, RealPolytope::from_exact(p));
  EXPECT_TRUE(report.all_converged);
  for (const auto& path : report.paths) EXPECT_GT(path.limit, 0.0);
}

TEST(BoundaryScan, WrongBoundaryBehaviourIsFlagged) {
  // the potential of a larger triangle is smooth across the hypotenuse of the
  // standard one, so Det(S) * prod ell tends to zero there
  std::vector<FacetFunctional> facets{{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 2}};
  auto big = build_polytope(2, facets);
  auto p = standard_simplex(2);
  auto report = boundary_validity_scan(PotentialExpr::guillemin(big), RealPolytope::from_exact(p));
  EXPECT_FALSE(report.all_converged);
}

TEST(BoundaryScan, CanonicalConePotential) {
  auto c = c_km(2, 1, 1);
  EXPECT_TRUE(boundary_validity_scan(PotentialExpr::canonical_cone(c), c).all_converged);
}

TEST(Restrict, BoothbyWangAtHeightOne) {
  auto g = PotentialExpr::guillemin(hirzebruch_polytope(2, 1));
  auto back = restrict_to_height(PotentialExpr::boothby_wang(g), 1.0);
  for (const auto& x : sample_interior(g.domain(), 2, 10, 9)) {
    EXPECT_NEAR(back.value(x), g.value(x), 1e-13);
    EXPECT_LT((back.hessian(x) - g.hessian(x)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Restrict, CanonicalConeOverSimplexGivesGuillemin) {
  for (int n = 1; n <= 3; ++n) {
    auto p = standard_simplex(n);
    auto c = standard_cone(p);
    auto r = restrict_to_slice(PotentialExpr::canonical_cone(c), c, p);
    auto g = PotentialExpr::guillemin(p);
    for (const auto& x : sample_interior(g.domain(), g.dim(), 10, n)) {
      EXPECT_NEAR(r.value(x), g.value(x), 1e-13);
      EXPECT_LT((r.hessian(x) - g.hessian(x)).cwiseAbs().maxCoeff(), 1e-11);
    }
  }
  EXPECT_THROW(restrict_to_slice(PotentialExpr::canonical_cone(orthant(3)), orthant(3), standard_simplex(2)),
               PreconditionError);
}

TEST(Restrict, LiftOfCorrectedPotentialIsCanonicalPlusSb) {
  // s = s_P - 1/2 l_inf log l_inf with l_inf = sum of the facet functionals;
  // the second term is s_b restricted to height one for b = (0, ..., 0, 1)
  auto p = hirzebruch_polytope(2, 1);
  auto c = standard_cone(p);
  Eigen::Vector3d b(0, 0, 1);
  auto sb = PotentialExpr::sb_correction(c, b);
  auto s = PotentialExpr::sum({PotentialExpr::guillemin(p), restrict_to_slice(sb, c, p)});
  auto lift = PotentialExpr::boothby_wang(s);
  auto expected = PotentialExpr::sum({PotentialExpr::canonical_cone(c), sb});
  for (const auto& x : sample_interior(lift.domain(), 3, 15, 21)) {
    ASSERT_TRUE(expected.contains(x));
    EXPECT_NEAR(lift.value(x), expected.value(x), 1e-12);
    EXPECT_LT(rel_error(lift.hessian(x), expected.hessian(x)), 1e-11);
  }
  // l_inf really is the sum of the facet functionals
  for (const auto& y : sample_interior(p.real_forms(), 2, 5, 1)) {
    double l_inf = 0;
    for (const auto& f : p.real_forms()) l_inf += f(y);
    double term = restrict_to_slice(sb, c, p).value(y);
    EXPECT_NEAR(term, -0.5 * l_inf * std::log(l_inf), 1e-13);
  }
}

TEST(Calabi, AffineAmbiguityFlag) {
  EXPECT_TRUE(calabi::calabi_potential(2, 0.09).affine_ambiguous());
  EXPECT_FALSE(PotentialExpr::guillemin(segment()).affine_ambiguous());
}

}  // namespace
}  // namespace toric
