#pragma once

// Symplectic potentials as immutable expression trees. Every node evaluates
// its value, gradient and Hessian analytically on an open domain given by
// affine forms ell > 0; composite nodes use the chain rule.

#include "toric/cone.hpp"
#include "toric/polyhedral.hpp"
#include "toric/polytope.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace toric {

enum class PotentialKind {
  Guillemin,      ///< 1/2 sum ell_r log ell_r over a polytope
  CanonicalCone,  ///< 1/2 sum ell_a log ell_a over a cone
  SbCorrection,   ///< 1/2 (<x,b> log <x,b> - <x,K_C> log <x,K_C>)
  Homogeneous1,   ///< user-supplied degree-1 term
  Sum,
  PulledBack,     ///< s(x) = base(T x + shift)
  BoothbyWang,    ///< z s(x/z) + 1/2 z log z
  CalabiFamily,
};

std::string to_string(PotentialKind k);

/// Callbacks for a term h that is homogeneous of degree one on a cone.
struct HomogeneousTerm {
  std::string name;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
  double degree = 1.0;
};

struct HessianSample {
  Eigen::VectorXd point;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  bool positive_definite = false;
};

class PotentialExpr {
 public:
  struct Node;

  static PotentialExpr guillemin(const LabeledPolytope& p);
  static PotentialExpr guillemin(const RealPolytope& p);
  static PotentialExpr canonical_cone(const MomentCone& c);
  /// Canonical potential on a cone given by (possibly non-primitive, real) forms.
  static PotentialExpr canonical_cone(std::size_t dim, std::vector<AffineForm> forms);
  static PotentialExpr sb_correction(const MomentCone& c, const Eigen::VectorXd& b);
  static PotentialExpr sb_correction(std::size_t dim, std::vector<AffineForm> cone_forms, const Eigen::VectorXd& b);
  /// Verifies the declared degree through the Euler relation <x, grad h> =
  /// degree * h at `probe` (tolerance 1e-8, relative).
  static PotentialExpr homogeneous(HomogeneousTerm term, std::size_t dim, const Eigen::VectorXd& probe,
                                   std::vector<AffineForm> domain = {});
  static PotentialExpr sum(std::vector<PotentialExpr> terms);
  /// s(x) = base(T x + shift); T is (base dim) x (new dim).
  static PotentialExpr pulled_back(PotentialExpr base, Eigen::MatrixXd t,
                                   std::optional<Eigen::VectorXd> shift = std::nullopt);
  static PotentialExpr boothby_wang(PotentialExpr base);
  static PotentialExpr calabi(int n, double a_param);

  PotentialKind kind() const;
  std::size_t dim() const;
  /// Open domain { x : ell(x) > 0 for every form }.
  const std::vector<AffineForm>& domain() const;
  bool conic() const;
  bool contains(const Eigen::VectorXd& x) const;
  /// True when value/gradient are only defined up to an affine term
  /// (Calabi potentials integrate h_A'' numerically).
  bool affine_ambiguous() const;

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

  const Node& node() const { return *node_; }

 private:
  explicit PotentialExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  void require_domain(const Eigen::VectorXd& x) const;

  std::shared_ptr<const Node> node_;
};

/// Variant payloads, exposed for serialization.
struct PotentialExpr::Node {
  PotentialKind kind;
  std::size_t dim = 0;
  std::vector<AffineForm> domain;

  // Guillemin / CanonicalCone / SbCorrection
  std::vector<AffineForm> forms;
  std::optional<LabeledPolytope> polytope;
  std::optional<MomentCone> cone;
  Eigen::VectorXd b;
  Eigen::VectorXd canonical_reeb;

  // Homogeneous1
  std::optional<HomogeneousTerm> homogeneous;

  // Sum / PulledBack / BoothbyWang
  std::vector<PotentialExpr> children;
  Eigen::MatrixXd map;
  Eigen::VectorXd shift;

  // CalabiFamily
  int calabi_n = 0;
  double calabi_a_param = 0.0;
  double root_a = 0.0;
  double root_b = 0.0;
};

double evaluate(const PotentialExpr& s, const Eigen::VectorXd& x);
Eigen::VectorXd gradient(const PotentialExpr& s, const Eigen::VectorXd& x);
HessianSample hessian(const PotentialExpr& s, const Eigen::VectorXd& x);

/// b(x) = 2 S(x) x for potentials on cones.
Eigen::VectorXd reeb_vector(const PotentialExpr& s, const Eigen::VectorXd& x);

/// max |S(e^{2t} x) - e^{-2t} S(x)|.
double homogeneity_defect(const PotentialExpr& s, const Eigen::VectorXd& x, double t);

/// One inward path towards a face: products Det(S) * prod ell_r at
/// x_k = target + t_k (reference - target), t_k = 10^{-k}.
struct BoundaryPath {
  std::vector<std::size_t> face_facets;
  Eigen::VectorXd target;
  std::vector<double> t;
  std::vector<double> products;
  double limit = 0.0;
  bool converged = false;
};

struct BoundaryScanReport {
  std::vector<BoundaryPath> paths;
  bool all_converged = false;
};

/// Necessary-condition sampler for the boundary behaviour
/// Det(S) = (delta * prod ell_r)^{-1}, delta > 0: along each path the product
/// must stay finite and positive and settle (relative change < 1e-3).
BoundaryScanReport boundary_validity_scan(const PotentialExpr& s, const RealPolytope& p, std::size_t samples = 8);
BoundaryScanReport boundary_validity_scan(const PotentialExpr& s, const MomentCone& c, std::size_t samples = 8);

/// s(x) = s~(x, height); no check on the cone.
PotentialExpr restrict_to_height(const PotentialExpr& lifted, double height = 1.0);
/// Restriction to P at height one; requires C == standard_cone(P).
PotentialExpr restrict_to_slice(const PotentialExpr& lifted, const MomentCone& c, const LabeledPolytope& p);

}  // namespace toric
