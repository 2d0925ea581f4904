#pragma once

// Moment cones C = { x in R^{n+1} : <x, nu_a> >= 0 } with primitive integer
// normals, goodness certificates, and the C(k,m) / Y^{p,q} families.

#include "toric/latlin.hpp"
#include "toric/polyhedral.hpp"
#include "toric/polytope.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toric {

/// Strongly convex, full-dimensional cone with a minimal set of primitive
/// normals. Only build_cone() creates instances.
class MomentCone {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<latlin::IntVector>& normals() const { return normals_; }
  /// Primitive generating edges eta_alpha, sorted.
  const std::vector<latlin::IntVector>& rays() const { return rays_; }

  latlin::IntMatrix normal_matrix() const;
  std::vector<AffineForm> real_forms() const;
  /// Canonical Reeb vector K_C = sum of the normals.
  latlin::IntVector canonical_reeb() const;

  /// Same normal set, order ignored.
  bool same_normals(const MomentCone& other) const;

 private:
  friend MomentCone build_cone(std::vector<latlin::IntVector> normals);

  std::size_t dim_ = 0;
  std::vector<latlin::IntVector> normals_;
  std::vector<latlin::IntVector> rays_;
};

enum class ConeDefect { Malformed, NonPrimitiveNormal, NotStronglyConvex, NotFullDimensional, RedundantNormal };

std::string to_string(ConeDefect d);

class InvalidCone : public std::invalid_argument {
 public:
  InvalidCone(ConeDefect defect, const std::string& what) : std::invalid_argument(what), defect_(defect) {}
  ConeDefect defect() const { return defect_; }

 private:
  ConeDefect defect_;
};

MomentCone build_cone(std::vector<latlin::IntVector> normals);

struct FaceWitness {
  std::vector<std::size_t> facets;  ///< every facet containing the face
  std::size_t codim = 0;
  latlin::IntVector invariant_factors;  ///< Smith invariant factors of those normals
  bool ok = false;                      ///< facets.size() == codim and factors all 1
};

struct GoodnessCertificate {
  bool verdict = false;
  std::vector<FaceWitness> faces;  ///< faces of codimension 1..n, ordered by (codim, facets)
  std::optional<std::size_t> failing_face;
};

GoodnessCertificate is_good(const MomentCone& c);

/// Normals of C* are the primitive rays of C.
MomentCone dual_cone(const MomentCone& c);

/// Cone over P at height one; facet normals (nu_a, lambda_a) made primitive.
MomentCone standard_cone(const LabeledPolytope& p);
/// Unscaled forms (nu_a, lambda_a) of the standard cone. Potentials built on
/// these restrict exactly to the Guillemin potential of P at height one.
std::vector<AffineForm> standard_cone_forms(const LabeledPolytope& p);
std::vector<AffineForm> standard_cone_forms(const RealPolytope& p);

/// C(k, m) subset R^{n+1}: n >= 2, k >= 1, 0 <= m < kn.
MomentCone c_km(int n, int k, int m);
/// Y^{p,q} moment cone, 0 < q < p.
MomentCone c_pq(int p, int q);
/// Orthant R^{dim}_{>=0}.
MomentCone orthant(std::size_t dim);

enum class MapDirection { OnNormals, TransposeOnNormals };
std::string to_string(MapDirection d);

struct LinearEquivalence {
  latlin::RatMatrix map;
  MapDirection direction = MapDirection::OnNormals;
  /// pairing[i] = index in the target cone of the image of normal i.
  std::vector<std::size_t> pairing;
};

/// T_{k,m} = [[0,0,1],[k-m-1,-1,k],[k-m,-1,k]] acting directly on normals.
LinearEquivalence t_km(int k, int m);

struct EquivalenceCheck {
  bool equivalent = false;
  std::optional<MapDirection> direction;  ///< convention that succeeded
  std::vector<std::size_t> pairing;
};

/// Exact check that T (or T^t) maps the normals of `from` bijectively onto
/// the normals of `to`. Without a direction both conventions are tried.
EquivalenceCheck verify_equivalence(const MomentCone& from, const MomentCone& to, const latlin::RatMatrix& t,
                                    std::optional<MapDirection> direction = std::nullopt);

/// b in the interior of C*: <eta, b> > 0 for every ray.
bool reeb_admissible(const MomentCone& c, const Eigen::VectorXd& b);

/// Slice of C by <x, b> = 1/2, in coordinates that drop the entry of b with
/// the largest magnitude. Vertices are also reported in ambient coordinates.
struct CharacteristicPolytope {
  RealPolytope slice;
  std::size_t eliminated = 0;
  std::vector<Eigen::VectorXd> ambient_vertices;
  bool rational = false;
  Eigen::VectorXd lift(const Eigen::VectorXd& y) const;
  Eigen::VectorXd b;
};
CharacteristicPolytope characteristic_polytope(const MomentCone& c, const Eigen::VectorXd& b);
/// Real-data variant (C given by forms, e.g. C_A); rays enumerated in floats.
CharacteristicPolytope characteristic_polytope(std::span<const AffineForm> cone_forms, std::size_t dim,
                                               const Eigen::VectorXd& b);

enum class Regularity { Regular, QuasiRegular, Irregular };
std::string to_string(Regularity r);

/// Rational approximation p/q with q <= max_denominator via continued
/// fractions, accepted when |x - p/q| <= tol. Every real has convergents
/// within ~1/q^2, so tol * max_denominator^2 must stay well below 1 or
/// irrational inputs get recognized; such calls throw PreconditionError.
std::optional<latlin::Rational> recognize_rational(double x, long max_denominator = 10'000, double tol = 1e-11);

/// Reeb regularity on a good cone: irrational direction -> irregular;
/// otherwise with w the primitive integer multiple of b, regular iff
/// <w, eta> = 1 for every ray (the generated circle acts freely).
Regularity classify_reeb(const MomentCone& c, const Eigen::VectorXd& b);
Regularity classify_reeb(const MomentCone& c, std::span<const latlin::Rational> b);

}  // namespace toric
