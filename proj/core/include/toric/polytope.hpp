#pragma once

// Labeled polytopes P = { x : ell_r(x) = <x, nu_r> + lambda_r >= 0 } in R^n.
// A facet label m_r is carried only by the length of the stored normal
// (nu_r = m_r * primitive normal), never as a separate field.

#include "toric/latlin.hpp"
#include "toric/polyhedral.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace toric {

struct FacetFunctional {
  latlin::RatVector normal;
  latlin::Rational offset;

  latlin::Rational operator()(std::span<const latlin::Rational> x) const;
  double operator()(const Eigen::VectorXd& x) const;
  AffineForm to_real() const;

  friend bool operator==(const FacetFunctional&, const FacetFunctional&) = default;
};

enum class PolytopeDefect { Malformed, Unbounded, NotSimple, RedundantFacet, EmptyInterior };

std::string to_string(PolytopeDefect d);

class InvalidPolytope : public std::invalid_argument {
 public:
  InvalidPolytope(PolytopeDefect defect, const std::string& what)
      : std::invalid_argument(what), defect_(defect) {}
  PolytopeDefect defect() const { return defect_; }

 private:
  PolytopeDefect defect_;
};

/// Bounded, full-dimensional, simple, rational polytope with exact vertices.
/// Only build_polytope() creates instances, so every value is certified.
class LabeledPolytope {
 public:
  std::size_t dim() const { return dim_; }
  const std::vector<FacetFunctional>& facets() const { return facets_; }
  const std::vector<latlin::RatVector>& vertices() const { return vertices_; }
  /// Indices of the facets through vertex v (exactly dim() of them).
  const std::vector<std::size_t>& active_facets(std::size_t v) const { return active_[v]; }

  std::vector<AffineForm> real_forms() const;
  Eigen::VectorXd centroid() const;

  friend bool operator==(const LabeledPolytope& a, const LabeledPolytope& b) {
    return a.dim_ == b.dim_ && a.facets_ == b.facets_;
  }

 private:
  friend LabeledPolytope build_polytope(std::size_t dim, std::vector<FacetFunctional> facets);

  std::size_t dim_ = 0;
  std::vector<FacetFunctional> facets_;
  std::vector<latlin::RatVector> vertices_;
  std::vector<std::vector<std::size_t>> active_;
};

/// Certifies boundedness, full dimension, simplicity and irredundancy;
/// throws InvalidPolytope naming the first defect found.
LabeledPolytope build_polytope(std::size_t dim, std::vector<FacetFunctional> facets);

/// x in the open interior, i.e. ell_r(x) > 0 for every facet (exact).
bool interior_contains(const LabeledPolytope& p, std::span<const latlin::Rational> x);
bool interior_contains(const LabeledPolytope& p, const Eigen::VectorXd& x);

/// Given P' and an invertible T, returns P = T^{-1}(P') with normals
/// nu_a = T^t nu'_a and offsets lambda_a = lambda'_a.
LabeledPolytope transform_polytope(const LabeledPolytope& target, const latlin::RatMatrix& t);

/// P(m) subset R^n, 0 < m < n: the Hirzebruch polytope with offsets 1 and
/// normals e_i (i < n), (m+1)e_n - d, e_n, -e_n.
LabeledPolytope hirzebruch_polytope(int n, int m);

/// { x_i >= 0, 1 - sum x_i >= 0 } in R^n.
LabeledPolytope standard_simplex(int n);

/// The two descriptions of the Hirzebruch surface H_m related by
/// T = [[m, -1], [0, 1]]: a Calabi-type trapezoid with 1/m-labelled slanted
/// facets, and the standard Delzant trapezoid with delzant = T^{-1}(calabi).
struct HirzebruchPair {
  LabeledPolytope calabi_form;
  LabeledPolytope delzant_form;
  latlin::RatMatrix map;
};
HirzebruchPair hirzebruch_pair(int m);

/// Primitive integral normals and a Z-basis of normals at every vertex.
bool is_delzant(const LabeledPolytope& p);
/// Delzant with integral vertices.
bool is_integral_delzant(const LabeledPolytope& p);

/// Floating-point polytope, used where data is irrational (P_A, slices of
/// cones by irrational Reeb hyperplanes).
struct RealPolytope {
  std::size_t dim = 0;
  std::vector<AffineForm> forms;
  std::vector<Eigen::VectorXd> vertices;
  bool rational = false;

  static RealPolytope from_forms(std::size_t dim, std::vector<AffineForm> forms, bool rational);
  static RealPolytope from_exact(const LabeledPolytope& p);

  bool interior_contains(const Eigen::VectorXd& x) const;
  Eigen::VectorXd centroid() const;
};

}  // namespace toric
