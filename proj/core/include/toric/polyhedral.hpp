#pragma once

// Brute-force polyhedral primitives shared by the polytope and cone modules.
// Everything here enumerates subsets of constraints, so it is meant for the
// handful of facets (d <= ~12) that toric examples have.

#include "toric/latlin.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace toric {

/// Calls fn with every k-subset of {0, ..., n-1} in lexicographic order.
void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(std::span<const std::size_t>)>& fn);

/// Extreme rays of {x : <nu_a, x> >= 0 for all a}.
struct RayEnumeration {
  std::vector<latlin::IntVector> rays;  ///< primitive, sorted, deduplicated
  bool pointed = false;                 ///< normals span the ambient space
};
RayEnumeration extreme_rays(std::span<const latlin::RatVector> normals, std::size_t dim);

/// ell(x) = <normal, x> + offset in floating point.
struct AffineForm {
  Eigen::VectorXd normal;
  double offset = 0.0;

  double operator()(const Eigen::VectorXd& x) const { return normal.dot(x) + offset; }
};

/// Vertices of {x : ell_r(x) >= 0} by solving every n-subset; a candidate is
/// kept when every form is >= -tol * scale. Duplicates within tol are merged.
std::vector<Eigen::VectorXd> real_vertices(std::span<const AffineForm> forms, std::size_t dim,
                                           double tol = 1e-9);

/// Extreme rays (unit length) of {x : <nu, x> >= 0} for offset-free forms.
std::vector<Eigen::VectorXd> real_rays(std::span<const AffineForm> forms, std::size_t dim,
                                       double tol = 1e-9);

/// Reproducible interior sample of {x : ell_r(x) > 0}. Bounded regions use
/// Dirichlet(1) combinations of the vertices; cones (all offsets zero) use
/// combinations of unit rays scaled by a factor in [0.5, 2]. Points are pulled
/// towards the centroid, x <- shrink x + (1 - shrink) centroid.
std::vector<Eigen::VectorXd> sample_interior(std::span<const AffineForm> forms, std::size_t dim, std::size_t count,
                                             std::uint64_t seed, double shrink = 0.9);

}  // namespace toric
