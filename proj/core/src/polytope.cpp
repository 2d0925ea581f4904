#include "toric/polytope.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <set>

namespace toric {

using latlin::Integer;
using latlin::IntVector;
using latlin::Rational;
using latlin::RatMatrix;
using latlin::RatVector;

Rational FacetFunctional::operator()(std::span<const Rational> x) const {
  return latlin::dot(normal, x) + offset;
}

double FacetFunctional::operator()(const Eigen::VectorXd& x) const { return to_real()(x); }

AffineForm FacetFunctional::to_real() const {
  AffineForm f;
  f.normal.resize(static_cast<Eigen::Index>(normal.size()));
  for (std::size_t i = 0; i < normal.size(); ++i)
    f.normal(static_cast<Eigen::Index>(i)) = normal[i].convert_to<double>();
  f.offset = offset.convert_to<double>();
  return f;
}

std::string to_string(PolytopeDefect d) {
  switch (d) {
    case PolytopeDefect::Malformed: return "malformed";
    case PolytopeDefect::Unbounded: return "unbounded";
    case PolytopeDefect::NotSimple: return "not simple";
    case PolytopeDefect::RedundantFacet: return "redundant facet";
    case PolytopeDefect::EmptyInterior: return "empty interior";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(PolytopeDefect d, const std::string& detail) {
  throw InvalidPolytope(d, to_string(d) + ": " + detail);
}

}  // namespace

LabeledPolytope build_polytope(std::size_t dim, std::vector<FacetFunctional> facets) {
  if (dim == 0) fail(PolytopeDefect::Malformed, "dimension must be positive");
  if (facets.size() < dim + 1)
    fail(PolytopeDefect::Malformed, "need at least dim+1 facets, got " + std::to_string(facets.size()));
  for (std::size_t r = 0; r < facets.size(); ++r) {
    const auto& nu = facets[r].normal;
    if (nu.size() != dim) fail(PolytopeDefect::Malformed, "facet " + std::to_string(r) + " has wrong dimension");
    if (std::all_of(nu.begin(), nu.end(), [](const Rational& q) { return q == 0; }))
      fail(PolytopeDefect::Malformed, "facet " + std::to_string(r) + " has zero normal");
  }

  std::vector<RatVector> normals;
  for (const auto& f : facets) normals.push_back(f.normal);
  auto recession = extreme_rays(normals, dim);
  if (!recession.pointed || !recession.rays.empty())
    fail(PolytopeDefect::Unbounded, "recession cone is not {0}");

  LabeledPolytope p;
  p.dim_ = dim;
  p.facets_ = std::move(facets);

  std::set<RatVector> seen;
  for_each_combination(p.facets_.size(), dim, [&](std::span<const std::size_t> subset) {
    RatMatrix aug(dim, dim + 1);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t j = 0; j < dim; ++j) aug(r, j) = p.facets_[subset[r]].normal[j];
      aug(r, dim) = p.facets_[subset[r]].offset;
    }
    // [N | lambda] (x, 1) = 0 has a one-dimensional kernel with last entry != 0
    auto kernel = latlin::nullspace(aug);
    if (kernel.size() != 1 || kernel.front()[dim] == 0) return;
    RatVector x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = kernel.front()[j] / kernel.front()[dim];
    for (const auto& f : p.facets_)
      if (f(x) < 0) return;
    if (seen.insert(x).second) p.vertices_.push_back(std::move(x));
  });
  if (p.vertices_.empty()) fail(PolytopeDefect::EmptyInterior, "no vertices");

  RatVector centre(dim);
  for (const auto& v : p.vertices_)
    for (std::size_t j = 0; j < dim; ++j) centre[j] += v[j];
  for (auto& c : centre) c /= static_cast<long>(p.vertices_.size());
  if (!interior_contains(p, centre)) fail(PolytopeDefect::EmptyInterior, "polytope is not full-dimensional");

  for (std::size_t v = 0; v < p.vertices_.size(); ++v) {
    std::vector<std::size_t> active;
    for (std::size_t r = 0; r < p.facets_.size(); ++r)
      if (p.facets_[r](p.vertices_[v]) == 0) active.push_back(r);
    if (active.size() != dim)
      fail(PolytopeDefect::NotSimple, "vertex " + std::to_string(v) + " lies on " +
                                          std::to_string(active.size()) + " facets");
    p.active_.push_back(std::move(active));
  }

  // a facet is irredundant iff its vertices affinely span a hyperplane
  for (std::size_t r = 0; r < p.facets_.size(); ++r) {
    std::vector<RatVector> on_facet;
    for (std::size_t v = 0; v < p.vertices_.size(); ++v)
      if (std::find(p.active_[v].begin(), p.active_[v].end(), r) != p.active_[v].end())
        on_facet.push_back(p.vertices_[v]);
    std::size_t affine_rank = 0;
    if (!on_facet.empty()) {
      std::vector<RatVector> diffs;
      for (std::size_t i = 1; i < on_facet.size(); ++i) {
        RatVector d(dim);
        for (std::size_t j = 0; j < dim; ++j) d[j] = on_facet[i][j] - on_facet[0][j];
        diffs.push_back(std::move(d));
      }
      affine_rank = diffs.empty() ? 0 : latlin::rank(RatMatrix::from_rows(diffs, dim));
    }
    if (on_facet.empty() || affine_rank + 1 != dim)
      fail(PolytopeDefect::RedundantFacet, "facet " + std::to_string(r) + " does not support a facet");
  }
  return p;
}

std::vector<AffineForm> LabeledPolytope::real_forms() const {
  std::vector<AffineForm> out;
  for (const auto& f : facets_) out.push_back(f.to_real());
  return out;
}

Eigen::VectorXd LabeledPolytope::centroid() const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  for (const auto& v : vertices_)
    for (std::size_t j = 0; j < dim_; ++j) c(static_cast<Eigen::Index>(j)) += v[j].convert_to<double>();
  return c / static_cast<double>(vertices_.size());
}

bool interior_contains(const LabeledPolytope& p, std::span<const Rational> x) {
  if (x.size() != p.dim()) throw PreconditionError("point dimension does not match polytope");
  return std::all_of(p.facets().begin(), p.facets().end(),
                     [&](const FacetFunctional& f) { return f(x) > 0; });
}

bool interior_contains(const LabeledPolytope& p, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != p.dim())
    throw PreconditionError("point dimension does not match polytope");
  // every double is a dyadic rational, so this comparison is exact
  RatVector q;
  for (Eigen::Index i = 0; i < x.size(); ++i) q.emplace_back(x(i));
  return interior_contains(p, q);
}

LabeledPolytope transform_polytope(const LabeledPolytope& target, const RatMatrix& t) {
  if (t.rows() != target.dim() || t.cols() != target.dim())
    throw PreconditionError("transform dimension does not match polytope");
  if (latlin::determinant(t) == 0) throw SingularMatrixError("transform matrix is singular");
  RatMatrix tt = t.transpose();
  std::vector<FacetFunctional> facets;
  for (const auto& f : target.facets()) facets.push_back({tt * f.normal, f.offset});
  return build_polytope(target.dim(), std::move(facets));
}

namespace {

RatVector unit(std::size_t dim, std::size_t i, long scale = 1) {
  RatVector v(dim);
  v[i] = scale;
  return v;
}

}  // namespace

LabeledPolytope hirzebruch_polytope(int n, int m) {
  if (n < 2 || m <= 0 || m >= n)
    throw PreconditionError("hirzebruch_polytope requires n >= 2 and 0 < m < n");
  const auto dim = static_cast<std::size_t>(n);
  std::vector<FacetFunctional> facets;
  for (std::size_t i = 0; i + 1 < dim; ++i) facets.push_back({unit(dim, i), 1});
  RatVector nu_n(dim, Rational(-1));
  nu_n[dim - 1] = m;  // (m+1) e_n - d
  facets.push_back({nu_n, 1});
  facets.push_back({unit(dim, dim - 1), 1});
  facets.push_back({unit(dim, dim - 1, -1), 1});
  return build_polytope(dim, std::move(facets));
}

LabeledPolytope standard_simplex(int n) {
  if (n < 1) throw PreconditionError("simplex dimension must be positive");
  const auto dim = static_cast<std::size_t>(n);
  std::vector<FacetFunctional> facets;
  for (std::size_t i = 0; i < dim; ++i) facets.push_back({unit(dim, i), 0});
  facets.push_back({RatVector(dim, Rational(-1)), 1});
  return build_polytope(dim, std::move(facets));
}

HirzebruchPair hirzebruch_pair(int m) {
  if (m < 1) throw PreconditionError("Hirzebruch index must be positive");
  // {x1 >= 0, x2 >= 0, m <= x1 + x2 <= 2m}; the slanted facets carry normals
  // +-(1/m)(1,1) so that T^t maps them to the primitive normals +-e_1.
  Rational inv_m(1, m);
  std::vector<FacetFunctional> calabi{
      {{1, 0}, 0},
      {{0, 1}, 0},
      {{inv_m, inv_m}, -1},
      {{-inv_m, -inv_m}, 2},
  };
  RatMatrix t{{Rational(m), Rational(-1)}, {Rational(0), Rational(1)}};
  auto left = build_polytope(2, std::move(calabi));
  auto standard = transform_polytope(left, t);
  return {std::move(left), std::move(standard), std::move(t)};
}

bool is_delzant(const LabeledPolytope& p) {
  std::vector<IntVector> normals;
  for (const auto& f : p.facets()) {
    if (latlin::lcm_of_denominators(f.normal) != 1) return false;
    IntVector nu;
    for (const auto& q : f.normal) nu.push_back(numerator(q));
    if (latlin::gcd(nu) != 1) return false;
    normals.push_back(std::move(nu));
  }
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    std::vector<IntVector> basis;
    for (auto r : p.active_facets(v)) basis.push_back(normals[r]);
    if (!latlin::completes_to_lattice_basis(basis)) return false;
  }
  return true;
}

bool is_integral_delzant(const LabeledPolytope& p) {
  if (!is_delzant(p)) return false;
  return std::all_of(p.vertices().begin(), p.vertices().end(), [](const RatVector& v) {
    return latlin::lcm_of_denominators(v) == 1;
  });
}

RealPolytope RealPolytope::from_forms(std::size_t dim, std::vector<AffineForm> forms, bool rational) {
  RealPolytope p;
  p.dim = dim;
  p.forms = std::move(forms);
  p.vertices = real_vertices(p.forms, dim);
  p.rational = rational;
  return p;
}

RealPolytope RealPolytope::from_exact(const LabeledPolytope& exact) {
  RealPolytope p;
  p.dim = exact.dim();
  p.forms = exact.real_forms();
  for (const auto& v : exact.vertices()) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t j = 0; j < v.size(); ++j) x(static_cast<Eigen::Index>(j)) = v[j].convert_to<double>();
    p.vertices.push_back(std::move(x));
  }
  p.rational = true;
  return p;
}

bool RealPolytope::interior_contains(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim) throw PreconditionError("point dimension mismatch");
  return std::all_of(forms.begin(), forms.end(), [&](const AffineForm& f) { return f(x) > 0; });
}

Eigen::VectorXd RealPolytope::centroid() const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& v : vertices) c += v;
  return vertices.empty() ? c : Eigen::VectorXd(c / static_cast<double>(vertices.size()));
}

}  // namespace toric
