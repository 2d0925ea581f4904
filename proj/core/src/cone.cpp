#include "toric/cone.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace toric {

using latlin::Integer;
using latlin::IntMatrix;
using latlin::IntVector;
using latlin::Rational;
using latlin::RatMatrix;
using latlin::RatVector;

std::string to_string(ConeDefect d) {
  switch (d) {
    case ConeDefect::Malformed: return "malformed";
    case ConeDefect::NonPrimitiveNormal: return "non-primitive normal";
    case ConeDefect::NotStronglyConvex: return "not strongly convex";
    case ConeDefect::NotFullDimensional: return "not full-dimensional";
    case ConeDefect::RedundantNormal: return "redundant normal";
  }
  return "unknown";
}

std::string to_string(MapDirection d) {
  return d == MapDirection::OnNormals ? "on_normals" : "transpose_on_normals";
}

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::Regular: return "regular";
    case Regularity::QuasiRegular: return "quasi-regular";
    case Regularity::Irregular: return "irregular";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(ConeDefect d, const std::string& detail) {
  throw InvalidCone(d, to_string(d) + ": " + detail);
}

std::size_t rank_of(const std::vector<IntVector>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  std::vector<RatVector> rows;
  for (const auto& v : vs) rows.push_back(latlin::to_rational(v));
  return latlin::rank(RatMatrix::from_rows(rows, dim));
}

}  // namespace

MomentCone build_cone(std::vector<IntVector> normals) {
  if (normals.empty()) fail(ConeDefect::Malformed, "no normals");
  const std::size_t dim = normals.front().size();
  if (dim == 0) fail(ConeDefect::Malformed, "zero-dimensional normals");
  for (std::size_t a = 0; a < normals.size(); ++a) {
    if (normals[a].size() != dim) fail(ConeDefect::Malformed, "normals of different lengths");
    if (latlin::gcd(normals[a]) != 1)
      fail(ConeDefect::NonPrimitiveNormal, "normal " + std::to_string(a) + " is not primitive");
  }
  if (normals.size() < dim) fail(ConeDefect::NotStronglyConvex, "fewer normals than the dimension");

  std::vector<RatVector> rat;
  for (const auto& nu : normals) rat.push_back(latlin::to_rational(nu));
  auto rays = extreme_rays(rat, dim);
  if (!rays.pointed) fail(ConeDefect::NotStronglyConvex, "normals do not span the ambient space");
  if (rank_of(rays.rays, dim) != dim) fail(ConeDefect::NotFullDimensional, "rays span a proper subspace");

  for (std::size_t a = 0; a < normals.size(); ++a) {
    std::vector<IntVector> on_facet;
    for (const auto& r : rays.rays)
      if (latlin::dot(normals[a], r) == 0) on_facet.push_back(r);
    if (rank_of(on_facet, dim) + 1 != dim)
      fail(ConeDefect::RedundantNormal, "normal " + std::to_string(a) + " does not define a facet");
  }
  for (std::size_t a = 0; a < normals.size(); ++a)
    for (std::size_t b = a + 1; b < normals.size(); ++b)
      if (normals[a] == normals[b]) fail(ConeDefect::RedundantNormal, "repeated normal");

  MomentCone c;
  c.dim_ = dim;
  c.normals_ = std::move(normals);
  c.rays_ = std::move(rays.rays);
  return c;
}

IntMatrix MomentCone::normal_matrix() const { return IntMatrix::from_rows(normals_, dim_); }

std::vector<AffineForm> MomentCone::real_forms() const {
  std::vector<AffineForm> out;
  for (const auto& nu : normals_) {
    AffineForm f;
    f.normal.resize(static_cast<Eigen::Index>(dim_));
    for (std::size_t j = 0; j < dim_; ++j) f.normal(static_cast<Eigen::Index>(j)) = nu[j].convert_to<double>();
    out.push_back(std::move(f));
  }
  return out;
}

IntVector MomentCone::canonical_reeb() const {
  IntVector k(dim_);
  for (const auto& nu : normals_)
    for (std::size_t j = 0; j < dim_; ++j) k[j] += nu[j];
  return k;
}

bool MomentCone::same_normals(const MomentCone& other) const {
  auto a = normals_;
  auto b = other.normals_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

GoodnessCertificate is_good(const MomentCone& c) {
  const std::size_t d = c.normals().size();
  const std::size_t dim = c.dim();
  const auto& rays = c.rays();
  std::vector<std::vector<bool>> incident(d, std::vector<bool>(rays.size()));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t r = 0; r < rays.size(); ++r) incident[a][r] = latlin::dot(c.normals()[a], rays[r]) == 0;

  // Every face is the intersection of the facets containing it, so closing
  // each facet subset under "rays on all of them" enumerates all faces.
  std::map<std::vector<std::size_t>, std::size_t> faces;  // facet set -> codim
  for (std::size_t mask = 1; mask < (std::size_t{1} << d); ++mask) {
    std::vector<IntVector> face_rays;
    std::vector<std::size_t> ray_ids;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      bool on_all = true;
      for (std::size_t a = 0; a < d && on_all; ++a)
        if ((mask >> a) & 1U) on_all = incident[a][r];
      if (on_all) {
        face_rays.push_back(rays[r]);
        ray_ids.push_back(r);
      }
    }
    if (face_rays.empty()) continue;  // only the apex
    std::vector<std::size_t> closure;
    for (std::size_t a = 0; a < d; ++a)
      if (std::all_of(ray_ids.begin(), ray_ids.end(), [&](std::size_t r) { return incident[a][r]; }))
        closure.push_back(a);
    std::size_t codim = dim - rank_of(face_rays, dim);
    if (codim >= 1 && codim + 1 <= dim) faces.emplace(std::move(closure), codim);
  }

  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> ordered;
  for (auto& [facets, codim] : faces) ordered.emplace_back(codim, facets);
  std::sort(ordered.begin(), ordered.end());

  GoodnessCertificate cert;
  cert.verdict = true;
  for (auto& [codim, facets] : ordered) {
    FaceWitness w;
    w.facets = facets;
    w.codim = codim;
    std::vector<IntVector> ns;
    for (auto a : facets) ns.push_back(c.normals()[a]);
    w.invariant_factors = latlin::smith_normal_form(IntMatrix::from_rows(ns, dim)).invariant_factors();
    w.ok = facets.size() == codim && w.invariant_factors.size() == codim &&
           std::all_of(w.invariant_factors.begin(), w.invariant_factors.end(),
                       [](const Integer& x) { return x == 1; });
    if (!w.ok && cert.verdict) {
      cert.verdict = false;
      cert.failing_face = cert.faces.size();
    }
    cert.faces.push_back(std::move(w));
  }
  return cert;
}

MomentCone dual_cone(const MomentCone& c) { return build_cone(c.rays()); }

MomentCone standard_cone(const LabeledPolytope& p) {
  std::vector<IntVector> normals;
  for (const auto& f : p.facets()) {
    RatVector v = f.normal;
    v.push_back(f.offset);
    normals.push_back(latlin::primitive(std::span<const Rational>(v)));
  }
  return build_cone(std::move(normals));
}

std::vector<AffineForm> standard_cone_forms(const LabeledPolytope& p) {
  return standard_cone_forms(RealPolytope::from_exact(p));
}

std::vector<AffineForm> standard_cone_forms(const RealPolytope& p) {
  std::vector<AffineForm> out;
  for (const auto& f : p.forms) {
    AffineForm g;
    g.normal.resize(f.normal.size() + 1);
    g.normal << f.normal, f.offset;
    out.push_back(std::move(g));
  }
  return out;
}

MomentCone c_km(int n, int k, int m) {
  if (n < 2 || k < 1 || m < 0 || m >= k * n)
    throw PreconditionError("C(k,m) requires n >= 2, k >= 1 and 0 <= m < kn");
  const auto dim = static_cast<std::size_t>(n) + 1;
  std::vector<IntVector> normals;
  for (std::size_t i = 0; i + 2 < dim; ++i) {
    IntVector v(dim);
    v[i] = 1;
    v[dim - 1] = 1;
    normals.push_back(std::move(v));
  }
  IntVector nu_n(dim, Integer(-1));  // ((m+1)e_n - d, 1)
  nu_n[dim - 2] = m;
  nu_n[dim - 1] = 1;
  normals.push_back(std::move(nu_n));
  IntVector nu_minus(dim);
  nu_minus[dim - 2] = k;
  nu_minus[dim - 1] = 1;
  normals.push_back(std::move(nu_minus));
  IntVector nu_plus(dim);
  nu_plus[dim - 2] = -1;
  nu_plus[dim - 1] = 1;
  normals.push_back(std::move(nu_plus));
  return build_cone(std::move(normals));
}

MomentCone c_pq(int p, int q) {
  if (q <= 0 || q >= p) throw PreconditionError("Y^{p,q} requires 0 < q < p");
  return build_cone({
      {1, p - q - 1, p - q},
      {1, 1, 0},
      {1, 0, 0},
      {1, p, p},
  });
}

MomentCone orthant(std::size_t dim) {
  std::vector<IntVector> normals;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector v(dim);
    v[i] = 1;
    normals.push_back(std::move(v));
  }
  return build_cone(std::move(normals));
}

LinearEquivalence t_km(int k, int m) {
  LinearEquivalence e;
  e.map = RatMatrix{{0, 0, 1}, {Rational(k - m - 1), -1, Rational(k)}, {Rational(k - m), -1, Rational(k)}};
  e.direction = MapDirection::OnNormals;
  return e;
}

EquivalenceCheck verify_equivalence(const MomentCone& from, const MomentCone& to, const RatMatrix& t,
                                    std::optional<MapDirection> direction) {
  if (t.rows() != from.dim() || t.cols() != from.dim() || from.dim() != to.dim())
    throw PreconditionError("equivalence dimension mismatch");
  if (latlin::determinant(t) == 0) throw SingularMatrixError("equivalence map is singular");
  std::vector<MapDirection> tries;
  if (direction) tries.push_back(*direction);
  else tries = {MapDirection::OnNormals, MapDirection::TransposeOnNormals};

  EquivalenceCheck out;
  if (from.normals().size() != to.normals().size()) return out;
  for (auto dir : tries) {
    RatMatrix m = dir == MapDirection::OnNormals ? t : t.transpose();
    std::vector<std::size_t> pairing;
    std::vector<bool> used(to.normals().size(), false);
    bool ok = true;
    for (const auto& nu : from.normals()) {
      RatVector image = m * latlin::to_rational(nu);
      std::size_t hit = to.normals().size();
      for (std::size_t j = 0; j < to.normals().size(); ++j)
        if (!used[j] && image == latlin::to_rational(to.normals()[j])) {
          hit = j;
          break;
        }
      if (hit == to.normals().size()) {
        ok = false;
        break;
      }
      used[hit] = true;
      pairing.push_back(hit);
    }
    if (ok) {
      out.equivalent = true;
      out.direction = dir;
      out.pairing = std::move(pairing);
      return out;
    }
  }
  return out;
}

bool reeb_admissible(const MomentCone& c, const Eigen::VectorXd& b) {
  if (static_cast<std::size_t>(b.size()) != c.dim()) throw PreconditionError("Reeb vector dimension mismatch");
  return std::all_of(c.rays().begin(), c.rays().end(), [&](const IntVector& eta) {
    double s = 0;
    for (std::size_t j = 0; j < eta.size(); ++j) s += eta[j].convert_to<double>() * b(static_cast<Eigen::Index>(j));
    return s > 0;
  });
}

Eigen::VectorXd CharacteristicPolytope::lift(const Eigen::VectorXd& y) const {
  const auto dim = static_cast<Eigen::Index>(b.size());
  const auto j = static_cast<Eigen::Index>(eliminated);
  Eigen::VectorXd x(dim);
  double rest = 0.5;
  for (Eigen::Index i = 0, k = 0; i < dim; ++i) {
    if (i == j) continue;
    x(i) = y(k++);
    rest -= b(i) * x(i);
  }
  x(j) = rest / b(j);
  return x;
}

namespace {

CharacteristicPolytope slice_cone(std::span<const AffineForm> forms, std::size_t dim, const Eigen::VectorXd& b) {
  if (dim < 2) throw PreconditionError("characteristic polytope needs a cone of dimension >= 2");
  CharacteristicPolytope out;
  out.b = b;
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (std::abs(b(i)) >= std::abs(b(j))) j = i;
  out.eliminated = static_cast<std::size_t>(j);

  std::vector<AffineForm> sliced;
  for (const auto& f : forms) {
    AffineForm g;
    g.normal.resize(static_cast<Eigen::Index>(dim - 1));
    for (Eigen::Index i = 0, k = 0; i < b.size(); ++i) {
      if (i == j) continue;
      g.normal(k++) = f.normal(i) - f.normal(j) * b(i) / b(j);
    }
    g.offset = f.normal(j) / (2.0 * b(j));
    sliced.push_back(std::move(g));
  }
  bool rational = true;
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (!recognize_rational(b(i) / b(j))) rational = false;
  out.rational = rational;
  out.slice = RealPolytope::from_forms(dim - 1, std::move(sliced), rational);
  for (const auto& v : out.slice.vertices) out.ambient_vertices.push_back(out.lift(v));
  return out;
}

}  // namespace

CharacteristicPolytope characteristic_polytope(const MomentCone& c, const Eigen::VectorXd& b) {
  if (!reeb_admissible(c, b)) throw DomainError("b is not in the interior of the dual cone; slice is unbounded");
  auto forms = c.real_forms();
  return slice_cone(forms, c.dim(), b);
}

CharacteristicPolytope characteristic_polytope(std::span<const AffineForm> cone_forms, std::size_t dim,
                                               const Eigen::VectorXd& b) {
  if (static_cast<std::size_t>(b.size()) != dim) throw PreconditionError("Reeb vector dimension mismatch");
  auto rays = real_rays(cone_forms, dim);
  if (rays.empty()) throw PreconditionError("cone has no rays");
  for (const auto& r : rays)
    if (r.dot(b) <= 0) throw DomainError("b is not in the interior of the dual cone; slice is unbounded");
  return slice_cone(cone_forms, dim, b);
}

std::optional<Rational> recognize_rational(double x, long max_denominator, double tol) {
  if (tol * static_cast<double>(max_denominator) * static_cast<double>(max_denominator) > 1e-2)
    throw PreconditionError("recognize_rational: tolerance too loose for the denominator bound");
  if (!std::isfinite(x)) return std::nullopt;
  // convergents h/k of the continued fraction of x
  long double h_prev = 1, h = std::floor(static_cast<long double>(x));
  long double k_prev = 0, k = 1;
  long double rem = static_cast<long double>(x) - h;
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(static_cast<long double>(x) - h / k) <= tol)
      return Rational(Integer(static_cast<long long>(h)), Integer(static_cast<long long>(k)));
    if (rem == 0) break;
    long double inv = 1 / rem;
    long double a = std::floor(inv);
    rem = inv - a;
    long double h_next = a * h + h_prev;
    long double k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  return std::nullopt;
}

Regularity classify_reeb(const MomentCone& c, std::span<const Rational> b) {
  if (b.size() != c.dim()) throw PreconditionError("Reeb vector dimension mismatch");
  auto w = latlin::primitive(b);
  for (const auto& eta : c.rays()) {
    Integer s = latlin::dot(w, eta);
    if (s <= 0) throw DomainError("Reeb vector is not in the interior of the dual cone");
  }
  bool free_action = std::all_of(c.rays().begin(), c.rays().end(),
                                 [&](const IntVector& eta) { return latlin::dot(w, eta) == 1; });
  return free_action ? Regularity::Regular : Regularity::QuasiRegular;
}

Regularity classify_reeb(const MomentCone& c, const Eigen::VectorXd& b) {
  if (static_cast<std::size_t>(b.size()) != c.dim()) throw PreconditionError("Reeb vector dimension mismatch");
  Eigen::Index j = 0;
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (std::abs(b(i)) > std::abs(b(j))) j = i;
  RatVector ratios;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    auto q = recognize_rational(b(i) / b(j));
    if (!q) return Regularity::Irregular;
    ratios.push_back(*q * (b(j) > 0 ? 1 : -1));
  }
  return classify_reeb(c, ratios);
}

}  // namespace toric
