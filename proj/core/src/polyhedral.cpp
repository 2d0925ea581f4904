#include "toric/polyhedral.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace toric {

using latlin::IntVector;
using latlin::RatMatrix;
using latlin::RatVector;

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(std::span<const std::size_t>)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

RayEnumeration extreme_rays(std::span<const RatVector> normals, std::size_t dim) {
  RayEnumeration out;
  if (dim == 0) return out;
  auto all = RatMatrix::from_rows(normals, dim);
  out.pointed = latlin::rank(all) == dim;
  if (!out.pointed) return out;
  if (dim == 1) {
    // rays are +1 / -1 when no normal excludes them
    for (int sign : {1, -1}) {
      bool ok = std::all_of(normals.begin(), normals.end(),
                            [&](const RatVector& v) { return sign * v[0] >= 0; });
      if (ok) out.rays.push_back({latlin::Integer(sign)});
    }
    return out;
  }
  for_each_combination(normals.size(), dim - 1, [&](std::span<const std::size_t> subset) {
    std::vector<RatVector> rows;
    for (auto i : subset) rows.push_back(normals[i]);
    auto kernel = latlin::nullspace(RatMatrix::from_rows(rows, dim));
    if (kernel.size() != 1) return;
    for (int sign : {1, -1}) {
      RatVector v = kernel.front();
      for (auto& x : v) x *= sign;
      bool feasible = std::all_of(normals.begin(), normals.end(),
                                  [&](const RatVector& nu) { return latlin::dot(nu, v) >= 0; });
      if (feasible) out.rays.push_back(latlin::primitive(std::span<const latlin::Rational>(v)));
    }
  });
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

namespace {

double form_scale(const AffineForm& f) { return 1.0 + f.normal.cwiseAbs().maxCoeff() + std::abs(f.offset); }

void push_unique(std::vector<Eigen::VectorXd>& pts, const Eigen::VectorXd& p, double tol) {
  for (const auto& q : pts)
    if ((q - p).cwiseAbs().maxCoeff() <= tol * (1.0 + p.cwiseAbs().maxCoeff())) return;
  pts.push_back(p);
}

}  // namespace

std::vector<Eigen::VectorXd> real_vertices(std::span<const AffineForm> forms, std::size_t dim,
                                           double tol) {
  std::vector<Eigen::VectorXd> out;
  for_each_combination(forms.size(), dim, [&](std::span<const std::size_t> subset) {
    Eigen::MatrixXd a(dim, dim);
    Eigen::VectorXd rhs(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      a.row(static_cast<Eigen::Index>(r)) = forms[subset[r]].normal.transpose();
      rhs(static_cast<Eigen::Index>(r)) = -forms[subset[r]].offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < static_cast<Eigen::Index>(dim)) return;
    Eigen::VectorXd x = lu.solve(rhs);
    for (const auto& f : forms)
      if (f(x) < -tol * form_scale(f) * (1.0 + x.cwiseAbs().maxCoeff())) return;
    push_unique(out, x, tol);
  });
  return out;
}

std::vector<Eigen::VectorXd> real_rays(std::span<const AffineForm> forms, std::size_t dim,
                                       double tol) {
  std::vector<Eigen::VectorXd> out;
  if (dim < 2) return out;
  for_each_combination(forms.size(), dim - 1, [&](std::span<const std::size_t> subset) {
    Eigen::MatrixXd a(dim - 1, dim);
    for (std::size_t r = 0; r + 1 < dim; ++r)
      a.row(static_cast<Eigen::Index>(r)) = forms[subset[r]].normal.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < static_cast<Eigen::Index>(dim - 1)) return;
    Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() != 1) return;
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd v = sign * kernel.col(0).normalized();
      bool ok = std::all_of(forms.begin(), forms.end(), [&](const AffineForm& f) {
        return f.normal.dot(v) >= -tol * form_scale(f);
      });
      if (ok) push_unique(out, v, tol);
    }
  });
  return out;
}

}  // namespace toric

namespace toric {

std::vector<Eigen::VectorXd> sample_interior(std::span<const AffineForm> forms, std::size_t dim, std::size_t count,
                                             std::uint64_t seed, double shrink) {
  const bool conic = std::all_of(forms.begin(), forms.end(), [](const AffineForm& f) { return f.offset == 0.0; });
  std::vector<Eigen::VectorXd> generators = conic ? real_rays(forms, dim) : real_vertices(forms, dim);
  if (generators.empty()) throw PreconditionError("region has no vertices or rays to sample from");
  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& g : generators) centroid += g;
  centroid /= static_cast<double>(generators.size());

  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    double total = 0;
    for (const auto& g : generators) {
      double w = gamma(rng);
      x += w * g;
      total += w;
    }
    x /= total;
    x = shrink * x + (1.0 - shrink) * centroid;
    if (conic) x *= scale(rng);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace toric
