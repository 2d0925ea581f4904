#include "toric/potential.hpp"

#include "toric/calabi.hpp"
#include "toric/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace toric {

std::string to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::Guillemin: return "guillemin";
    case PotentialKind::CanonicalCone: return "canonical_cone";
    case PotentialKind::SbCorrection: return "sb_correction";
    case PotentialKind::Homogeneous1: return "homogeneous1";
    case PotentialKind::Sum: return "sum";
    case PotentialKind::PulledBack: return "pulled_back";
    case PotentialKind::BoothbyWang: return "boothby_wang";
    case PotentialKind::CalabiFamily: return "calabi";
  }
  return "unknown";
}

namespace {

using Node = PotentialExpr::Node;

constexpr double kDomainMargin = 1e-12;

bool inside(const std::vector<AffineForm>& forms, const Eigen::VectorXd& x) {
  const double xs = x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
  return std::all_of(forms.begin(), forms.end(), [&](const AffineForm& f) {
    double scale = 1.0 + f.normal.cwiseAbs().sum() * xs + std::abs(f.offset);
    return f(x) > kDomainMargin * scale;
  });
}

struct Want {
  bool value = false;
  bool gradient = false;
  bool hessian = false;
};

struct Eval {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

Eval eval(const Node& node, const Eigen::VectorXd& x, Want want);

Eval zero_eval(std::size_t dim, Want want) {
  Eval e;
  const auto n = static_cast<Eigen::Index>(dim);
  if (want.gradient) e.gradient = Eigen::VectorXd::Zero(n);
  if (want.hessian) e.hessian = Eigen::MatrixXd::Zero(n, n);
  return e;
}

// 1/2 u log u with u = <x, v> (+ offset) contributes to every order
void add_xlogx(Eval& e, double u, const Eigen::VectorXd& v, double sign, Want want) {
  if (u <= 0) throw DomainError("logarithm argument is not positive");
  double lu = std::log(u);
  if (want.value) e.value += sign * 0.5 * u * lu;
  if (want.gradient) e.gradient += sign * 0.5 * (lu + 1.0) * v;
  if (want.hessian) e.hessian += sign * 0.5 / u * (v * v.transpose());
}

double h_first(int n, double a_param, double r) {
  auto f = [&](double t) { return calabi::h_A_second(n, a_param, t); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, r, 15, 1e-14);
}

double h_value(int n, double a_param, double r) {
  auto f = [&](double t) { return (r - t) * calabi::h_A_second(n, a_param, t); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, r, 15, 1e-14);
}

Eval eval(const Node& node, const Eigen::VectorXd& x, Want want) {
  Eval e = zero_eval(node.dim, want);
  switch (node.kind) {
    case PotentialKind::Guillemin:
    case PotentialKind::CanonicalCone:
      for (const auto& f : node.forms) add_xlogx(e, f(x), f.normal, 1.0, want);
      return e;
    case PotentialKind::SbCorrection:
      add_xlogx(e, node.b.dot(x), node.b, 1.0, want);
      add_xlogx(e, node.canonical_reeb.dot(x), node.canonical_reeb, -1.0, want);
      return e;
    case PotentialKind::Homogeneous1: {
      const auto& h = *node.homogeneous;
      if (want.value) e.value = h.value(x);
      if (want.gradient) e.gradient = h.gradient(x);
      if (want.hessian) e.hessian = h.hessian(x);
      return e;
    }
    case PotentialKind::Sum:
      for (const auto& child : node.children) {
        Eval c = eval(child.node(), x, want);
        if (want.value) e.value += c.value;
        if (want.gradient) e.gradient += c.gradient;
        if (want.hessian) e.hessian += c.hessian;
      }
      return e;
    case PotentialKind::PulledBack: {
      Eigen::VectorXd y = node.map * x + node.shift;
      Eval c = eval(node.children.front().node(), y, want);
      if (want.value) e.value = c.value;
      if (want.gradient) e.gradient = node.map.transpose() * c.gradient;
      if (want.hessian) e.hessian = node.map.transpose() * c.hessian * node.map;
      return e;
    }
    case PotentialKind::BoothbyWang: {
      const auto n = static_cast<Eigen::Index>(node.dim) - 1;
      double z = x(n);
      if (z <= 0) throw DomainError("Boothby-Wang lift needs z > 0");
      Eigen::VectorXd y = x.head(n) / z;
      Want child_want{want.value || want.gradient, want.gradient, want.hessian};
      Eval c = eval(node.children.front().node(), y, child_want);
      double lz = std::log(z);
      if (want.value) e.value = z * c.value + 0.5 * z * lz;
      if (want.gradient) {
        e.gradient.head(n) = c.gradient;
        e.gradient(n) = c.value - c.gradient.dot(y) + 0.5 * (lz + 1.0);
      }
      if (want.hessian) {
        Eigen::VectorXd sy = c.hessian * y;
        e.hessian.topLeftCorner(n, n) = c.hessian / z;
        e.hessian.topRightCorner(n, 1) = -sy / z;
        e.hessian.bottomLeftCorner(1, n) = -sy.transpose() / z;
        e.hessian(n, n) = y.dot(sy) / z + 0.5 / z;
      }
      return e;
    }
    case PotentialKind::CalabiFamily: {
      const int n = node.calabi_n;
      const double shift = 1.0 / (n + 1);
      const double r = x.sum();
      Eigen::VectorXd u = x.array() + shift;
      if (want.value) {
        double s = 0;
        for (Eigen::Index i = 0; i < u.size(); ++i) s += u(i) * std::log(u(i));
        e.value = 0.5 * (s + h_value(n, node.calabi_a_param, r));
      }
      if (want.gradient) {
        double hp = h_first(n, node.calabi_a_param, r);
        for (Eigen::Index i = 0; i < u.size(); ++i) e.gradient(i) = 0.5 * (std::log(u(i)) + 1.0 + hp);
      }
      if (want.hessian) {
        double h2 = calabi::h_A_second(n, node.calabi_a_param, r);
        e.hessian.setConstant(0.5 * h2);
        for (Eigen::Index i = 0; i < u.size(); ++i) e.hessian(i, i) += 0.5 / u(i);
      }
      return e;
    }
  }
  throw PreconditionError("unknown potential kind");
}

std::shared_ptr<Node> make_node(PotentialKind kind, std::size_t dim) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->dim = dim;
  return node;
}

void check_forms(std::size_t dim, const std::vector<AffineForm>& forms) {
  for (const auto& f : forms)
    if (static_cast<std::size_t>(f.normal.size()) != dim) throw PreconditionError("form dimension mismatch");
}

}  // namespace

PotentialExpr PotentialExpr::guillemin(const LabeledPolytope& p) {
  auto node = make_node(PotentialKind::Guillemin, p.dim());
  node->forms = p.real_forms();
  node->domain = node->forms;
  node->polytope = p;
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::guillemin(const RealPolytope& p) {
  check_forms(p.dim, p.forms);
  auto node = make_node(PotentialKind::Guillemin, p.dim);
  node->forms = p.forms;
  node->domain = node->forms;
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::canonical_cone(const MomentCone& c) {
  auto node = make_node(PotentialKind::CanonicalCone, c.dim());
  node->forms = c.real_forms();
  node->domain = node->forms;
  node->cone = c;
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::canonical_cone(std::size_t dim, std::vector<AffineForm> forms) {
  check_forms(dim, forms);
  for (const auto& f : forms)
    if (f.offset != 0.0) throw PreconditionError("cone forms must have zero offsets");
  auto node = make_node(PotentialKind::CanonicalCone, dim);
  node->forms = std::move(forms);
  node->domain = node->forms;
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::sb_correction(const MomentCone& c, const Eigen::VectorXd& b) {
  auto s = sb_correction(c.dim(), c.real_forms(), b);
  auto node = std::make_shared<Node>(s.node());
  node->cone = c;
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::sb_correction(std::size_t dim, std::vector<AffineForm> cone_forms,
                                           const Eigen::VectorXd& b) {
  check_forms(dim, cone_forms);
  if (static_cast<std::size_t>(b.size()) != dim) throw PreconditionError("b has the wrong dimension");
  auto node = make_node(PotentialKind::SbCorrection, dim);
  node->canonical_reeb = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (const auto& f : cone_forms) node->canonical_reeb += f.normal;
  node->b = b;
  node->forms = cone_forms;
  node->domain = std::move(cone_forms);
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::homogeneous(HomogeneousTerm term, std::size_t dim, const Eigen::VectorXd& probe,
                                         std::vector<AffineForm> domain) {
  check_forms(dim, domain);
  if (!term.value || !term.gradient || !term.hessian)
    throw PreconditionError("homogeneous term needs value, gradient and Hessian callbacks");
  if (static_cast<std::size_t>(probe.size()) != dim) throw PreconditionError("probe has the wrong dimension");
  double h = term.value(probe);
  double euler = probe.dot(term.gradient(probe));
  if (std::abs(euler - term.degree * h) > 1e-8 * std::max(1.0, std::abs(h)))
    throw PreconditionError("term '" + term.name + "' fails the Euler relation for its declared degree");
  auto node = make_node(PotentialKind::Homogeneous1, dim);
  node->homogeneous = std::move(term);
  node->domain = std::move(domain);
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::sum(std::vector<PotentialExpr> terms) {
  if (terms.empty()) throw PreconditionError("empty sum of potentials");
  const std::size_t dim = terms.front().dim();
  auto node = make_node(PotentialKind::Sum, dim);
  for (const auto& t : terms) {
    if (t.dim() != dim) throw PreconditionError("summands have different dimensions");
    node->domain.insert(node->domain.end(), t.domain().begin(), t.domain().end());
  }
  node->children = std::move(terms);
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::pulled_back(PotentialExpr base, Eigen::MatrixXd t, std::optional<Eigen::VectorXd> shift) {
  if (static_cast<std::size_t>(t.rows()) != base.dim()) throw PreconditionError("map rows must match the base dimension");
  Eigen::VectorXd c = shift.value_or(Eigen::VectorXd::Zero(t.rows()));
  if (c.size() != t.rows()) throw PreconditionError("shift has the wrong dimension");
  if (t.rows() == t.cols() && std::abs(t.determinant()) < 1e-14 * std::max(1.0, t.cwiseAbs().maxCoeff()))
    throw SingularMatrixError("pull-back map is singular");
  auto node = make_node(PotentialKind::PulledBack, static_cast<std::size_t>(t.cols()));
  for (const auto& f : base.domain()) {
    AffineForm g;
    g.normal = t.transpose() * f.normal;
    g.offset = f(c);
    node->domain.push_back(std::move(g));
  }
  node->map = std::move(t);
  node->shift = std::move(c);
  node->children.push_back(std::move(base));
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::boothby_wang(PotentialExpr base) {
  const std::size_t n = base.dim();
  auto node = make_node(PotentialKind::BoothbyWang, n + 1);
  for (const auto& f : base.domain()) {
    AffineForm g;
    g.normal.resize(static_cast<Eigen::Index>(n + 1));
    g.normal << f.normal, f.offset;
    node->domain.push_back(std::move(g));
  }
  AffineForm z;
  z.normal = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n));
  node->domain.push_back(std::move(z));
  node->children.push_back(std::move(base));
  return PotentialExpr(std::move(node));
}

PotentialExpr PotentialExpr::calabi(int n, double a_param) {
  if (n < 1) throw PreconditionError("Calabi potential needs n >= 1");
  auto roots = calabi::solve_roots(n, a_param);
  auto node = make_node(PotentialKind::CalabiFamily, static_cast<std::size_t>(n));
  node->calabi_n = n;
  node->calabi_a_param = a_param;
  node->root_a = roots.a;
  node->root_b = roots.b;
  node->domain = calabi::p_A_polytope(n, a_param).forms;
  return PotentialExpr(std::move(node));
}

PotentialKind PotentialExpr::kind() const { return node_->kind; }
std::size_t PotentialExpr::dim() const { return node_->dim; }
const std::vector<AffineForm>& PotentialExpr::domain() const { return node_->domain; }

bool PotentialExpr::conic() const {
  return std::all_of(node_->domain.begin(), node_->domain.end(),
                     [](const AffineForm& f) { return f.offset == 0.0; });
}

bool PotentialExpr::contains(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) return false;
  return inside(node_->domain, x);
}

bool PotentialExpr::affine_ambiguous() const {
  if (node_->kind == PotentialKind::CalabiFamily) return true;
  return std::any_of(node_->children.begin(), node_->children.end(),
                     [](const PotentialExpr& c) { return c.affine_ambiguous(); });
}

void PotentialExpr::require_domain(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim())
    throw PreconditionError("point has dimension " + std::to_string(x.size()) + ", potential expects " +
                            std::to_string(dim()));
  if (!inside(node_->domain, x)) throw DomainError("point outside the open domain of the potential");
}

double PotentialExpr::value(const Eigen::VectorXd& x) const {
  require_domain(x);
  return eval(*node_, x, {true, false, false}).value;
}

Eigen::VectorXd PotentialExpr::gradient(const Eigen::VectorXd& x) const {
  require_domain(x);
  return eval(*node_, x, {false, true, false}).gradient;
}

Eigen::MatrixXd PotentialExpr::hessian(const Eigen::VectorXd& x) const {
  require_domain(x);
  return eval(*node_, x, {false, false, true}).hessian;
}

double evaluate(const PotentialExpr& s, const Eigen::VectorXd& x) { return s.value(x); }

Eigen::VectorXd gradient(const PotentialExpr& s, const Eigen::VectorXd& x) { return s.gradient(x); }

HessianSample hessian(const PotentialExpr& s, const Eigen::VectorXd& x) {
  HessianSample out;
  out.point = x;
  out.hessian = s.hessian(x);
  out.gradient = s.gradient(x);
  Eigen::LLT<Eigen::MatrixXd> llt(out.hessian);
  out.positive_definite = llt.info() == Eigen::Success;
  return out;
}

Eigen::VectorXd reeb_vector(const PotentialExpr& s, const Eigen::VectorXd& x) {
  if (!s.conic()) throw PreconditionError("Reeb vector needs a potential on a cone");
  return 2.0 * s.hessian(x) * x;
}

double homogeneity_defect(const PotentialExpr& s, const Eigen::VectorXd& x, double t) {
  Eigen::MatrixXd scaled = s.hessian(std::exp(2.0 * t) * x);
  Eigen::MatrixXd base = s.hessian(x);
  return (scaled - std::exp(-2.0 * t) * base).cwiseAbs().maxCoeff();
}

namespace {

// Faces are grouped by the set of generating points (vertices or unit rays)
// they contain; the target is the centroid of those points.
struct FaceTarget {
  std::vector<std::size_t> facets;
  Eigen::VectorXd target;
};

std::vector<FaceTarget> face_targets(const std::vector<AffineForm>& forms, const std::vector<Eigen::VectorXd>& points,
                                     std::size_t max_codim) {
  std::vector<std::set<std::size_t>> active(points.size());
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t r = 0; r < forms.size(); ++r) {
      double scale = 1.0 + forms[r].normal.cwiseAbs().sum() * points[p].cwiseAbs().maxCoeff() +
                     std::abs(forms[r].offset);
      if (std::abs(forms[r](points[p])) <= 1e-9 * scale) active[p].insert(r);
    }
  std::map<std::vector<std::size_t>, FaceTarget> faces;
  for (std::size_t k = 1; k <= max_codim; ++k)
    for_each_combination(forms.size(), k, [&](std::span<const std::size_t> subset) {
      std::vector<std::size_t> members;
      for (std::size_t p = 0; p < points.size(); ++p)
        if (std::all_of(subset.begin(), subset.end(), [&](std::size_t r) { return active[p].count(r) > 0; }))
          members.push_back(p);
      if (members.empty() || faces.count(members)) return;
      FaceTarget f;
      f.target = Eigen::VectorXd::Zero(points.front().size());
      std::set<std::size_t> common = active[members.front()];
      for (auto p : members) {
        f.target += points[p];
        std::set<std::size_t> next;
        std::set_intersection(common.begin(), common.end(), active[p].begin(), active[p].end(),
                              std::inserter(next, next.begin()));
        common = std::move(next);
      }
      f.target /= static_cast<double>(members.size());
      f.facets.assign(common.begin(), common.end());
      faces.emplace(members, std::move(f));
    });
  std::vector<FaceTarget> out;
  for (auto& [_, f] : faces) out.push_back(std::move(f));
  return out;
}

BoundaryScanReport scan(const PotentialExpr& s, const std::vector<AffineForm>& forms,
                        const std::vector<FaceTarget>& faces, const Eigen::VectorXd& reference, std::size_t samples) {
  BoundaryScanReport report;
  report.all_converged = true;
  for (const auto& face : faces) {
    BoundaryPath path;
    path.face_facets = face.facets;
    path.target = face.target;
    bool positive = true;
    for (std::size_t k = 1; k <= samples; ++k) {
      double t = std::pow(10.0, -static_cast<double>(k));
      Eigen::VectorXd x = face.target + t * (reference - face.target);
      double prod = std::numeric_limits<double>::quiet_NaN();
      try {
        prod = s.hessian(x).determinant();
        for (const auto& f : forms) prod *= f(x);
      } catch (const DomainError&) {
      }
      path.t.push_back(t);
      path.products.push_back(prod);
      if (!std::isfinite(prod) || prod <= 0) positive = false;
    }
    const auto& q = path.products;
    path.limit = q.back();
    path.converged = positive && q.size() >= 2 &&
                     std::abs(q.back() - q[q.size() - 2]) <= 1e-3 * std::abs(q.back());
    report.all_converged = report.all_converged && path.converged;
    report.paths.push_back(std::move(path));
  }
  return report;
}

}  // namespace

BoundaryScanReport boundary_validity_scan(const PotentialExpr& s, const RealPolytope& p, std::size_t samples) {
  if (p.dim != s.dim()) throw PreconditionError("polytope and potential dimensions differ");
  auto faces = face_targets(p.forms, p.vertices, p.dim);
  return scan(s, p.forms, faces, p.centroid(), samples);
}

BoundaryScanReport boundary_validity_scan(const PotentialExpr& s, const MomentCone& c, std::size_t samples) {
  if (c.dim() != s.dim()) throw PreconditionError("cone and potential dimensions differ");
  auto forms = c.real_forms();
  std::vector<Eigen::VectorXd> rays;
  Eigen::VectorXd reference = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c.dim()));
  for (const auto& eta : c.rays()) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(c.dim()));
    for (std::size_t j = 0; j < c.dim(); ++j) v(static_cast<Eigen::Index>(j)) = eta[j].convert_to<double>();
    v.normalize();
    reference += v;
    rays.push_back(std::move(v));
  }
  reference /= static_cast<double>(rays.size());
  auto faces = face_targets(forms, rays, c.dim() - 1);
  return scan(s, forms, faces, reference, samples);
}

PotentialExpr restrict_to_height(const PotentialExpr& lifted, double height) {
  if (lifted.dim() < 2) throw PreconditionError("restriction needs a potential on R^{n+1}, n >= 1");
  const auto n = static_cast<Eigen::Index>(lifted.dim()) - 1;
  Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(n + 1, n);
  embed.topRows(n).setIdentity();
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(n + 1);
  shift(n) = height;
  return PotentialExpr::pulled_back(lifted, std::move(embed), std::move(shift));
}

PotentialExpr restrict_to_slice(const PotentialExpr& lifted, const MomentCone& c, const LabeledPolytope& p) {
  if (c.dim() != p.dim() + 1 || lifted.dim() != c.dim())
    throw PreconditionError("cone, polytope and potential dimensions are inconsistent");
  if (!standard_cone(p).same_normals(c)) throw PreconditionError("cone is not the standard cone over the polytope");
  return restrict_to_height(lifted, 1.0);
}

}  // namespace toric
