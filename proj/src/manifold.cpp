#include "superform/manifold.hpp"

#include <cmath>
#include <stdexcept>

namespace superform {

namespace {

// first-order duals for differentiating the Gram-Schmidt frame fields:
// a scalar with its gradient, and a covector with its Jacobian
struct DScalar {
  double v;
  Vec d;  // d(k) = dv/dx_k
};

struct DVec {
  Vec v;  // n components
  Mat d;  // d(i,k) = d v_i / dx_k
};

DScalar dot(const DVec& a, const DVec& b) {
  DScalar r;
  r.v = a.v.dot(b.v);
  r.d = a.d.transpose() * b.v + b.d.transpose() * a.v;
  return r;
}

DVec axpy(const DVec& w, const DScalar& s, const DVec& n) {
  // w - s * n
  DVec r;
  r.v = w.v - s.v * n.v;
  r.d = w.d - s.v * n.d - n.v * s.d.transpose();
  return r;
}

DVec normalize(const DVec& w, double pivot, const char* what) {
  DScalar q = dot(w, w);
  const double norm = std::sqrt(q.v);
  if (!(norm > pivot) || !std::isfinite(norm))
    throw std::runtime_error(std::string(what) + ": rank-deficient frame");
  DVec r;
  r.v = w.v / norm;
  // d(norm)/dx = q.d / (2 norm)
  const Vec dn = q.d / (2.0 * norm);
  r.d = w.d / norm - (w.v / (norm * norm)) * dn.transpose();
  return r;
}

Mat gram_schmidt_columns(const Mat& a, double pivot) {
  Mat q = a;
  for (int j = 0; j < q.cols(); ++j) {
    for (int k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    const double norm = q.col(j).norm();
    if (norm < pivot) throw std::runtime_error("chart tangent map is rank deficient");
    q.col(j) /= norm;
  }
  return q;
}

}  // namespace

void Manifold::build_mesh(const std::vector<int>& nodes_per_axis) {
  if (static_cast<int>(nodes_per_axis.size()) != chart.m)
    throw std::invalid_argument("mesh order must list one count per parameter axis");
  std::vector<Rule1D> axes;
  for (int k = 0; k < chart.m; ++k) {
    axes.push_back(chart.periodic[k]
                       ? periodic_uniform(nodes_per_axis[k], chart.lo[k], chart.hi[k])
                       : gauss_legendre(nodes_per_axis[k], chart.lo[k], chart.hi[k]));
  }
  const auto qnodes = tensor_rule(axes);
  mesh_.clear();
  mesh_.reserve(qnodes.size());
  for (const auto& q : qnodes) {
    MeshNode node;
    node.u = q.x;
    node.w = q.w;
    node.x = Vec(chart.n);
    node.dphi = Mat(chart.n, chart.m);
    for (int i = 0; i < chart.n; ++i) {
      const Jet j = chart.phi[i].jet(q.x, 1);
      node.x[i] = j.v;
      node.dphi.row(i) = j.g.transpose();
    }
    const Mat gram = node.dphi.transpose() * node.dphi;
    const double det = gram.determinant();
    if (det <= 0.0) throw std::runtime_error("chart is degenerate at a mesh node");
    node.area = q.w * std::sqrt(det);
    node.tangent = gram_schmidt_columns(node.dphi, tol::pivot);
    mesh_.push_back(std::move(node));
  }
  geom_cache_.assign(mesh_.size(), std::nullopt);
}

ConormalFrame Manifold::frame_at(const Vec& x, bool with_derivatives) const {
  if (!has_levelsets())
    throw std::runtime_error("manifold carries no level-set functions");
  const int nn = n(), pp = p();
  std::vector<DVec> raw(pp);
  for (int j = 0; j < pp; ++j) {
    const Jet jet = levelsets[j].jet(x, with_derivatives ? 2 : 1);
    raw[j].v = jet.g;
    raw[j].d = with_derivatives ? jet.H : Mat::Zero(nn, nn);
  }
  // modified Gram-Schmidt in declared order
  std::vector<DVec> ortho;
  ortho.reserve(pp);
  for (int j = 0; j < pp; ++j) {
    DVec w = raw[j];
    for (int k = 0; k < j; ++k) w = axpy(w, dot(ortho[k], w), ortho[k]);
    ortho.push_back(normalize(w, tol::pivot, "conormal frame"));
  }
  ConormalFrame frame;
  frame.normals = Mat(nn, pp);
  for (int j = 0; j < pp; ++j) frame.normals.col(j) = ortho[j].v;
  if (with_derivatives)
    for (int j = 0; j < pp; ++j) frame.dnormals.push_back(ortho[j].d);
  // tangent completion from coordinate axes, lowest index first
  frame.tangents = Mat(nn, m());
  int filled = 0;
  for (int i = 0; i < nn && filled < m(); ++i) {
    Vec c = Vec::Unit(nn, i);
    for (int j = 0; j < pp; ++j) c -= frame.normals.col(j).dot(c) * frame.normals.col(j);
    for (int k = 0; k < filled; ++k)
      c -= frame.tangents.col(k).dot(c) * frame.tangents.col(k);
    const double norm = c.norm();
    if (norm > tol::pivot * 10) frame.tangents.col(filled++) = c / norm;
  }
  if (filled != m())
    throw std::runtime_error("tangent completion failed");
  return frame;
}

SecondFundamentalData Manifold::second_fundamental_at(const Vec& x) const {
  SecondFundamentalData data;
  data.frame = frame_at(x, true);
  const int nn = n(), pp = p();
  data.H = Vec(pp);
  for (int j = 0; j < pp; ++j) {
    // F_j = d n_j#: coefficient of dx_k ^ dxi_i is d(n_j)_i/dx_k
    Mat f(nn, nn);
    for (int k = 0; k < nn; ++k)
      for (int i = 0; i < nn; ++i) f(k, i) = data.frame.dnormals[j](i, k);
    data.F.push_back(PointSuperform::from_matrix(f));
    data.H[j] = trace_restricted(data.F[j], data.frame.tangents);
  }
  return data;
}

SecondFundamentalData Manifold::raw_second_fundamental_at(const Vec& x) const {
  SecondFundamentalData data;
  data.frame = frame_at(x, false);  // for the tangent completion
  const int nn = n(), pp = p();
  data.frame.dnormals.clear();
  data.H = Vec(pp);
  for (int j = 0; j < pp; ++j) {
    const Jet jet = levelsets[j].jet(x, 2);
    data.frame.normals.col(j) = jet.g;  // raw gradient, unit along M when calibrated
    data.frame.dnormals.push_back(jet.H);
    // F_j = d n_j# with n_j = d rho_j: coefficients are the Hessian
    data.F.push_back(PointSuperform::from_matrix(jet.H));
    data.H[j] = trace_restricted(data.F[j], data.frame.tangents);
  }
  return data;
}

const SecondFundamentalData& Manifold::node_geometry(std::size_t i) const {
  if (geom_cache_.size() != mesh_.size())
    geom_cache_.assign(mesh_.size(), std::nullopt);
  if (!geom_cache_[i]) geom_cache_[i] = second_fundamental_at(mesh_[i].x);
  return *geom_cache_[i];
}

PointSuperform Manifold::current_density(std::size_t node_index) const {
  const auto& g = node_geometry(node_index);
  PointSuperform nf = PointSuperform::one(n());
  for (int j = 0; j < p(); ++j)
    nf = wedge(nf, PointSuperform::one_form(g.frame.normals.col(j)));
  return volume_constant(p()) * wedge(nf, apply_j(nf));
}

double supercurrent_pair(const Manifold& mfd, const FormEvaluator& alpha) {
  const auto& mesh = mfd.mesh();
  return parallel_sum(
      mesh.size(),
      [&](std::size_t i) {
        const auto restricted = pullback_linear(mesh[i].tangent, alpha(mesh[i].x));
        return mesh[i].area * berezin_top(restricted);
      },
      active_threads());
}

double supercurrent_pair(const Manifold& mfd, const PointSuperform& alpha_const) {
  return supercurrent_pair(mfd, [&](const Vec&) { return alpha_const; });
}

double supercurrent_pair_node(
    const Manifold& mfd, const std::function<PointSuperform(std::size_t)>& alpha) {
  const auto& mesh = mfd.mesh();
  return parallel_sum(
      mesh.size(),
      [&](std::size_t i) {
        return mesh[i].area * berezin_top(pullback_linear(mesh[i].tangent, alpha(i)));
      },
      active_threads());
}

double integrate_nodes(const Manifold& mfd,
                       const std::function<double(std::size_t)>& density) {
  const auto& mesh = mfd.mesh();
  return parallel_sum(
      mesh.size(), [&](std::size_t i) { return mesh[i].area * density(i); },
      active_threads());
}

double supercurrent_pair_density(const Manifold& mfd, const FormEvaluator& alpha) {
  const auto& mesh = mfd.mesh();
  // warm the geometry cache serially; the loop below reads it concurrently
  for (std::size_t i = 0; i < mesh.size(); ++i) mfd.node_geometry(i);
  return parallel_sum(
      mesh.size(),
      [&](std::size_t i) {
        return mesh[i].area *
               berezin_top(wedge(mfd.current_density(i), alpha(mesh[i].x)));
      },
      active_threads());
}

double pair_d_current(const Manifold& mfd, const FormField& psi) {
  // <dT, psi> = (-1)^{deg T + 1} <T, d psi>; deg [M]_s = 2p is even
  return -supercurrent_pair(mfd, [&](const Vec& x) { return psi.d_at(x); });
}

double pair_dsharp_current(const Manifold& mfd, const FormField& psi) {
  return -supercurrent_pair(mfd, [&](const Vec& x) { return psi.dsharp_at(x); });
}

PointSuperform fcal_apply(const SecondFundamentalData& g, const PointSuperform& a) {
  PointSuperform r(a.dim());
  for (std::size_t j = 0; j < g.F.size(); ++j) {
    const auto njsharp = PointSuperform::one_form_xi(g.frame.normals.col(j));
    r += wedge(g.F[j], contract(njsharp, a));
  }
  return r;
}

PointSuperform fcal_sharp_apply(const SecondFundamentalData& g, const PointSuperform& a) {
  PointSuperform r(a.dim());
  for (std::size_t j = 0; j < g.F.size(); ++j) {
    const auto nj = PointSuperform::one_form(g.frame.normals.col(j));
    r += wedge(g.F[j], contract(nj, a));
  }
  return r;
}

namespace {

double pair_fcal_impl(const Manifold& mfd, const FormField& psi, bool sharp_version) {
  const auto& mesh = mfd.mesh();
  for (std::size_t i = 0; i < mesh.size(); ++i) mfd.node_geometry(i);
  return parallel_sum(
      mesh.size(),
      [&](std::size_t i) {
        const auto& g = mfd.node_geometry(i);
        const PointSuperform w = mfd.current_density(i);
        const PointSuperform acted =
            sharp_version ? fcal_sharp_apply(g, w) : fcal_apply(g, w);
        return mesh[i].area * berezin_top(wedge(acted, psi.value(mesh[i].x)));
      },
      active_threads());
}

}  // namespace

double pair_fcal(const Manifold& mfd, const FormField& psi) {
  return pair_fcal_impl(mfd, psi, false);
}

double pair_fcal_sharp(const Manifold& mfd, const FormField& psi) {
  return pair_fcal_impl(mfd, psi, true);
}

PointSuperform covariant_dsharp_at(const Manifold& mfd, const FormField& a, const Vec& x) {
  const auto g = mfd.second_fundamental_at(x);
  return a.dsharp_at(x) + fcal_sharp_apply(g, a.value(x));
}

PointSuperform curvature_form(const SecondFundamentalData& g) {
  PointSuperform r(g.F.empty() ? 1 : g.F.front().dim());
  for (const auto& f : g.F) r += wedge(f, f);
  return 0.5 * r;
}

PointSuperform curvature_form_at(const Manifold& mfd, const Vec& x) {
  return curvature_form(mfd.second_fundamental_at(x));
}

// -- canonical extension ------------------------------------------------------

namespace {

// projected coefficients and their Jacobian: a_i = w_i - sum_j s_j (n_j)_i
void canonical_coeffs(const Manifold& mfd, const FormField& omega, const Vec& x,
                      bool is_xi_form, Vec& a, Mat& da) {
  const int nn = mfd.n();
  Vec w = Vec::Zero(nn);
  Mat dw = Mat::Zero(nn, nn);  // dw(i,k) = d w_i / dx_k
  for (const auto& t : omega.terms()) {
    const IndexPair m = t.mono;
    int idx = -1;
    if (!is_xi_form && m.xdeg() == 1 && m.xideg() == 0) idx = __builtin_ctz(m.xmask);
    if (is_xi_form && m.xdeg() == 0 && m.xideg() == 1) idx = __builtin_ctz(m.ximask);
    if (idx < 0) throw std::invalid_argument("canonical extension expects a 1-form");
    const Jet j = t.coeff.jet(x, 1);
    w[idx] += j.v;
    dw.row(idx) += j.g.transpose();
  }
  const auto frame = mfd.frame_at(x, true);
  a = w;
  da = dw;
  for (int j = 0; j < mfd.p(); ++j) {
    const Vec nj = frame.normals.col(j);
    const Mat& dnj = frame.dnormals[j];  // (i,k)
    const double s = nj.dot(w);
    const Vec ds = dnj.transpose() * w + dw.transpose() * nj;  // ds(k)
    a -= s * nj;
    da -= s * dnj + nj * ds.transpose();
  }
}

}  // namespace

PointSuperform CanonicalExtension::value_at(const Vec& x) const {
  const auto bid = omega.terms().empty()
                       ? std::pair<int, int>{1, 0}
                       : std::pair<int, int>{omega.terms().front().mono.xdeg(),
                                             omega.terms().front().mono.xideg()};
  Vec a;
  Mat da;
  canonical_coeffs(*mfd, omega, x, bid.second == 1, a, da);
  return bid.second == 1 ? PointSuperform::one_form_xi(a) : PointSuperform::one_form(a);
}

PointSuperform CanonicalExtension::d_at(const Vec& x) const {
  const bool xi = !omega.terms().empty() && omega.terms().front().mono.xideg() == 1;
  Vec a;
  Mat da;
  canonical_coeffs(*mfd, omega, x, xi, a, da);
  const int nn = mfd->n();
  PointSuperform r(nn);
  for (int k = 0; k < nn; ++k)
    for (int i = 0; i < nn; ++i) {
      if (da(i, k) == 0.0) continue;
      const auto gen = xi ? PointSuperform::dxi(nn, i) : PointSuperform::dx(nn, i);
      r += da(i, k) * wedge(PointSuperform::dx(nn, k), gen);
    }
  return r;
}

PointSuperform CanonicalExtension::dsharp_at(const Vec& x) const {
  const bool xi = !omega.terms().empty() && omega.terms().front().mono.xideg() == 1;
  Vec a;
  Mat da;
  canonical_coeffs(*mfd, omega, x, xi, a, da);
  const int nn = mfd->n();
  PointSuperform r(nn);
  for (int k = 0; k < nn; ++k)
    for (int i = 0; i < nn; ++i) {
      if (da(i, k) == 0.0) continue;
      const auto gen = xi ? PointSuperform::dxi(nn, i) : PointSuperform::dx(nn, i);
      r += da(i, k) * wedge(PointSuperform::dxi(nn, k), gen);
    }
  return r;
}

PointSuperform covariant_dsharp_squared(const Manifold& mfd,
                                        const CanonicalExtension& a, const Vec& x) {
  const auto g = mfd.second_fundamental_at(x);
  const PointSuperform dsh = a.dsharp_at(x);
  PointSuperform r(mfd.n());
  for (int j = 0; j < mfd.p(); ++j) {
    const auto nj = PointSuperform::one_form(g.frame.normals.col(j));
    r += wedge(g.F[j], contract(nj, dsh));
  }
  return r;
}

// -- standard manifolds -------------------------------------------------------

namespace {

ScalarField radial_distance_2d(int n, double radius) {
  // sqrt(x1^2 + x2^2) - radius, on R^n
  return sqrt(coordinate(n, 0) * coordinate(n, 0) +
              coordinate(n, 1) * coordinate(n, 1)) -
         radius;
}

Manifold finish(Manifold mfd, const std::vector<int>& nodes) {
  mfd.build_mesh(nodes);
  return mfd;
}

}  // namespace

Manifold make_sphere(double radius, int mesh_theta, int mesh_phi) {
  Manifold mfd;
  mfd.chart.m = 2;
  mfd.chart.n = 3;
  const ScalarField th = coordinate(2, 0), ph = coordinate(2, 1);
  mfd.chart.phi = {radius * sin(th) * cos(ph), radius * sin(th) * sin(ph),
                   radius * cos(th)};
  mfd.chart.lo = Vec::Zero(2);
  mfd.chart.hi = Vec(2);
  mfd.chart.hi << M_PI, 2.0 * M_PI;
  mfd.chart.periodic = {false, true};
  mfd.chart.lo_interior = {true, false};  // theta poles are chart seams
  mfd.chart.hi_interior = {true, false};
  mfd.levelsets = {sqrt(squared_distance(3, Vec::Zero(3))) - radius};
  mfd.calibrated = true;
  return finish(std::move(mfd), {mesh_theta, mesh_phi});
}

Manifold make_circle_r2(double radius, int nodes) {
  Manifold mfd;
  mfd.chart.m = 1;
  mfd.chart.n = 2;
  const ScalarField u = coordinate(1, 0);
  mfd.chart.phi = {radius * cos(u), radius * sin(u)};
  mfd.chart.lo = Vec::Zero(1);
  mfd.chart.hi = Vec::Constant(1, 2.0 * M_PI);
  mfd.chart.periodic = {true};
  mfd.chart.lo_interior = {false};
  mfd.chart.hi_interior = {false};
  mfd.levelsets = {radial_distance_2d(2, radius)};
  mfd.calibrated = true;
  return finish(std::move(mfd), {nodes});
}

Manifold make_circle_r3(double radius, int nodes) {
  Manifold mfd;
  mfd.chart.m = 1;
  mfd.chart.n = 3;
  const ScalarField u = coordinate(1, 0);
  mfd.chart.phi = {radius * cos(u), radius * sin(u), constant_field(1, 0.0)};
  mfd.chart.lo = Vec::Zero(1);
  mfd.chart.hi = Vec::Constant(1, 2.0 * M_PI);
  mfd.chart.periodic = {true};
  mfd.chart.lo_interior = {false};
  mfd.chart.hi_interior = {false};
  mfd.levelsets = {radial_distance_2d(3, radius), coordinate(3, 2)};
  mfd.calibrated = true;
  return finish(std::move(mfd), {nodes});
}

Manifold make_cylinder(double radius, double half_height, int mesh_u, int mesh_v) {
  Manifold mfd;
  mfd.chart.m = 2;
  mfd.chart.n = 3;
  const ScalarField u = coordinate(2, 0), v = coordinate(2, 1);
  mfd.chart.phi = {radius * cos(u), radius * sin(u), v};
  mfd.chart.lo = Vec(2);
  mfd.chart.lo << 0.0, -half_height;
  mfd.chart.hi = Vec(2);
  mfd.chart.hi << 2.0 * M_PI, half_height;
  mfd.chart.periodic = {true, false};
  mfd.chart.lo_interior = {false, false};
  mfd.chart.hi_interior = {false, false};
  mfd.levelsets = {radial_distance_2d(3, radius)};
  mfd.calibrated = true;
  return finish(std::move(mfd), {mesh_u, mesh_v});
}

Manifold make_catenoid(double vmax, int mesh_u, int mesh_v) {
  Manifold mfd;
  mfd.chart.m = 2;
  mfd.chart.n = 3;
  const ScalarField u = coordinate(2, 0), v = coordinate(2, 1);
  mfd.chart.phi = {cosh(v) * cos(u), cosh(v) * sin(u), v};
  mfd.chart.lo = Vec(2);
  mfd.chart.lo << 0.0, -vmax;
  mfd.chart.hi = Vec(2);
  mfd.chart.hi << 2.0 * M_PI, vmax;
  mfd.chart.periodic = {true, false};
  mfd.chart.lo_interior = {false, false};
  mfd.chart.hi_interior = {false, false};
  // gradient has unit norm along the catenoid (sech^2 + tanh^2 = 1)
  mfd.levelsets = {sqrt(coordinate(3, 0) * coordinate(3, 0) +
                        coordinate(3, 1) * coordinate(3, 1)) /
                       cosh(coordinate(3, 2)) -
                   1.0};
  mfd.calibrated = true;
  return finish(std::move(mfd), {mesh_u, mesh_v});
}

Manifold make_helicoid(double umax, double vmax, int mesh_u, int mesh_v) {
  Manifold mfd;
  mfd.chart.m = 2;
  mfd.chart.n = 3;
  const ScalarField u = coordinate(2, 0), v = coordinate(2, 1);
  mfd.chart.phi = {u * cos(v), u * sin(v), v};
  mfd.chart.lo = Vec(2);
  mfd.chart.lo << -umax, -vmax;
  mfd.chart.hi = Vec(2);
  mfd.chart.hi << umax, vmax;
  mfd.chart.periodic = {false, false};
  mfd.chart.lo_interior = {false, false};
  mfd.chart.hi_interior = {false, false};
  const ScalarField x1 = coordinate(3, 0), x2 = coordinate(3, 1), x3 = coordinate(3, 2);
  // scaled so the gradient is unit along the helicoid
  mfd.levelsets = {(x1 * sin(x3) - x2 * cos(x3)) / sqrt(1.0 + x1 * x1 + x2 * x2)};
  mfd.calibrated = true;
  return finish(std::move(mfd), {mesh_u, mesh_v});
}

Manifold make_plane_patch(const Vec& c, const Vec& t1, const Vec& t2,
                          double halfwidth, int nodes) {
  if (c.size() != 3) throw std::invalid_argument("plane patch lives in R^3");
  Mat basis(3, 2);
  basis.col(0) = t1.normalized();
  Vec s2 = t2 - t2.dot(basis.col(0)) * basis.col(0);
  basis.col(1) = s2.normalized();
  Vec nu(3);
  nu << basis(1, 0) * basis(2, 1) - basis(2, 0) * basis(1, 1),
      basis(2, 0) * basis(0, 1) - basis(0, 0) * basis(2, 1),
      basis(0, 0) * basis(1, 1) - basis(1, 0) * basis(0, 1);
  Manifold mfd;
  mfd.chart.m = 2;
  mfd.chart.n = 3;
  const ScalarField u = coordinate(2, 0), v = coordinate(2, 1);
  mfd.chart.phi = {c[0] + basis(0, 0) * u + basis(0, 1) * v,
                   c[1] + basis(1, 0) * u + basis(1, 1) * v,
                   c[2] + basis(2, 0) * u + basis(2, 1) * v};
  mfd.chart.lo = Vec::Constant(2, -halfwidth);
  mfd.chart.hi = Vec::Constant(2, halfwidth);
  mfd.chart.periodic = {false, false};
  mfd.chart.lo_interior = {false, false};
  mfd.chart.hi_interior = {false, false};
  mfd.levelsets = {linear_field(nu, -nu.dot(c))};
  mfd.calibrated = true;
  return finish(std::move(mfd), {nodes, nodes});
}

Manifold make_torus(double major, double minor, int mesh_u, int mesh_v) {
  Manifold mfd;
  mfd.chart.m = 2;
  mfd.chart.n = 3;
  const ScalarField u = coordinate(2, 0), v = coordinate(2, 1);
  const ScalarField ring = major + minor * cos(u);
  mfd.chart.phi = {ring * cos(v), ring * sin(v), minor * sin(u)};
  mfd.chart.lo = Vec::Zero(2);
  mfd.chart.hi = Vec::Constant(2, 2.0 * M_PI);
  mfd.chart.periodic = {true, true};
  mfd.chart.lo_interior = {false, false};
  mfd.chart.hi_interior = {false, false};
  const ScalarField x1 = coordinate(3, 0), x2 = coordinate(3, 1), x3 = coordinate(3, 2);
  mfd.levelsets = {sqrt(pow(sqrt(x1 * x1 + x2 * x2) - major, 2.0) + x3 * x3) - minor};
  mfd.calibrated = true;
  return finish(std::move(mfd), {mesh_u, mesh_v});
}

Manifold make_graph(const ScalarField& f, const Vec& lo, const Vec& hi, int nodes) {
  if (f.dim() != 2) throw std::invalid_argument("graph height must be a field on R^2");
  Manifold mfd;
  mfd.chart.m = 2;
  mfd.chart.n = 3;
  mfd.chart.phi = {coordinate(2, 0), coordinate(2, 1), f};
  mfd.chart.lo = lo;
  mfd.chart.hi = hi;
  mfd.chart.periodic = {false, false};
  mfd.chart.lo_interior = {false, false};
  mfd.chart.hi_interior = {false, false};
  const ScalarField fx = compose(f, {coordinate(3, 0), coordinate(3, 1)});
  mfd.levelsets = {coordinate(3, 2) - fx};
  return finish(std::move(mfd), {nodes, nodes});
}

Manifold make_flat_disk(const Vec& c, const Vec& nu_in, double disk_radius,
                        int mesh_r, int mesh_angle) {
  if (c.size() != 3) throw std::invalid_argument("flat disk lives in R^3");
  const Vec nu = nu_in.norm() > 0 ? Vec(nu_in.normalized()) : Vec(Vec::Unit(3, 2));
  // deterministic orthonormal completion of nu
  Mat basis(3, 2);
  int filled = 0;
  for (int i = 0; i < 3 && filled < 2; ++i) {
    Vec cand = Vec::Unit(3, i);
    cand -= nu.dot(cand) * nu;
    for (int k = 0; k < filled; ++k) cand -= basis.col(k).dot(cand) * basis.col(k);
    if (cand.norm() > tol::pivot * 10) basis.col(filled++) = cand.normalized();
  }
  Manifold mfd;
  mfd.chart.m = 2;
  mfd.chart.n = 3;
  const ScalarField s = coordinate(2, 0), a = coordinate(2, 1);
  std::vector<ScalarField> phi;
  for (int i = 0; i < 3; ++i)
    phi.push_back(c[i] + basis(i, 0) * s * cos(a) + basis(i, 1) * s * sin(a));
  mfd.chart.phi = phi;
  mfd.chart.lo = Vec::Zero(2);
  mfd.chart.hi = Vec(2);
  mfd.chart.hi << disk_radius, 2.0 * M_PI;
  mfd.chart.periodic = {false, true};
  mfd.chart.lo_interior = {true, false};  // polar seam at s = 0
  mfd.chart.hi_interior = {false, false};
  mfd.levelsets = {linear_field(nu, -nu.dot(c))};
  mfd.calibrated = true;
  return finish(std::move(mfd), {mesh_r, mesh_angle});
}

}  // namespace superform
