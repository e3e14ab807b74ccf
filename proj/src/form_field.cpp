#include "superform/form_field.hpp"

#include <cmath>
#include <stdexcept>

namespace superform {

FormField FormField::from_scalar(const ScalarField& f) {
  FormField a(f.dim());
  a.add_term({0, 0}, f);
  return a;
}

FormField FormField::constant(const PointSuperform& a) {
  FormField f(a.dim());
  for (const auto& [m, c] : a.terms())
    f.add_term(m, constant_field(a.dim(), c));
  return f;
}

FormField FormField::term(int dim, IndexPair mono, const ScalarField& coeff) {
  FormField f(dim);
  f.add_term(mono, coeff);
  return f;
}

void FormField::add_term(IndexPair mono, const ScalarField& coeff) {
  if (coeff.dim() != dim_)
    throw std::invalid_argument("form term coefficient has wrong dimension");
  terms_.push_back({mono, coeff});
}

PointSuperform FormField::value(const Vec& x) const {
  PointSuperform r(dim_);
  for (const auto& t : terms_) r.add_term(t.mono, t.coeff.value(x));
  return r;
}

PointSuperform FormField::d_at(const Vec& x) const {
  PointSuperform r(dim_);
  for (const auto& t : terms_) {
    const Vec g = t.coeff.gradient(x);
    for (int k = 0; k < dim_; ++k) {
      if (g[k] == 0.0) continue;
      if (t.mono.xmask & (1u << k)) continue;
      // dx_k ^ dx_I ^ dxi_J
      const int inv = merge_inversions(1u << k, t.mono.xmask);
      const double sign = (inv % 2 == 0) ? 1.0 : -1.0;
      r.add_term({static_cast<std::uint16_t>(t.mono.xmask | (1u << k)), t.mono.ximask},
                 sign * g[k]);
    }
  }
  return r;
}

PointSuperform FormField::dsharp_at(const Vec& x) const {
  PointSuperform r(dim_);
  for (const auto& t : terms_) {
    const Vec g = t.coeff.gradient(x);
    const int p = t.mono.xdeg();
    for (int k = 0; k < dim_; ++k) {
      if (g[k] == 0.0) continue;
      if (t.mono.ximask & (1u << k)) continue;
      // dxi_k ^ dx_I ^ dxi_J: past the dx block, then into the dxi block
      const int inv = p + merge_inversions(1u << k, t.mono.ximask);
      const double sign = (inv % 2 == 0) ? 1.0 : -1.0;
      r.add_term({t.mono.xmask, static_cast<std::uint16_t>(t.mono.ximask | (1u << k))},
                 sign * g[k]);
    }
  }
  return r;
}

PointSuperform FormField::ddsharp_at(const Vec& x) const {
  PointSuperform r(dim_);
  for (const auto& t : terms_) {
    const Mat h = t.coeff.hessian(x);
    const int p = t.mono.xdeg();
    for (int k = 0; k < dim_; ++k) {
      if (t.mono.ximask & (1u << k)) continue;
      const IndexPair mk{t.mono.xmask,
                         static_cast<std::uint16_t>(t.mono.ximask | (1u << k))};
      const int invk = p + merge_inversions(1u << k, t.mono.ximask);
      for (int l = 0; l < dim_; ++l) {
        if (h(l, k) == 0.0) continue;
        if (mk.xmask & (1u << l)) continue;
        const int invl = merge_inversions(1u << l, mk.xmask);
        const double sign = ((invk + invl) % 2 == 0) ? 1.0 : -1.0;
        r.add_term({static_cast<std::uint16_t>(mk.xmask | (1u << l)), mk.ximask},
                   sign * h(l, k));
      }
    }
  }
  return r;
}

FormField FormField::jmap() const {
  FormField r(dim_);
  for (const auto& t : terms_) {
    const int p = t.mono.xdeg(), q = t.mono.xideg();
    const double s = ((q + p * q) % 2 == 0) ? 1.0 : -1.0;
    r.add_term({t.mono.ximask, t.mono.xmask}, t.coeff * s);
  }
  return r;
}

FormField FormField::wedge_with(const FormField& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("wedge: dimension mismatch");
  FormField r(dim_);
  for (const auto& ta : terms_) {
    for (const auto& tb : other.terms_) {
      const PointSuperform prod =
          wedge(PointSuperform::monomial(dim_, ta.mono),
                PointSuperform::monomial(dim_, tb.mono));
      if (prod.empty()) continue;
      const auto& [m, s] = *prod.terms().begin();
      r.add_term(m, (ta.coeff * tb.coeff) * s);
    }
  }
  return r;
}

FormField FormField::wedge_const(const PointSuperform& other) const {
  return wedge_with(FormField::constant(other));
}

FormField FormField::scaled(const ScalarField& f) const {
  FormField r(dim_);
  for (const auto& t : terms_) r.add_term(t.mono, t.coeff * f);
  return r;
}

FormField FormField::operator+(const FormField& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("sum: dimension mismatch");
  FormField r = *this;
  for (const auto& t : other.terms_) r.terms_.push_back(t);
  return r;
}

FormField FormField::operator*(double c) const {
  FormField r(dim_);
  for (const auto& t : terms_) r.add_term(t.mono, t.coeff * c);
  return r;
}

FormField FormField::contracted(const PointSuperform& c) const {
  FormField r(dim_);
  for (const auto& t : terms_) {
    const PointSuperform piece =
        contract(c, PointSuperform::monomial(dim_, t.mono));
    for (const auto& [m, s] : piece.terms()) r.add_term(m, t.coeff * s);
  }
  return r;
}

FormField FormField::contracted_vector(const VectorField& v) const {
  FormField r(dim_);
  for (int i = 0; i < v.size(); ++i) {
    const PointSuperform ei = PointSuperform::dx(dim_, i);
    for (const auto& t : terms_) {
      const PointSuperform piece =
          contract(ei, PointSuperform::monomial(dim_, t.mono));
      for (const auto& [m, s] : piece.terms())
        r.add_term(m, (t.coeff * v.comps[i]) * s);
    }
  }
  return r;
}

PointSuperform ddsharp(const ScalarField& phi, const Vec& x) {
  return PointSuperform::from_matrix(phi.hessian(x));
}

PointSuperform d_scalar(const ScalarField& phi, const Vec& x) {
  return PointSuperform::one_form(phi.gradient(x));
}

PointSuperform dsharp_scalar(const ScalarField& phi, const Vec& x) {
  return PointSuperform::one_form_xi(phi.gradient(x));
}

PointSuperform lie_derivative(const VectorField& v, const FormField& a, const Vec& x) {
  const FormField va = a.contracted_vector(v);
  const PointSuperform first = va.d_at(x);
  const PointSuperform second = contract_vector(v.value(x), a.d_at(x));
  return first + second;
}

Vec SmoothMap::value(const Vec& x) const {
  Vec y(dst_dim());
  for (int i = 0; i < dst_dim(); ++i) y[i] = comps[i].value(x);
  return y;
}

Mat SmoothMap::jacobian(const Vec& x) const {
  Mat j(dst_dim(), src_dim());
  for (int i = 0; i < dst_dim(); ++i) j.row(i) = comps[i].gradient(x).transpose();
  return j;
}

SmoothMap identity_map(int n) {
  SmoothMap g;
  for (int i = 0; i < n; ++i) g.comps.push_back(coordinate(n, i));
  return g;
}

SmoothMap translation_map(int n, const Vec& a) {
  SmoothMap g;
  for (int i = 0; i < n; ++i) g.comps.push_back(coordinate(n, i) + a[i]);
  return g;
}

SmoothMap linear_map(const Mat& a_matrix) {
  SmoothMap g;
  const int n = static_cast<int>(a_matrix.cols());
  for (int i = 0; i < a_matrix.rows(); ++i)
    g.comps.push_back(linear_field(a_matrix.row(i).transpose(), 0.0));
  (void)n;
  return g;
}

PointSuperform diffeo_pullback_at(const SmoothMap& g, const FormField& a, const Vec& x) {
  if (g.dst_dim() != a.dim() || g.src_dim() != g.dst_dim())
    throw std::invalid_argument("diffeo_pullback: dimension mismatch");
  const int n = a.dim();
  const Mat jac = g.jacobian(x);
  if (std::fabs(jac.determinant()) < 1e-12)
    throw std::runtime_error("diffeo_pullback: singular Jacobian at evaluation point");
  const Vec y = g.value(x);

  std::vector<PointSuperform> dx_img;
  dx_img.reserve(n);
  for (int i = 0; i < n; ++i)
    dx_img.push_back(PointSuperform::one_form(jac.row(i).transpose()));

  PointSuperform r(n);
  for (const auto& t : a.terms()) {
    PointSuperform term = PointSuperform::one(n) * t.coeff.value(y);
    for (int i = 0; i < n && !term.empty(); ++i)
      if (t.mono.xmask & (1u << i)) term = wedge(term, dx_img[i]);
    // dxi factors are left invariant
    if (t.mono.ximask)
      term = wedge(term, PointSuperform::monomial(n, {0, t.mono.ximask}));
    r += term;
  }
  return r;
}

Vec flow_rk4(const VectorField& v, const Vec& x0, double t, int steps) {
  Vec x = x0;
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Vec k1 = v.value(x);
    const Vec k2 = v.value(x + 0.5 * h * k1);
    const Vec k3 = v.value(x + 0.5 * h * k2);
    const Vec k4 = v.value(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

}  // namespace superform
