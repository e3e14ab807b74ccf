// Superforms with point-dependent coefficients: the home of d and d-sharp.
//
// Coefficients are ScalarFields (never functions of xi), so d, d-sharp and
// d d-sharp evaluate exactly through the jet machinery. The differential
// operators are pointwise: they return the value of the derived form at a
// point, which is all the quadrature layers need.
#pragma once

#include <functional>
#include <vector>

#include "superform/algebra.hpp"
#include "superform/scalar_field.hpp"

namespace superform {

class FormField {
 public:
  struct Term {
    IndexPair mono;
    ScalarField coeff;
  };

  FormField() = default;
  explicit FormField(int dim) : dim_(dim) { check_dim(dim); }

  static FormField from_scalar(const ScalarField& f);
  // constant-coefficient form
  static FormField constant(const PointSuperform& a);
  // single term c(x) dx_I ^ dxi_J
  static FormField term(int dim, IndexPair mono, const ScalarField& coeff);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  void add_term(IndexPair mono, const ScalarField& coeff);

  PointSuperform value(const Vec& x) const;

  // d a = sum dc/dx_k dx_k ^ dx_I ^ dxi_J
  PointSuperform d_at(const Vec& x) const;
  // d# a = sum dc/dx_k dxi_k ^ dx_I ^ dxi_J
  PointSuperform dsharp_at(const Vec& x) const;
  // d(d# a), assembled from coefficient Hessians
  PointSuperform ddsharp_at(const Vec& x) const;

  FormField jmap() const;
  FormField wedge_with(const FormField& other) const;
  FormField wedge_const(const PointSuperform& other) const;  // on the right
  FormField scaled(const ScalarField& f) const;
  FormField operator+(const FormField& other) const;
  FormField operator*(double c) const;
  // contraction by a constant 1-form
  FormField contracted(const PointSuperform& c) const;
  // contraction by a vector field (index lowering)
  FormField contracted_vector(const VectorField& v) const;

 private:
  int dim_ = 0;
  std::vector<Term> terms_;
};

// d d-sharp of a scalar: the Hessian as a (1,1)-form.
PointSuperform ddsharp(const ScalarField& phi, const Vec& x);
// d of a scalar as a (1,0)-form, d-sharp as a (0,1)-form.
PointSuperform d_scalar(const ScalarField& phi, const Vec& x);
PointSuperform dsharp_scalar(const ScalarField& phi, const Vec& x);

// Cartan formula: L_V a = d(V _| a) + V _| d a, evaluated at x.
PointSuperform lie_derivative(const VectorField& v, const FormField& a, const Vec& x);

// -- smooth maps and pullbacks ------------------------------------------------

struct SmoothMap {
  std::vector<ScalarField> comps;  // each on the source space

  int src_dim() const { return comps.empty() ? 0 : comps.front().dim(); }
  int dst_dim() const { return static_cast<int>(comps.size()); }
  Vec value(const Vec& x) const;
  Mat jacobian(const Vec& x) const;  // dst x src
};

SmoothMap identity_map(int n);
SmoothMap translation_map(int n, const Vec& a);
SmoothMap linear_map(const Mat& a_matrix);

// G*(a) at x: classical pullback on the dx factors, dxi factors invariant.
// Throws when the Jacobian is singular at x (not a local diffeomorphism).
PointSuperform diffeo_pullback_at(const SmoothMap& g, const FormField& a, const Vec& x);

// Flow of a vector field by classic RK4 with `steps` substeps; used by the
// Lie-derivative property checks.
Vec flow_rk4(const VectorField& v, const Vec& x0, double t, int steps);

}  // namespace superform
