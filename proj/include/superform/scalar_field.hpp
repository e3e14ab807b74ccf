// Scalar fields on R^n with value / gradient / Hessian access.
//
// A field is an immutable expression tree evaluated with second-order
// forward jets, so every built-in family (polynomials, the smoothed radial
// kernels, bumps, compositions) reports exact derivatives. Fields built
// from plain callables fall back to central finite differences.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "superform/jet.hpp"
#include "superform/types.hpp"

namespace superform {

class FieldNode {
 public:
  virtual ~FieldNode() = default;
  virtual Jet eval(const Vec& x, int order) const = 0;
};

class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(std::shared_ptr<const FieldNode> node, int dim)
      : node_(std::move(node)), dim_(dim) {}

  bool valid() const { return node_ != nullptr; }
  int dim() const { return dim_; }

  Jet jet(const Vec& x, int order = 2) const { return node_->eval(x, order); }
  double value(const Vec& x) const { return node_->eval(x, 0).v; }
  Vec gradient(const Vec& x) const { return node_->eval(x, 1).g; }
  Mat hessian(const Vec& x) const { return node_->eval(x, 2).H; }

  const std::shared_ptr<const FieldNode>& node() const { return node_; }

 private:
  std::shared_ptr<const FieldNode> node_;
  int dim_ = 0;
};

// -- constructors -----------------------------------------------------------

ScalarField constant_field(int n, double c);
ScalarField coordinate(int n, int i);
// a . x + b
ScalarField linear_field(const Vec& a, double b);
// |x - a|^2
ScalarField squared_distance(int n, const Vec& a);
// |x - a|_delta = sqrt(|x - a|^2 + delta)
ScalarField smoothed_norm(int n, const Vec& a, double delta);
// E_{p,delta} centered at a: -(1/p)|x-a|_delta^{-p} for p > 0, log|x-a|_delta
// for p = 0. Smooth everywhere when delta > 0.
ScalarField radial_kernel(int n, int p, double delta, const Vec& a);
// C-infinity bump: exp(1 - 1/(1 - s)) with s = |x-c|^2/r^2, zero for s >= 1.
ScalarField bump_field(int n, const Vec& c, double r);
// f given by a callable; derivatives by central differences with
// h = eps^{1/3} max(1,|x_i|).
ScalarField numeric_field(int n, std::function<double(const Vec&)> f);

// -- combinators -------------------------------------------------------------

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator+(const ScalarField& a, double c);
ScalarField operator+(double c, const ScalarField& a);
ScalarField operator-(const ScalarField& a, double c);
ScalarField operator-(double c, const ScalarField& a);
ScalarField operator*(const ScalarField& a, double c);
ScalarField operator*(double c, const ScalarField& a);
ScalarField operator/(const ScalarField& a, double c);

ScalarField pow(const ScalarField& a, double c);
ScalarField pow(const ScalarField& a, const ScalarField& b);
ScalarField sqrt(const ScalarField& a);
ScalarField exp(const ScalarField& a);
ScalarField log(const ScalarField& a);
ScalarField sin(const ScalarField& a);
ScalarField cos(const ScalarField& a);
ScalarField sinh(const ScalarField& a);
ScalarField cosh(const ScalarField& a);
ScalarField abs(const ScalarField& a);
// max of several fields; derivatives follow the leading branch.
ScalarField max_field(std::vector<ScalarField> args);

// f on R^k composed with k fields on R^n (exact second-order chain rule).
ScalarField compose(const ScalarField& f, const std::vector<ScalarField>& g);
// f(x - a)
ScalarField translate(const ScalarField& f, const Vec& a);

// -- vector fields -----------------------------------------------------------

struct VectorField {
  std::vector<ScalarField> comps;

  int dim() const { return comps.empty() ? 0 : comps.front().dim(); }
  int size() const { return static_cast<int>(comps.size()); }

  Vec value(const Vec& x) const {
    Vec v(size());
    for (int i = 0; i < size(); ++i) v[i] = comps[i].value(x);
    return v;
  }
  // rows indexed by component, columns by x-derivative
  Mat jacobian(const Vec& x) const {
    Mat J(size(), dim());
    for (int i = 0; i < size(); ++i) J.row(i) = comps[i].gradient(x).transpose();
    return J;
  }
};

VectorField constant_vector_field(int n, const Vec& v);
// the identity/position field x
VectorField position_field(int n);

}  // namespace superform
