// Second-order forward-mode value: f, grad f, Hess f propagated together.
// The `order` field truncates the computation (0: value, 1: +gradient,
// 2: +Hessian); operands of a binary op always carry the same order.
#pragma once

#include <cmath>

#include "superform/types.hpp"

namespace superform {

struct Jet {
  int order = 2;
  double v = 0.0;
  Vec g;  // size n when order >= 1
  Mat H;  // n x n when order == 2

  Jet() = default;

  static Jet constant(double c, int n, int order) {
    Jet j;
    j.order = order;
    j.v = c;
    if (order >= 1) j.g = Vec::Zero(n);
    if (order >= 2) j.H = Mat::Zero(n, n);
    return j;
  }

  static Jet variable(double value, int i, int n, int order) {
    Jet j = constant(value, n, order);
    if (order >= 1) j.g[i] = 1.0;
    return j;
  }

  int dim() const { return order >= 1 ? static_cast<int>(g.size()) : -1; }
};

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  r.order = std::min(a.order, b.order);
  r.v = a.v + b.v;
  if (r.order >= 1) r.g = a.g + b.g;
  if (r.order >= 2) r.H = a.H + b.H;
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  r.order = std::min(a.order, b.order);
  r.v = a.v - b.v;
  if (r.order >= 1) r.g = a.g - b.g;
  if (r.order >= 2) r.H = a.H - b.H;
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r = a;
  r.v = -r.v;
  if (r.order >= 1) r.g = -r.g;
  if (r.order >= 2) r.H = -r.H;
  return r;
}

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.order = std::min(a.order, b.order);
  r.v = a.v * b.v;
  if (r.order >= 1) r.g = a.g * b.v + b.g * a.v;
  if (r.order >= 2)
    r.H = a.H * b.v + b.H * a.v + a.g * b.g.transpose() + b.g * a.g.transpose();
  return r;
}

inline Jet operator*(const Jet& a, double c) {
  Jet r = a;
  r.v *= c;
  if (r.order >= 1) r.g *= c;
  if (r.order >= 2) r.H *= c;
  return r;
}
inline Jet operator*(double c, const Jet& a) { return a * c; }

// Smooth univariate composition: r = f(a) given f(a.v), f'(a.v), f''(a.v).
inline Jet compose1(const Jet& a, double f, double fp, double fpp) {
  Jet r;
  r.order = a.order;
  r.v = f;
  if (r.order >= 1) r.g = fp * a.g;
  if (r.order >= 2) r.H = fp * a.H + fpp * (a.g * a.g.transpose());
  return r;
}

inline Jet inverse(const Jet& a) {
  const double iv = 1.0 / a.v;
  return compose1(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.v);
  return compose1(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return compose1(a, e, e, e);
}

inline Jet log(const Jet& a) {
  return compose1(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

inline Jet sin(const Jet& a) {
  return compose1(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}

inline Jet cos(const Jet& a) {
  return compose1(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}

inline Jet sinh(const Jet& a) {
  return compose1(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v));
}

inline Jet cosh(const Jet& a) {
  return compose1(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v));
}

// a^c for real exponent c; integer exponents are valid for any base,
// fractional ones require a positive base.
inline Jet pow(const Jet& a, double c) {
  const double f = std::pow(a.v, c);
  const double fp = c * std::pow(a.v, c - 1.0);
  const double fpp = c * (c - 1.0) * std::pow(a.v, c - 2.0);
  return compose1(a, f, fp, fpp);
}

// |a|; derivatives taken on the smooth branch (undefined at 0).
inline Jet abs(const Jet& a) {
  const double s = a.v >= 0.0 ? 1.0 : -1.0;
  return compose1(a, std::fabs(a.v), s, 0.0);
}

}  // namespace superform
