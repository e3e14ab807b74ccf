// Pointwise bigraded exterior algebra over R^n.
//
// Generators dx_1..dx_n and dxi_1..dxi_n all anticommute. A monomial is a
// pair of bitmasks (I, J) standing for dx_I ^ dxi_J in canonical order:
// dx factors first, ascending, then dxi factors, ascending. Every sign in
// the library is defined relative to that order.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "superform/rng.hpp"
#include "superform/types.hpp"

namespace superform {

struct IndexPair {
  std::uint16_t xmask = 0;   // the I of dx_I
  std::uint16_t ximask = 0;  // the J of dxi_J

  int xdeg() const { return __builtin_popcount(xmask); }
  int xideg() const { return __builtin_popcount(ximask); }
  int degree() const { return xdeg() + xideg(); }

  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

// Number of inversions when the ascending word of mask b is appended to the
// ascending word of mask a and the result is resorted.
int merge_inversions(std::uint32_t a, std::uint32_t b);

class PointSuperform {
 public:
  PointSuperform() = default;
  explicit PointSuperform(int dim) : dim_(dim) { check_dim(dim); }

  static PointSuperform zero(int dim) { return PointSuperform(dim); }
  static PointSuperform one(int dim);
  static PointSuperform monomial(int dim, IndexPair m, double c = 1.0);
  static PointSuperform dx(int dim, int i);
  static PointSuperform dxi(int dim, int i);
  // (1,0)-form with the given coefficients
  static PointSuperform one_form(const Vec& coeffs);
  // (0,1)-form with the given coefficients
  static PointSuperform one_form_xi(const Vec& coeffs);
  // (1,1)-form sum_ij M(i,j) dx_i ^ dxi_j
  static PointSuperform from_matrix(const Mat& m);
  // beta = sum_j dx_j ^ dxi_j
  static PointSuperform kaehler(int dim);

  int dim() const { return dim_; }
  bool empty() const { return terms_.empty(); }
  const std::map<IndexPair, double>& terms() const { return terms_; }

  double coeff(IndexPair m) const;
  void add_term(IndexPair m, double c);  // accumulates, drops exact zeros
  void prune(double eps);

  bool is_homogeneous() const;  // single bidegree across all terms
  // bidegree of a homogeneous form; throws on mixed degrees
  std::pair<int, int> bidegree() const;

  // matrix of a (1,1)-form: M(i,j) = coeff of dx_i ^ dxi_j
  Mat matrix_11() const;

  double max_abs_coeff() const;

  PointSuperform& operator+=(const PointSuperform& o);
  PointSuperform& operator-=(const PointSuperform& o);
  PointSuperform& operator*=(double c);
  friend PointSuperform operator+(PointSuperform a, const PointSuperform& b) { return a += b; }
  friend PointSuperform operator-(PointSuperform a, const PointSuperform& b) { return a -= b; }
  friend PointSuperform operator*(PointSuperform a, double c) { return a *= c; }
  friend PointSuperform operator*(double c, PointSuperform a) { return a *= c; }
  friend PointSuperform operator-(PointSuperform a) { return a *= -1.0; }

  std::string to_string() const;

 private:
  int dim_ = 0;
  std::map<IndexPair, double> terms_;
};

// -- operations ---------------------------------------------------------------

PointSuperform wedge(const PointSuperform& a, const PointSuperform& b);
PointSuperform wedge_power(const PointSuperform& a, int k);

// J(dx_i) = dxi_i, J(dxi_i) = -dx_i, extended multiplicatively.
PointSuperform apply_j(const PointSuperform& a);
// a# = J(a); conventional for (p,0)-forms.
inline PointSuperform sharp(const PointSuperform& a) { return apply_j(a); }

// Contraction by a 1-form (bidegree (1,0) or (0,1) or a mix), defined as the
// adjoint of exterior multiplication for the orthonormal monomial basis.
PointSuperform contract(const PointSuperform& c, const PointSuperform& a);
// Vector fields act by index lowering with the Euclidean metric.
PointSuperform contract_vector(const Vec& v, const PointSuperform& a);

// F cup a = -sum_ij F_ij dxi_j ^ (dx_i _| a), for F of bidegree (1,1).
PointSuperform cup(const PointSuperform& f, const PointSuperform& a);

// Coefficient a0 of the interleaved top monomial dx_1^dxi_1^...^dx_n^dxi_n,
// i.e. the Lebesgue density of the superintegral. 0 when no top term.
double berezin_top(const PointSuperform& a);

// Pull back under the linear map with matrix A (dim(a) x m): substitutes
// dx_i -> sum_k A(i,k) du_k and dxi_i -> sum_k A(i,k) dv_k.
PointSuperform pullback_linear(const Mat& a_matrix, const PointSuperform& a);

// sum_k e_k^T F e_k for a (1,1)-form F and orthonormal columns e_k.
double trace_restricted(const PointSuperform& f, const Mat& basis);

// Positivity of a symmetric (1,1)-form: smallest eigenvalue >= -tau.
bool is_positive_11(const PointSuperform& f, double tau = tol::psd);

// One-sided sampling test of weak positivity for a (k,k)-form: wedges with
// `trials` random simple positive complements and checks the top sign.
bool is_weakly_positive(const PointSuperform& a, int trials, std::uint64_t seed,
                        double tau = tol::psd);

// JSON term list [{"I":[...],"J":[...],"c":...},...] for test fixtures.
std::string to_json(const PointSuperform& a);
PointSuperform superform_from_json(int dim, const std::string& json_text);

}  // namespace superform
