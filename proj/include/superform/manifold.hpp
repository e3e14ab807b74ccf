// Embedded submanifolds of R^n and their supercurrents.
//
// A manifold carries two views: a chart (the quadrature home) and optional
// level-set functions (the home of conormal frames and second fundamental
// forms). The frame fields normalize the level-set gradients everywhere, not
// just on M, so F_j = d n_j# is a well-defined (1,1)-form field near M; all
// reported quantities are tangentially restricted.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "superform/form_field.hpp"
#include "superform/quadrature.hpp"

namespace superform {

struct Chart {
  int m = 0;  // intrinsic dimension
  int n = 0;  // ambient dimension
  std::vector<ScalarField> phi;  // n components on R^m
  Vec lo, hi;
  std::vector<bool> periodic;
  // faces that are chart seams (polar axes and the like), not manifold
  // boundary; coverage checks skip them
  std::vector<bool> lo_interior, hi_interior;
};

struct MeshNode {
  Vec u;        // parameter point
  double w;     // parameter weight
  Vec x;        // Phi(u)
  Mat dphi;     // n x m
  Mat tangent;  // n x m orthonormal (Gram-Schmidt of dphi columns, in order)
  double area;  // w * sqrt(det(dphi^T dphi))
};

struct ConormalFrame {
  Mat normals;                // n x p, column j = n_j
  std::vector<Mat> dnormals;  // p matrices; dnormals[j](i,k) = d(n_j)_i / dx_k
  Mat tangents;               // n x m orthonormal completion
};

struct SecondFundamentalData {
  ConormalFrame frame;
  std::vector<PointSuperform> F;  // F_j = d n_j#, bidegree (1,1)
  Vec H;                          // H_j = tr'(F_j)
};

class Manifold {
 public:
  Chart chart;
  std::vector<ScalarField> levelsets;  // p fields on R^n; may be empty
  // true when the level-set gradients are orthonormal along M (the exact
  // frames of the restriction lemma); the standard zoo arranges this
  bool calibrated = false;

  int m() const { return chart.m; }
  int n() const { return chart.n; }
  int p() const { return chart.n - chart.m; }

  void build_mesh(const std::vector<int>& nodes_per_axis);
  const std::vector<MeshNode>& mesh() const { return mesh_; }

  bool has_levelsets() const { return !levelsets.empty(); }

  // frames from the level-set view; throws on rank deficiency
  ConormalFrame frame_at(const Vec& x, bool with_derivatives = true) const;
  SecondFundamentalData second_fundamental_at(const Vec& x) const;
  // F_j built from the raw level-set gradients n_j = d rho_j (exact forms,
  // symmetric coefficient matrices); meaningful on calibrated manifolds
  SecondFundamentalData raw_second_fundamental_at(const Vec& x) const;

  // cached geometry at mesh nodes (built on first use)
  const SecondFundamentalData& node_geometry(std::size_t i) const;

  // density of [M]_s with respect to surface measure: c_p n ^ n#
  PointSuperform current_density(std::size_t node_index) const;

 private:
  std::vector<MeshNode> mesh_;
  mutable std::vector<std::optional<SecondFundamentalData>> geom_cache_;
};

// -- supercurrent pairings ----------------------------------------------------

// <[M]_s, alpha>: restrict alpha through the orthonormal tangent map at each
// node, take the R^m Berezin density, integrate against surface measure.
double supercurrent_pair(const Manifold& mfd, const FormEvaluator& alpha);
double supercurrent_pair(const Manifold& mfd, const PointSuperform& alpha_const);
// node-indexed variant for integrands built from cached geometry
double supercurrent_pair_node(const Manifold& mfd,
                              const std::function<PointSuperform(std::size_t)>& alpha);

// generic surface integral of a scalar node functional
double integrate_nodes(const Manifold& mfd,
                       const std::function<double(std::size_t)>& density);

// <[M]_s, alpha> through the density c_p n ^ n# and the ambient Berezin
// top; equals supercurrent_pair (cross-validation of the two views).
double supercurrent_pair_density(const Manifold& mfd, const FormEvaluator& alpha);

// <d[M]_s, psi> = -<[M]_s, d psi> for psi of bidegree (m-1, m)
double pair_d_current(const Manifold& mfd, const FormField& psi);
// <F [M]_s, psi> with F = sum_j F_j (x) n_j# _|
double pair_fcal(const Manifold& mfd, const FormField& psi);
// <d# [M]_s, psi> = -<[M]_s, d# psi>
double pair_dsharp_current(const Manifold& mfd, const FormField& psi);
// <F# [M]_s, psi> with F# = sum_j F_j (x) n_j _|
double pair_fcal_sharp(const Manifold& mfd, const FormField& psi);

// pointwise actions of the shape operators on forms
PointSuperform fcal_apply(const SecondFundamentalData& g, const PointSuperform& a);
PointSuperform fcal_sharp_apply(const SecondFundamentalData& g, const PointSuperform& a);

// -- covariant operators and curvature ---------------------------------------

// D# a = d# a + F# a at x
PointSuperform covariant_dsharp_at(const Manifold& mfd, const FormField& a, const Vec& x);

// R = (1/2) sum_j F_j ^ F_j
PointSuperform curvature_form(const SecondFundamentalData& g);
PointSuperform curvature_form_at(const Manifold& mfd, const Vec& x);

// Canonical extension of a (1,0)- or (0,1)-form field: pointwise projection
// removing all n_j and n_j# components, with exact first derivatives.
struct CanonicalExtension {
  const Manifold* mfd;
  FormField omega;  // ambient input, bidegree (1,0) or (0,1)

  PointSuperform value_at(const Vec& x) const;
  PointSuperform d_at(const Vec& x) const;
  PointSuperform dsharp_at(const Vec& x) const;
};

// (D#)^2 a for a canonically extended: sum_j F_j ^ (n_j _| d# a)
PointSuperform covariant_dsharp_squared(const Manifold& mfd,
                                        const CanonicalExtension& a, const Vec& x);

// -- standard manifolds -------------------------------------------------------

struct MeshOrder {
  int per_axis = 32;
};

Manifold make_sphere(double radius, int mesh_theta = 32, int mesh_phi = 32);
Manifold make_circle_r2(double radius, int nodes = 128);
Manifold make_circle_r3(double radius, int nodes = 128);
Manifold make_cylinder(double radius, double half_height, int mesh_u = 48, int mesh_v = 24);
Manifold make_catenoid(double vmax, int mesh_u = 48, int mesh_v = 32);
Manifold make_helicoid(double umax, double vmax, int mesh_u = 32, int mesh_v = 32);
// affine plane patch x = c + u t1 + v t2, |u|,|v| <= halfwidth
Manifold make_plane_patch(const Vec& c, const Vec& t1, const Vec& t2,
                          double halfwidth, int nodes = 32);
Manifold make_torus(double major, double minor, int mesh_u = 32, int mesh_v = 48);
// graph x3 = f(x1, x2) over [lo, hi]^2 (f on R^2)
Manifold make_graph(const ScalarField& f, const Vec& lo, const Vec& hi,
                    int nodes = 32);
// flat disk of given radius centered at c with unit normal nu (polar chart)
Manifold make_flat_disk(const Vec& c, const Vec& nu, double disk_radius,
                        int mesh_r = 32, int mesh_angle = 64);

}  // namespace superform
