// Quadrature rules and superintegration of top-bidegree form evaluators.
#pragma once

#include <functional>
#include <vector>

#include "superform/form_field.hpp"
#include "superform/types.hpp"

namespace superform {

struct Rule1D {
  std::vector<double> nodes;    // in [lo, hi]
  std::vector<double> weights;
};

// Gauss-Legendre on [lo, hi].
Rule1D gauss_legendre(int n, double lo, double hi);
// Midpoint rule; spectrally accurate for periodic integrands on the period.
Rule1D periodic_uniform(int n, double lo, double hi);
// Composite Simpson (n made odd if necessary).
Rule1D simpson(int n, double lo, double hi);

struct QuadNode {
  Vec x;
  double w;
};

// Tensor product over a box.
std::vector<QuadNode> tensor_rule(const std::vector<Rule1D>& axes);
std::vector<QuadNode> box_rule(const Vec& lo, const Vec& hi, int nodes_per_axis);
// Polar/spherical product rules over a ball (n = 1, 2, 3).
std::vector<QuadNode> ball_rule(const Vec& center, double radius, int order);

using FormEvaluator = std::function<PointSuperform(const Vec&)>;

// Integral of the Berezin density of an (n,n)-evaluator over the rule.
double superintegrate(const FormEvaluator& f, const std::vector<QuadNode>& rule);
double superintegrate_box(const FormEvaluator& f, const Vec& lo, const Vec& hi,
                          int nodes_per_axis);
double superintegrate_ball(const FormEvaluator& f, const Vec& center,
                           double radius, int order);

// Block-deterministic parallel sum of f(i) for i in [0, count): results are
// identical for any thread count.
double parallel_sum(std::size_t count, const std::function<double(std::size_t)>& f,
                    int threads);

// Thread count used by the pairing loops (set from the CLI flag or the
// SUPERFORM_THREADS environment variable; defaults to 1).
int active_threads();
void set_active_threads(int k);

}  // namespace superform
