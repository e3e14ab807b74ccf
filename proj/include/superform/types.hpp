// Shared aliases, dimension limits and default tolerances.
#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace superform {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Bitmask index pairs use 16-bit words; the library itself is capped lower.
inline constexpr int kMaxDim = 12;

inline void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("ambient dimension must be in [1, 12]");
}

// Default tolerances. Experiment configs may override the quadrature one.
namespace tol {
inline constexpr double alg = 1e-10;     // pointwise algebra identities
inline constexpr double psd = 1e-9;      // eigenvalue positivity slack
inline constexpr double quad = 1e-3;     // relative, quadrature comparisons
inline constexpr double flow = 1e-4;     // Lie/flow finite-difference match
inline constexpr double der = 1e-6;      // relative, derivative consistency
inline constexpr double frame = 1e-6;    // frame orthonormality / restriction
inline constexpr double geom = 1e-6;     // closed-form geometry comparisons
inline constexpr double minimal = 1e-4;  // minimality residuals
inline constexpr double mono = 1e-3;     // relative, monotonicity ladders
inline constexpr double bd = 1e-6;       // boundary-condition samples
inline constexpr double tube = 1e-3;     // relative, tube route agreement
inline constexpr double pivot = 1e-8;    // Gram-Schmidt rank pivot
}  // namespace tol

// c(n) = (-1)^{n(n-1)/2}; the sign making top-degree superintegrals of
// positive densities positive.
inline double volume_constant(int n) {
  return ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
}

// Volume of the unit ball in R^m.
double unit_ball_volume(int m);

}  // namespace superform
