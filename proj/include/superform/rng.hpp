// Seeded random helpers with a fixed cross-platform sequence.
// std:: distributions are implementation-defined, so the transforms live here:
// reports must be byte-identical for a given seed.
#pragma once

#include <cstdint>
#include <random>

#include "superform/types.hpp"

namespace superform {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    // 53-bit mantissa draw
    const std::uint64_t r = gen_() >> 11;
    const double u = static_cast<double>(r) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  double normal() {
    // Marsaglia polar method, cached spare
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform(-1.0, 1.0);
      v = uniform(-1.0, 1.0);
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Vec vector(int n, double lo = -1.0, double hi = 1.0) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Vec gaussian_vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  Vec unit_vector(int n) {
    Vec v = gaussian_vector(n);
    double norm = v.norm();
    while (norm < 1e-12) {
      v = gaussian_vector(n);
      norm = v.norm();
    }
    return v / norm;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace superform
