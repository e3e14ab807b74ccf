#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "superform/algebra.hpp"
#include "superform/rng.hpp"

using namespace superform;

namespace {

PointSuperform random_monomial(Rng& rng, int n, double& coeff) {
  IndexPair m;
  m.xmask = static_cast<std::uint16_t>(rng.raw() & ((1u << n) - 1));
  m.ximask = static_cast<std::uint16_t>(rng.raw() & ((1u << n) - 1));
  coeff = rng.uniform(-2.0, 2.0);
  return PointSuperform::monomial(n, m, coeff);
}

PointSuperform random_form(Rng& rng, int n, int nterms) {
  PointSuperform f(n);
  for (int t = 0; t < nterms; ++t) {
    double c;
    f += random_monomial(rng, n, c);
  }
  return f;
}

double max_diff(const PointSuperform& a, const PointSuperform& b) {
  PointSuperform d = a - b;
  return d.max_abs_coeff();
}

}  // namespace

TEST_CASE("wedge of a generator with itself vanishes") {
  const auto dx1 = PointSuperform::dx(3, 0);
  CHECK(wedge(dx1, dx1).empty());
  const auto dxi2 = PointSuperform::dxi(3, 1);
  CHECK(wedge(dxi2, dxi2).empty());
}

TEST_CASE("even-degree forms commute") {
  const auto a = wedge(PointSuperform::dx(3, 0), PointSuperform::dxi(3, 0));
  const auto b = wedge(PointSuperform::dx(3, 1), PointSuperform::dxi(3, 1));
  CHECK(max_diff(wedge(a, b), wedge(b, a)) == 0.0);
}

TEST_CASE("bilinearity and order sign for 1-forms") {
  const int n = 2;
  const auto dx1 = PointSuperform::dx(n, 0);
  const auto dx2 = PointSuperform::dx(n, 1);
  const auto dxi1 = PointSuperform::dxi(n, 0);
  const auto sum = dx1 + dx2;
  const auto left = wedge(sum, dxi1);
  PointSuperform expect(n);
  expect.add_term({1, 1}, 1.0);   // dx1 ^ dxi1
  expect.add_term({2, 1}, 1.0);   // dx2 ^ dxi1
  CHECK(max_diff(left, expect) == 0.0);
  // odd ^ odd anticommutes: reversing flips both signs
  const auto right = wedge(dxi1, sum);
  CHECK(max_diff(right, -left) == 0.0);
}

TEST_CASE("graded commutativity on random homogeneous forms") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 5);
    double ca, cb;
    const auto a = random_monomial(rng, n, ca);
    const auto b = random_monomial(rng, n, cb);
    const int da = a.terms().empty() ? 0 : a.terms().begin()->first.degree();
    const int db = b.terms().empty() ? 0 : b.terms().begin()->first.degree();
    const double sign = (da * db % 2 == 0) ? 1.0 : -1.0;
    CHECK(max_diff(wedge(a, b), sign * wedge(b, a)) == 0.0);
  }
}

TEST_CASE("wedge associativity on random forms") {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(2, 5);
    const auto a = random_form(rng, n, 3);
    const auto b = random_form(rng, n, 3);
    const auto c = random_form(rng, n, 3);
    CHECK(max_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-12);
  }
}

TEST_CASE("J on generators and on beta") {
  const int n = 3;
  CHECK(max_diff(apply_j(PointSuperform::dx(n, 0)), PointSuperform::dxi(n, 0)) == 0.0);
  CHECK(max_diff(apply_j(PointSuperform::dxi(n, 0)), -PointSuperform::dx(n, 0)) == 0.0);
  const auto beta = PointSuperform::kaehler(n);
  CHECK(max_diff(apply_j(beta), beta) == 0.0);
  CHECK(max_diff(apply_j(PointSuperform::one(n)), PointSuperform::one(n)) == 0.0);
}

TEST_CASE("J is multiplicative and J o J = (-1)^(p+q)") {
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 5);
    double ca, cb;
    const auto a = random_monomial(rng, n, ca);
    const auto b = random_monomial(rng, n, cb);
    CHECK(max_diff(apply_j(wedge(a, b)), wedge(apply_j(a), apply_j(b))) == 0.0);
    const auto m = a.terms().begin()->first;
    const double sign = ((m.xdeg() + m.xideg()) % 2 == 0) ? 1.0 : -1.0;
    CHECK(max_diff(apply_j(apply_j(a)), sign * a) == 0.0);
  }
}

TEST_CASE("contraction anchors: a _| beta = J(a)") {
  Rng rng(44);
  for (int n = 1; n <= 5; ++n) {
    const auto beta = PointSuperform::kaehler(n);
    const auto a = PointSuperform::one_form(rng.vector(n)) +
                   PointSuperform::one_form_xi(rng.vector(n));
    CHECK(max_diff(contract(a, beta), apply_j(a)) < 1e-14);
  }
  // dxi1 _| beta = -dx1
  CHECK(max_diff(contract(PointSuperform::dxi(3, 0), PointSuperform::kaehler(3)),
                 -PointSuperform::dx(3, 0)) == 0.0);
  // disjoint indices
  CHECK(contract(PointSuperform::dx(3, 0),
                 wedge(PointSuperform::dx(3, 1), PointSuperform::dxi(3, 1)))
            .empty());
}

TEST_CASE("contraction is adjoint to exterior multiplication") {
  // <c _| a, b> = <a, c ^ b> with orthonormal monomials
  Rng rng(45);
  auto inner = [](const PointSuperform& a, const PointSuperform& b) {
    double s = 0.0;
    for (const auto& [m, c] : a.terms()) s += c * b.coeff(m);
    return s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const auto a = random_form(rng, n, 4);
    const auto b = random_form(rng, n, 4);
    const bool use_xi = (rng.raw() & 1) != 0;
    const auto c = use_xi ? PointSuperform::dxi(n, rng.uniform_int(0, n - 1))
                          : PointSuperform::dx(n, rng.uniform_int(0, n - 1));
    CHECK(std::fabs(inner(contract(c, a), b) - inner(a, wedge(c, b))) < 1e-12);
  }
}

TEST_CASE("contraction is an antiderivation") {
  Rng rng(46);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 4);
    double ca, cb;
    const auto a = random_monomial(rng, n, ca);
    const auto b = random_monomial(rng, n, cb);
    const auto c = PointSuperform::one_form(rng.vector(n));
    const int da = a.terms().begin()->first.degree();
    const double sign = (da % 2 == 0) ? 1.0 : -1.0;
    const auto lhs = contract(c, wedge(a, b));
    const auto rhs = wedge(contract(c, a), b) + sign * wedge(a, contract(c, b));
    CHECK(max_diff(lhs, rhs) < 1e-13);
  }
}

TEST_CASE("cup product") {
  const int n = 2;
  const auto beta = PointSuperform::kaehler(n);
  // beta cup dx1 = -dxi1
  CHECK(max_diff(cup(beta, PointSuperform::dx(n, 0)), -PointSuperform::dxi(n, 0)) == 0.0);
  // F cup 1 = 0
  CHECK(cup(beta, PointSuperform::one(n)).empty());
  // (dx1 ^ dxi2) cup dx1 = -dxi2
  const auto f = wedge(PointSuperform::dx(n, 0), PointSuperform::dxi(n, 1));
  CHECK(max_diff(cup(f, PointSuperform::dx(n, 0)), -PointSuperform::dxi(n, 1)) == 0.0);
  // on (1,0)-forms: F cup a = -a _| F
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = rng.uniform_int(1, 5);
    Mat m(d, d);
    for (int i = 0; i < d; ++i) m.row(i) = rng.vector(d).transpose();
    const auto ff = PointSuperform::from_matrix(m);
    const auto a = PointSuperform::one_form(rng.vector(d));
    CHECK(max_diff(cup(ff, a), -contract(a, ff)) < 1e-14);
  }
}

TEST_CASE("berezin_top sign rule") {
  // a0 dx1^dxi1^dx2^dxi2 -> a0
  const int n = 2;
  auto interleaved = wedge(wedge(PointSuperform::dx(n, 0), PointSuperform::dxi(n, 0)),
                           wedge(PointSuperform::dx(n, 1), PointSuperform::dxi(n, 1)));
  CHECK(berezin_top(3.5 * interleaved) == doctest::Approx(3.5));
  // beta^n/n! -> 1 for n = 1,2,3 (independent expansion through wedge)
  for (int d = 1; d <= 3; ++d) {
    double fact = 1.0;
    for (int k = 2; k <= d; ++k) fact *= k;
    const auto top = wedge_power(PointSuperform::kaehler(d), d);
    CHECK(berezin_top(top * (1.0 / fact)) == doctest::Approx(1.0));
  }
  // no top term -> 0
  CHECK(berezin_top(PointSuperform::kaehler(2)) == 0.0);
}

TEST_CASE("berezin_top is J-invariant") {
  Rng rng(48);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const auto a = random_form(rng, n, 5);
    CHECK(berezin_top(apply_j(a)) == doctest::Approx(berezin_top(a)).epsilon(1e-12));
  }
}

TEST_CASE("volume constant") {
  CHECK(volume_constant(1) == 1.0);
  CHECK(volume_constant(2) == -1.0);
  CHECK(volume_constant(3) == -1.0);
  CHECK(volume_constant(4) == 1.0);
}

TEST_CASE("linear pullback") {
  // isometric inclusion of R^2 in R^3 pulls beta back to beta
  Mat inc(3, 2);
  inc << 1, 0, 0, 1, 0, 0;
  const auto back = pullback_linear(inc, PointSuperform::kaehler(3));
  CHECK(max_diff(back, PointSuperform::kaehler(2)) == 0.0);
  // dx3 pulls back to 0
  CHECK(pullback_linear(inc, PointSuperform::dx(3, 2)).empty());
  // (0,0)-forms unchanged
  CHECK(max_diff(pullback_linear(inc, PointSuperform::one(3) * 2.0),
                 PointSuperform::one(2) * 2.0) == 0.0);
  // rotated inclusion still gives beta (J-invariant subspace pairing)
  Rng rng(49);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a(3, 2);
    a.col(0) = rng.unit_vector(3);
    Vec v = rng.gaussian_vector(3);
    v -= v.dot(a.col(0)) * a.col(0);
    a.col(1) = v.normalized();
    CHECK(max_diff(pullback_linear(a, PointSuperform::kaehler(3)),
                   PointSuperform::kaehler(2)) < 1e-12);
  }
}

TEST_CASE("trace_restricted") {
  const int n = 3;
  const auto beta = PointSuperform::kaehler(n);
  CHECK(trace_restricted(beta, Mat::Identity(3, 3)) == doctest::Approx(3.0));
  PointSuperform f(2);
  f.add_term({1, 1}, 2.0);
  f.add_term({2, 2}, 3.0);
  Mat e1(2, 1);
  e1 << 1, 0;
  CHECK(trace_restricted(f, e1) == doctest::Approx(2.0));
  // F ^ beta^{n-1}/(n-1)! has top coefficient tr(F)
  Rng rng(50);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = rng.uniform_int(1, 5);
    Mat m(d, d);
    for (int i = 0; i < d; ++i) m.row(i) = rng.vector(d).transpose();
    double fact = 1.0;
    for (int k = 2; k < d; ++k) fact *= k;
    const auto lhs =
        wedge(PointSuperform::from_matrix(m),
              wedge_power(PointSuperform::kaehler(d), d - 1)) * (1.0 / fact);
    CHECK(berezin_top(lhs) == doctest::Approx(m.trace()).epsilon(1e-12));
  }
}

TEST_CASE("positivity of (1,1)-forms") {
  CHECK(is_positive_11(PointSuperform::kaehler(3)));
  PointSuperform f(2);
  f.add_term({1, 1}, 1.0);
  f.add_term({2, 2}, -1.0);
  CHECK_FALSE(is_positive_11(f));
  // asymmetric input flagged
  PointSuperform g(2);
  g.add_term({1, 2}, 1.0);
  CHECK_THROWS(is_positive_11(g));
}

TEST_CASE("weak positivity sampling") {
  const int n = 3, m = 1;  // (2,2)-forms in R^3
  double fact = 2.0;
  const auto pos = wedge_power(PointSuperform::kaehler(n), n - m) * (1.0 / fact);
  CHECK(is_weakly_positive(pos, 128, 7));
  CHECK_FALSE(is_weakly_positive(-1.0 * wedge_power(PointSuperform::kaehler(n), n - m),
                                 128, 7));
  // v ^ v# is weakly positive
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = PointSuperform::one_form(rng.vector(3));
    CHECK(is_weakly_positive(wedge(v, sharp(v)), 64, trial));
  }
}

TEST_CASE("wedge of positive (1,1) with weakly positive stays weakly positive") {
  Rng rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4;
    Mat g(n, n);
    for (int i = 0; i < n; ++i) g.row(i) = rng.vector(n).transpose();
    const auto f11 = PointSuperform::from_matrix(g * g.transpose());
    // weakly positive (1,1) built from simple positive pieces
    PointSuperform wp(n);
    for (int k = 0; k < 3; ++k) {
      const auto v = PointSuperform::one_form(rng.vector(n));
      wp += wedge(v, sharp(v));
    }
    CHECK(is_weakly_positive(wedge(f11, wp), 64, 1000 + trial));
  }
}

TEST_CASE("json round trip") {
  Rng rng(53);
  const auto a = random_form(rng, 4, 6);
  const auto b = superform_from_json(4, to_json(a));
  CHECK(max_diff(a, b) == 0.0);
}

TEST_CASE("dimension guard") {
  CHECK_THROWS(PointSuperform(13));
  CHECK_THROWS(wedge(PointSuperform::dx(2, 0), PointSuperform::dx(3, 0)));
}
