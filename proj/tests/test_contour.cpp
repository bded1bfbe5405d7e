#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "relpow/powers.hpp"

using namespace relpow;
using namespace relpow::testing;

namespace {

Mat scalar(Complex v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

} // namespace

TEST_CASE("built contours are connected and oriented") {
  Contour gs = build_gamma_sector(kPi / 4, 0.5);
  gs.check_junctions();
  CHECK(winding_number(gs, Complex(-1.0, 0.0)) == 1);
  CHECK(winding_number(gs, Complex(10.0, 0.0)) == 0);

  Contour gh = build_gamma(h_region(0.5, 0.4, 0.3));
  gh.check_junctions();
  CHECK(winding_number(gh, Complex(-1.0, 0.0)) == 1);
  CHECK(winding_number(gh, Complex(5.0, 0.0)) == 0);

  Contour gl = build_gamma_laplace(0.2, 0.3);
  gl.check_junctions();
}

TEST_CASE("interval quadrature on smooth oracles") {
  auto f = [](double x) { return scalar(Complex(std::sin(x), 0.0)); };
  QuadResult q = quad_interval(f, 0.0, kPi, 1e-12);
  CHECK(std::abs(q.value(0, 0) - 2.0) < 1e-11);

  auto g = [](double x) { return scalar(std::exp(Complex(0.0, x))); };
  QuadResult qg = quad_interval(g, 0.0, 1.0, 1e-12);
  Complex expect = (std::exp(Complex(0.0, 1.0)) - 1.0) / Complex(0.0, 1.0);
  CHECK(std::abs(qg.value(0, 0) - expect) < 1e-11);
}

TEST_CASE("half-line quadrature with exponential decay") {
  auto f = [](double lam) { return scalar(Complex(std::exp(-lam), 0.0)); };
  HalflineDecay d;
  d.kind = HalflineDecay::Kind::Exponential;
  d.rate = 1.0;
  d.gamma = 1.0;
  d.low_exponent = 1.0;
  d.scale = 1.0;
  QuadResult q = quad_halfline(f, 1e-10, d);
  CHECK(std::abs(q.value(0, 0) - 1.0) < 1e-9);
}

TEST_CASE("half-line quadrature with algebraic decay") {
  // integral of lambda / (1 + lambda^2)^2 = 1/2
  auto f = [](double lam) {
    return scalar(Complex(lam / std::pow(1.0 + lam * lam, 2), 0.0));
  };
  HalflineDecay d;
  d.kind = HalflineDecay::Kind::Algebraic;
  d.s = 2.0;
  d.low_exponent = 2.0;
  d.scale = 1.0;
  QuadResult q = quad_halfline(f, 1e-9, d);
  CHECK(std::abs(q.value(0, 0) - 0.5) < 1e-8);
}

TEST_CASE("contour quadrature reproduces the residue of a simple pole") {
  // Quadratic decay makes the arc at infinity negligible on both contour
  // shapes; only the pole at -1 is enclosed.
  auto f = [](Complex z) { return scalar(1.0 / ((z + 1.0) * (z - 3.0))); };
  for (const Contour& gamma :
       {build_gamma_sector(kPi / 4, 0.5), build_gamma(h_region(0.5, 0.4,
                                                               0.3))}) {
    QuadResult q = quad_contour(f, gamma, 1e-9, 2.0);
    Complex expect = Complex(0.0, 2.0 * kPi) / Complex(-4.0, 0.0);
    CHECK(std::abs(q.value(0, 0) - expect) < 1e-7);
  }
}

TEST_CASE("contour quadrature of an analytic integrand vanishes") {
  // 1/(z-3)^2 decays quadratically and its pole lies outside the path,
  // so the integral equals the vanishing contribution at infinity.
  auto f = [](Complex z) { return scalar(1.0 / ((z - 3.0) * (z - 3.0))); };
  QuadResult q = quad_contour(f, build_gamma_sector(kPi / 4, 0.5), 1e-9, 2.0);
  CHECK(std::abs(q.value(0, 0)) < 1e-7);
}

TEST_CASE("missing decay declaration is rejected") {
  LinearRelation A = diag_relation({Complex(-1, 0)});
  CalcFunction f{[](Complex) { return Complex(1.0, 0.0); }, 0.0, "no decay"};
  CHECK_THROWS_AS(hfunctional_calc(A, Mat::Identity(1, 1), f,
                                   build_gamma_sector(kPi / 4, 0.5), 1e-8),
                  InvalidParams);
}
