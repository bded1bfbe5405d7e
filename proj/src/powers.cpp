#include "relpow/powers.hpp"

#include <cmath>

namespace relpow {

Complex principal_power(Complex z, Complex e) {
  return std::exp(e * std::log(z));
}

Contour default_contour(const RegionParams& params,
                        double truncation_radius) {
  if (params.mode == RegionParams::Mode::H)
    return build_gamma(params, truncation_radius);
  return build_gamma_sector(params.theta, params.d, truncation_radius);
}

Mat hfunctional_calc(const LinearRelation& A, const Mat& C1,
                     const CalcFunction& f, const Contour& gamma, double tol) {
  if (f.decay_s <= 0.0)
    throw InvalidParams("hfunctional_calc: decay exponent must be positive");
  const LinearRelation negA = scalar_shift_mul(A, Complex(-1.0, 0.0),
                                               Complex(0.0, 0.0));
  auto integrand = [&](Complex z) -> Mat {
    return f.eval(z) * c_resolvent(negA, C1, z);
  };
  QuadResult q = quad_contour(integrand, gamma, tol, f.decay_s);
  // Clockwise traversal of the stored counterclockwise path.
  return -q.value / Complex(0.0, 2.0 * kPi);
}

namespace {

Mat neg_power_contour(const LinearRelation& A, const Mat& C1,
                      const RegionParams& params, Complex b, double tol) {
  if (b == Complex(0.0, 0.0)) return C1;
  if (b.real() <= 0.0)
    throw RouteDomain("contour route needs Re b > 0");
  CalcFunction f{[b](Complex z) { return principal_power(z, -b); }, b.real(),
                 "z^{-b}"};
  return hfunctional_calc(A, C1, f, default_contour(params), tol);
}

Mat neg_power_balakrishnan(const LinearRelation& A, const Mat& C1, Complex b,
                           double tol) {
  if (b.real() <= 0.0 || b.real() >= 1.0)
    throw RouteDomain("balakrishnan route needs 0 < Re b < 1");
  auto f = [&](double lam) -> Mat {
    return principal_power(Complex(lam, 0.0), -b) * c_resolvent(A, C1, lam);
  };
  HalflineDecay decay;
  decay.kind = HalflineDecay::Kind::Algebraic;
  decay.s = b.real();
  decay.low_exponent = 1.0 - b.real();
  decay.scale = std::max(1.0, C1.norm());
  QuadResult q = quad_halfline(f, tol, decay);
  return (std::sin(kPi * b) / kPi) * q.value;
}

Mat neg_power_moment(const LinearRelation& A, const Mat& C1, Complex b, int n,
                     double tol) {
  if (n < 0) throw RouteDomain("moment route needs n >= 0");
  const double rb = b.real();
  if (rb <= 0.0 || rb >= n + 1.0 ||
      (b.imag() == 0.0 && std::abs(rb - std::round(rb)) < 1e-12))
    throw RouteDomain("moment route needs Re b in (0, n+1) \\ N");
  Mat C1pow = C1;
  for (int k = 0; k < n; ++k) C1pow = C1 * C1pow; // C1^{n+1}
  auto f = [&](double t) -> Mat {
    return principal_power(Complex(t, 0.0), Complex(n, 0.0) - b) *
           resolvent_power(A, C1pow, t, n + 1);
  };
  HalflineDecay decay;
  decay.kind = HalflineDecay::Kind::Algebraic;
  decay.s = rb;
  decay.low_exponent = n + 1.0 - rb;
  decay.scale = std::max(1.0, C1pow.norm());
  QuadResult q = quad_halfline(f, tol, decay);
  Complex prefactor = 1.0;
  for (int j = 1; j <= n; ++j) prefactor *= (Complex(j, 0.0) - b);
  prefactor = std::pow(-1.0, n) * std::tgamma(n + 1.0) / prefactor *
              std::sin(kPi * (Complex(n, 0.0) - b)) / kPi;
  // Same anchoring as the contour route; the raw formula carries the
  // opposite global sign.
  return -prefactor * q.value;
}

} // namespace

Mat neg_power(const LinearRelation& A, const Mat& C1,
              const RegionParams& params, const PowerSpec& spec, double tol) {
  switch (spec.route) {
    case PowerSpec::Route::Contour:
      return neg_power_contour(A, C1, params, spec.b, tol);
    case PowerSpec::Route::Balakrishnan:
      return neg_power_balakrishnan(A, C1, spec.b, tol);
    case PowerSpec::Route::Moment:
      return neg_power_moment(A, C1, spec.b, spec.n_moment, tol);
  }
  throw InvalidParams("neg_power: unknown route");
}

LinearRelation power_relation(const LinearRelation& A, const Mat& C1,
                              const RegionParams& params, Complex b,
                              double tol) {
  if (b.real() == 0.0)
    throw InvalidParams("power_relation: Re b must be nonzero");
  const int n = A.dim();
  Mat cond(n, 2 * n);
  if (b.real() < 0.0) {
    PowerSpec spec{-b, PowerSpec::Route::Contour, 1};
    Mat M = neg_power(A, C1, params, spec, tol);
    cond << M, -C1; // C1 y = (-A)^{b} x
  } else {
    PowerSpec spec{b, PowerSpec::Route::Contour, 1};
    Mat M = neg_power(A, C1, params, spec, tol);
    cond << C1, -M; // (-A)^{-b} y = C1 x
  }
  return LinearRelation::from_graph(null_space(cond));
}

LinearRelation imaginary_power_relation(const LinearRelation& A, const Mat& C1,
                                        const RegionParams& params, double tau,
                                        double tol) {
  if (tau == 0.0) throw InvalidParams("tau must be nonzero");
  const int n = A.dim();
  const LinearRelation oneMinusA =
      scalar_shift_mul(A, Complex(-1.0, 0.0), Complex(1.0, 0.0));
  const LinearRelation c1rel = LinearRelation::from_matrix(C1);
  const LinearRelation c1inv = inverse(c1rel);

  // (1-A)_2 = C1^{-1} (1-A)^2 C1 and (1-A)_{-2} = C1^{-1} (1-A)^{-2} C1.
  const LinearRelation shifted2 =
      compose(c1inv, compose(integer_power(oneMinusA, 2), c1rel));
  const LinearRelation shiftedm2 =
      compose(c1inv, compose(integer_power(oneMinusA, -2), c1rel));
  const LinearRelation powm1 =
      power_relation(A, C1, params, Complex(-1.0, 0.0), tol);
  const LinearRelation pow1itau =
      power_relation(A, C1, params, Complex(1.0, tau), tol);
  const LinearRelation c1sq = LinearRelation::from_matrix(Mat(C1 * C1));
  const LinearRelation c1sqinv = inverse(c1sq);

  // Rightmost factor applies first.
  LinearRelation r = compose(shiftedm2, c1sq);
  r = compose(pow1itau, r);
  r = compose(powm1, r);
  r = compose(shifted2, r);
  r = compose(c1sqinv, r);
  (void)n;
  return r;
}

MembershipResult power_membership(const LinearRelation& A, const Mat& C1,
                                  const RegionParams& params, Complex b,
                                  const Vec& x, const Vec& y, double tol) {
  if (b.real() == 0.0)
    throw InvalidParams("power_membership: Re b must be nonzero");
  const double scale = 1.0 + x.norm() + y.norm();
  double r;
  if (b.real() > 0.0) {
    PowerSpec spec{b, PowerSpec::Route::Contour, 1};
    Mat M = neg_power(A, C1, params, spec, tol);
    r = (M * y - C1 * x).norm();
  } else {
    PowerSpec spec{-b, PowerSpec::Route::Contour, 1};
    Mat M = neg_power(A, C1, params, spec, tol);
    r = (C1 * y - M * x).norm();
  }
  return {r <= tol * scale, r};
}

Mat dpower_db(const LinearRelation& A, const Mat& C1,
              const RegionParams& params, Complex b, double tol) {
  if (b.real() <= 0.0) throw InvalidParams("dpower_db: Re b must be > 0");
  CalcFunction f{[b](Complex z) { return -std::log(z) *
                                         principal_power(z, -b); },
                 std::max(b.real() - 0.2, 0.1), "-log(z) z^{-b}"};
  return hfunctional_calc(A, C1, f, default_contour(params), tol);
}

} // namespace relpow
