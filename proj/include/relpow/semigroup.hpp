#pragma once

#include <string>
#include <vector>

#include "relpow/powers.hpp"

namespace relpow {

/// Kernel parameters for the fractional-power semigroup S_gamma. The
/// admissible time sector has half-angle phi_gamma = pi/2 - gamma (pi -
/// theta_region); the direct half-line representation needs
/// |arg t| < pi/2 - gamma pi.
struct KernelParams {
  double gamma = 0.25;  // in (0, 1/2]
  double theta = 0.0;   // rotation angle, |theta| < region half-angle
  Complex t;

  static double phi_gamma(double gamma, double region_theta) {
    return kPi / 2 - gamma * (kPi - region_theta);
  }
  // Decay scale eps_t = t cos(pi gamma) of the kernel bound for real t.
  static double eps_t(double t, double gamma) {
    return t * std::cos(kPi * gamma);
  }
};

// f_t(lambda) = (1/pi) e^{-t lambda^gamma cos(pi gamma)}
//                      sin(t lambda^gamma sin(pi gamma)),
// extended to complex t by the equivalent two-branch form
// (2 pi i)^{-1} (e^{-t lambda^gamma e^{-i pi gamma}} -
//                e^{-t lambda^gamma e^{i pi gamma}}).
Complex f_t_eval(double lambda, Complex t, double gamma);

// S_gamma(z) = integral of f_z(lambda) (lambda - A)^{-1} C1 d lambda,
// rotated through theta = +-0.9 theta_region when z leaves the direct
// sector. z = 0 returns C1.
Mat evaluate_sg(const LinearRelation& A, const Mat& C1,
                const RegionParams& params, double gamma, Complex z,
                double tol);

// S_{1/2}(t): for real t the integrated-by-parts kernel
// f(lambda, t) = 2 pi^{-1} t^{-2} [sin(t sqrt(lambda)) -
//                                  t sqrt(lambda) cos(t sqrt(lambda))]
// against (lambda - A)^{-2} C1, summed over oscillation periods; for
// complex t the contour calculus with e^{-t sqrt(z)}.
Mat evaluate_sg_half(const LinearRelation& A, const Mat& C1,
                     const RegionParams& params, Complex t, double tol);

// S_{gamma,zeta}(t) = integral over (0,t) of g_zeta(t-s) S_gamma(s) ds;
// the weak endpoint singularity is removed exactly by the substitution
// t - s = v^{1/zeta}.
Mat evaluate_sg_integrated(const LinearRelation& A, const Mat& C1,
                           const RegionParams& params, double gamma,
                           double zeta, double t, double tol);

// Laplace transform F_gamma(lambda) of t -> S_{theta,gamma}(t) in the
// rotated frame; gamma = 1/2 selects the sqrt(nu)/(lambda^2 + nu) form.
Mat F_lambda_eval(const LinearRelation& A, const Mat& C1,
                  const RegionParams& params, double gamma, double theta,
                  Complex lambda, double tol);

// The explicit lambda-integral for D^beta_- of t -> S_gamma(t e^{i
// theta}) x, used as the reference side of the fractional-derivative
// identity.
Mat frac_deriv_integral(const LinearRelation& A, const Mat& C1, double gamma,
                        double beta, double theta, double t, double tol);

// integral of lambda^n f_t(lambda) (lambda - A)^{-1} C1 d lambda, which
// pairs with S_gamma(t) under the n-th relation power: (S x, result x)
// belongs to A^n.
Mat an_moment(const LinearRelation& A, const Mat& C1, double gamma, int n,
              Complex t, double tol);

struct IncompleteProblem {
  enum class Kind { FPbeta, P2 };
  Kind kind = Kind::P2;
  double beta = 1.0;
  double theta = 0.0;
  double gamma = 0.25;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::string tag;
  double beta = 0.0;
  double theta = 0.0;
  double gamma = 0.0;
};

// u(t) = S_gamma(t e^{i theta}) x for the fractional problem, u(t) =
// S_{1/2}(t) x for the second-order one, sampled at the given times.
Trajectory solve_incomplete(const LinearRelation& A, const Mat& C1,
                            const RegionParams& params,
                            const IncompleteProblem& problem, const Vec& x,
                            const std::vector<double>& times, double tol);

} // namespace relpow
