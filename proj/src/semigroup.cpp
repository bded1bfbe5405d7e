#include "relpow/semigroup.hpp"

#include <cmath>
#include <limits>

namespace relpow {

namespace {

constexpr Complex kI{0.0, 1.0};

// (lambda - e^{i theta} A)^{-1} C1 = e^{-i theta}
// (lambda e^{-i theta} - A)^{-1} C1.
Mat rotated_resolvent(const LinearRelation& A, const Mat& C1, double theta,
                      Complex lambda) {
  Complex rot = std::exp(-kI * theta);
  return rot * c_resolvent(A, C1, lambda * rot);
}

void require_sector_mode(const RegionParams& params) {
  if (params.mode != RegionParams::Mode::HS)
    throw InvalidParams("semigroup evaluation needs a sector-certified "
                        "region");
}

} // namespace

Complex f_t_eval(double lambda, Complex t, double gamma) {
  if (lambda <= 0.0) throw InvalidParams("f_t_eval: lambda must be > 0");
  if (gamma <= 0.0 || gamma >= 0.5)
    throw InvalidParams("f_t_eval: gamma must lie in (0, 1/2)");
  const double lg = std::pow(lambda, gamma);
  if (t.imag() == 0.0) {
    const double tr = t.real();
    return (1.0 / kPi) * std::exp(-tr * lg * std::cos(kPi * gamma)) *
           std::sin(tr * lg * std::sin(kPi * gamma));
  }
  const Complex em = std::exp(-t * lg * std::exp(-kI * kPi * gamma));
  const Complex ep = std::exp(-t * lg * std::exp(kI * kPi * gamma));
  return (em - ep) / (2.0 * kPi * kI);
}

Mat evaluate_sg(const LinearRelation& A, const Mat& C1,
                const RegionParams& params, double gamma, Complex z,
                double tol) {
  require_sector_mode(params);
  if (gamma <= 0.0 || gamma >= 0.5)
    throw InvalidParams("evaluate_sg: gamma must lie in (0, 1/2)");
  if (z == Complex(0.0, 0.0)) return C1;
  const double phi = KernelParams::phi_gamma(gamma, params.theta);
  const double az = std::arg(z);
  if (std::abs(az) >= phi || z == Complex(0.0, 0.0))
    throw OutOfSector("evaluate_sg: time outside the admissible sector");
  const double direct_angle = kPi / 2 - gamma * kPi;

  double theta = 0.0;
  Complex w = z;
  if (std::abs(az) >= 0.95 * direct_angle) {
    theta = std::clamp(az / gamma, -0.95 * params.theta, 0.95 * params.theta);
    w = z * std::exp(-kI * gamma * theta);
    if (std::abs(std::arg(w)) >= direct_angle)
      throw OutOfSector("evaluate_sg: rotation cannot reach the direct "
                        "sector");
  }

  auto integrand = [&](double lam) -> Mat {
    return f_t_eval(lam, w, gamma) * rotated_resolvent(A, C1, theta, lam);
  };
  HalflineDecay decay;
  decay.kind = HalflineDecay::Kind::Exponential;
  decay.rate = std::abs(w) * std::cos(gamma * kPi + std::abs(std::arg(w)));
  decay.gamma = gamma;
  decay.low_exponent = 1.0;
  decay.scale = 10.0 * std::max(1.0, C1.norm());
  return quad_halfline(integrand, tol, decay).value;
}

Mat evaluate_sg_half(const LinearRelation& A, const Mat& C1,
                     const RegionParams& params, Complex t, double tol) {
  require_sector_mode(params);
  if (t == Complex(0.0, 0.0)) return C1;
  if (std::abs(std::arg(t)) >= params.theta / 2)
    throw OutOfSector("evaluate_sg_half: time outside the sector of "
                      "half-angle theta/2");
  if (t.imag() != 0.0) {
    // Contour calculus with the principal square root; the symbol decays
    // exponentially on both rays for t inside the admissible sector.
    CalcFunction f{[t](Complex zz) { return std::exp(-t * std::sqrt(zz)); },
                   2.0, "e^{-t sqrt(z)}"};
    return hfunctional_calc(A, C1, f,
                            build_gamma_sector(params.theta, params.d), tol);
  }

  // Real t: substitute x = t sqrt(lambda) and sum over the length-pi
  // oscillation periods of the kernel; the period sums alternate with a
  // decreasing envelope, so the last panel bounds the truncation error.
  const double tr = t.real();
  const double pref = 4.0 / (kPi * tr * tr * tr * tr);
  auto g = [&](double x) -> Mat {
    const double lam = x * x / (tr * tr);
    if (lam <= 0.0) return Mat::Zero(C1.rows(), C1.cols());
    return pref * x * (std::sin(x) - x * std::cos(x)) *
           resolvent_power(A, C1, lam, 2);
  };
  const double panel_tol = std::max(tol * 1e-2, 1e-13);
  auto panel = [&](long k) -> Mat {
    return quad_interval(g, k * kPi, (k + 1) * kPi, panel_tol).value;
  };
  // Head panels are not sign-alternating yet; sum them directly.
  const long k0 = 8;
  Mat head = Mat::Zero(C1.rows(), C1.cols());
  for (long k = 0; k < k0; ++k) head += panel(k);
  // The tail panel sums alternate with a decreasing envelope; repeated
  // pairwise averaging of the partial sums converges geometrically.
  for (long m = 48; m <= 384; m *= 2) {
    std::vector<Mat> partial;
    partial.reserve(m);
    Mat run = Mat::Zero(C1.rows(), C1.cols());
    for (long j = 0; j < m; ++j) {
      run += panel(k0 + j);
      partial.push_back(run);
    }
    Mat prev = partial.back();
    double est = std::numeric_limits<double>::infinity();
    while (partial.size() > 1) {
      for (size_t i = 0; i + 1 < partial.size(); ++i)
        partial[i] = 0.5 * (partial[i] + partial[i + 1]);
      partial.pop_back();
      est = (partial.back() - prev).norm();
      prev = partial.back();
    }
    if (est <= tol / 2.0) return head + partial.front();
  }
  throw ToleranceNotMet(tol);
}

Mat evaluate_sg_integrated(const LinearRelation& A, const Mat& C1,
                           const RegionParams& params, double gamma,
                           double zeta, double t, double tol) {
  if (zeta < 0.0) throw InvalidParams("zeta must be >= 0");
  if (t <= 0.0) throw InvalidParams("t must be > 0");
  if (zeta == 0.0) return evaluate_sg(A, C1, params, gamma, t, tol);
  // integral of g_zeta(t-s) S(s) ds with t - s = v^{1/zeta}; the weight
  // becomes constant, removing the endpoint singularity exactly.
  auto integrand = [&](double v) -> Mat {
    const double s = t - std::pow(v, 1.0 / zeta);
    if (s <= 1e-13) return C1;
    return evaluate_sg(A, C1, params, gamma, s, tol / 10.0);
  };
  const double vmax = std::pow(t, zeta);
  Mat q = quad_interval(integrand, 0.0, vmax, tol * vmax).value;
  return q / std::tgamma(zeta + 1.0);
}

Mat F_lambda_eval(const LinearRelation& A, const Mat& C1,
                  const RegionParams& params, double gamma, double theta,
                  Complex lambda, double tol) {
  require_sector_mode(params);
  if (gamma <= 0.0 || gamma > 0.5)
    throw InvalidParams("F_lambda_eval: gamma must lie in (0, 1/2]");
  if (std::abs(theta) >= params.theta)
    throw InvalidParams("F_lambda_eval: |theta| must be < region theta");

  if (gamma == 0.5) {
    if (std::abs(std::arg(lambda)) >= kPi / 2 - 0.05)
      throw OutOfSector("F_lambda_eval: lambda too close to the imaginary "
                        "axis for the half-power form");
    const Complex l2 = lambda * lambda;
    auto f = [&](double nu) -> Mat {
      return (std::sqrt(nu) / (l2 + nu)) *
             rotated_resolvent(A, C1, theta, nu);
    };
    HalflineDecay decay;
    decay.kind = HalflineDecay::Kind::Algebraic;
    decay.s = 0.5;
    decay.low_exponent = 1.0;
    decay.scale = std::max(1.0, C1.norm());
    return quad_halfline(f, tol, decay).value / kPi;
  }

  const Complex rot = std::exp(kI * theta * gamma);
  if (std::abs(std::arg(lambda * rot)) >= kPi * (1.0 - gamma) - 0.05)
    throw OutOfSector("F_lambda_eval: denominator pole on the half-line");
  const double cg = std::cos(kPi * gamma), sg = std::sin(kPi * gamma);
  auto f = [&](double v) -> Mat {
    const double vg = std::pow(v, gamma);
    const Complex den = (lambda * rot + vg * cg) * (lambda * rot + vg * cg) +
                        vg * vg * sg * sg;
    return (vg / den) * rotated_resolvent(A, C1, theta, v);
  };
  HalflineDecay decay;
  decay.kind = HalflineDecay::Kind::Algebraic;
  decay.s = gamma;
  decay.low_exponent = 1.0;
  decay.scale = std::max(1.0, C1.norm()) / std::max(std::norm(lambda), 0.1);
  return (rot * sg / kPi) * quad_halfline(f, tol, decay).value;
}

Mat frac_deriv_integral(const LinearRelation& A, const Mat& C1, double gamma,
                        double beta, double theta, double t, double tol) {
  if (t <= 0.0) throw InvalidParams("frac_deriv_integral: t must be > 0");
  const Complex z = t * std::exp(kI * theta);
  const Complex phase = std::exp(kI * kPi * gamma * beta);
  auto f = [&](double lam) -> Mat {
    const double lg = std::pow(lam, gamma);
    const Complex bracket =
        std::exp(-z * lg * std::exp(-kI * kPi * gamma)) / phase -
        std::exp(-z * lg * std::exp(kI * kPi * gamma)) * phase;
    return std::pow(lam, gamma * beta) * bracket * c_resolvent(A, C1, lam);
  };
  HalflineDecay decay;
  decay.kind = HalflineDecay::Kind::Exponential;
  decay.rate = std::abs(z) * std::cos(gamma * kPi + std::abs(std::arg(z)));
  decay.gamma = gamma;
  decay.low_exponent = 1.0;
  decay.scale = 10.0 * std::max(1.0, C1.norm());
  Mat q = quad_halfline(f, tol, decay).value;
  return std::exp(kI * theta * beta) / (2.0 * kPi * kI) * q;
}

Mat an_moment(const LinearRelation& A, const Mat& C1, double gamma, int n,
              Complex t, double tol) {
  if (n < 0) throw InvalidParams("an_moment: n must be >= 0");
  auto f = [&](double lam) -> Mat {
    return std::pow(lam, n) * f_t_eval(lam, t, gamma) *
           c_resolvent(A, C1, lam);
  };
  HalflineDecay decay;
  decay.kind = HalflineDecay::Kind::Exponential;
  decay.rate = std::abs(t) * std::cos(gamma * kPi + std::abs(std::arg(t)));
  decay.gamma = gamma;
  decay.low_exponent = n + 1.0;
  decay.scale = 10.0 * std::max(1.0, C1.norm());
  // Dividing lambda^n by (lambda + a) leaves a polynomial, whose f_t
  // moments vanish, plus (-a)^n/(lambda + a); the integral is A^n S(t).
  return quad_halfline(f, tol, decay).value;
}

Trajectory solve_incomplete(const LinearRelation& A, const Mat& C1,
                            const RegionParams& params,
                            const IncompleteProblem& problem, const Vec& x,
                            const std::vector<double>& times, double tol) {
  if (x.size() != A.dim())
    throw DimensionMismatch("solve_incomplete: state size mismatch");
  Trajectory out;
  out.beta = problem.beta;
  out.theta = problem.theta;
  out.gamma = problem.gamma;
  out.tag = problem.kind == IncompleteProblem::Kind::P2 ? "P2" : "FPbeta";
  double prev = 0.0;
  for (double t : times) {
    if (t <= prev)
      throw InvalidParams("solve_incomplete: times must be positive and "
                          "strictly increasing");
    prev = t;
    Mat S = problem.kind == IncompleteProblem::Kind::P2
                ? evaluate_sg_half(A, C1, params, t, tol)
                : evaluate_sg(A, C1, params, problem.gamma,
                              t * std::exp(kI * problem.theta), tol);
    out.times.push_back(t);
    out.states.emplace_back(S * x);
  }
  return out;
}

} // namespace relpow
