#include "relpow/fracderiv.hpp"

#include <cmath>

namespace relpow {

double gzeta_eval(double zeta, double t) {
  if (zeta <= 0.0) throw InvalidParams("gzeta_eval: zeta must be > 0");
  if (t <= 0.0) throw InvalidParams("gzeta_eval: t must be > 0");
  return std::exp((zeta - 1.0) * std::log(t) - std::lgamma(zeta));
}

namespace {

// n-th central difference of a vector map, step chosen against the
// noise floor of a single evaluation.
Vec central_derivative(const std::function<Vec(double)>& f, int n, double s,
                       double noise) {
  if (n == 0) return f(s);
  const double h =
      std::min(s / (n + 1.0), std::pow(std::max(noise, 1e-16), 1.0 / (n + 2)));
  switch (n) {
    case 1:
      return (f(s + h) - f(s - h)) / (2.0 * h);
    case 2:
      return (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
    case 3:
      return (f(s + 2 * h) - 2.0 * f(s + h) + 2.0 * f(s - h) - f(s - 2 * h)) /
             (2.0 * h * h * h);
    default:
      throw InvalidParams("central_derivative: order > 3 not supported");
  }
}

} // namespace

Vec liouville_right_deriv(const DecayingMap& u, double beta, double s,
                          double tol, bool classical) {
  if (beta <= 0.0) throw InvalidParams("beta must be > 0");
  if (s <= 0.0) throw InvalidParams("s must be > 0");
  if (u.decay_rate <= 0.0)
    throw TailBoundMissing("liouville_right_deriv: decay_rate must be > 0");

  const int m = static_cast<int>(std::ceil(beta));
  const double kappa = m - beta;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;

  // For integer beta the tol argument doubles as the declared evaluation
  // noise of u, balancing the finite-difference step.
  if (kappa == 0.0) return sign * central_derivative(u.eval, m, s, tol);

  // Inner map: either u' (modified variant, m-1 outer derivatives) or u
  // itself (classical variant, m outer derivatives). The fourth-order
  // stencil keeps the noise of u' near the floor of the u evaluations.
  const int outer = classical ? m : m - 1;
  const double dh = 1e-3 * std::max(1.0, s);
  auto inner = [&](double tau) -> Vec {
    if (classical) return u.eval(tau);
    return (u.eval(tau - 2 * dh) - 8.0 * u.eval(tau - dh) +
            8.0 * u.eval(tau + dh) - u.eval(tau + 2 * dh)) /
           (12.0 * dh);
  };

  // Tail integral as a function of the left endpoint; t - sigma =
  // w^{1/kappa} turns g_kappa(t - sigma) dt into dw / Gamma(kappa + 1).
  const double inner_tol = std::max(tol * 1e-2, 1e-12);
  auto tail = [&](double sigma) -> Vec {
    auto f = [&](double w) -> Mat {
      return inner(sigma + std::pow(w, 1.0 / kappa));
    };
    HalflineDecay decay;
    decay.kind = HalflineDecay::Kind::Exponential;
    decay.rate = u.decay_rate;
    decay.gamma = 1.0 / kappa;
    decay.low_exponent = 1.0;
    decay.scale = u.scale * std::exp(-u.decay_rate * sigma);
    return Vec(quad_halfline(f, inner_tol, decay).value) /
           std::tgamma(kappa + 1.0);
  };

  return sign * central_derivative(tail, outer, s, inner_tol);
}

} // namespace relpow
