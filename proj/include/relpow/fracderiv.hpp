#pragma once

#include <functional>

#include "relpow/contour.hpp"

namespace relpow {

// g_zeta(t) = t^{zeta-1} / Gamma(zeta).
double gzeta_eval(double zeta, double t);

/// Trajectory on (0, inf) with a declared exponential envelope
/// |u(t)| <= scale * e^{-decay_rate t}, needed to truncate the tail
/// integral of the right-sided derivative.
struct DecayingMap {
  std::function<Vec(double)> eval;
  double decay_rate = 0.0;
  double scale = 1.0;
};

// Right-sided derivative of order beta at s:
//   (-1)^{ceil(beta)} (d/ds)^{ceil(beta)-1}
//     integral over (s, inf) of g_{ceil(beta)-beta}(t-s) u'(t) dt,
// with the weak kernel singularity removed exactly by the substitution
// t - s = w^{1/kernel_order}. Integer beta returns (-1)^n u^{(n)}(s).
// classical = true selects the variant that integrates u itself and
// differentiates ceil(beta) times; both agree on exponentials.
Vec liouville_right_deriv(const DecayingMap& u, double beta, double s,
                          double tol, bool classical = false);

} // namespace relpow
