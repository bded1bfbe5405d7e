#pragma once

#include <functional>
#include <vector>

#include "relpow/resolvent.hpp"

namespace relpow {

/// One smooth piece of an integration path, traversed from parameter a to b.
struct Segment {
  enum class Kind { Arc, Ray, Line };
  std::function<Complex(double)> z;
  std::function<Complex(double)> dz;
  double a = 0.0;
  double b = 1.0;
  Kind kind = Kind::Line;
  // Rays are parameterized by log-radius and may be extended past b when the
  // requested tolerance needs a larger truncation radius.
  bool extendable = false;
};

/// Oriented piecewise-smooth path. Built contours are stored
/// counterclockwise as boundaries of the enclosed neighborhood of
/// (-inf, 0]: winding(-1) = +1.
struct Contour {
  std::vector<Segment> segments;
  double truncation_radius = 1e4;

  void check_junctions(double tol = 1e-12) const; // throws InvalidParams
};

// Gamma(alpha, eps, c, d): two curved rays eta = -+ c(1+|xi|)^(-alpha) for
// xi <= -eps joined by the arc |z| = d, xi >= -eps. Lower ray incoming,
// arc counterclockwise through +d, upper ray outgoing.
Contour build_gamma(const RegionParams& params, double truncation_radius = 1e4);

// Gamma_S(theta, d): rays at angles -+(pi - theta) joined by the arc
// |z| = d, same orientation convention.
Contour build_gamma_sector(double theta, double d,
                           double truncation_radius = 1e4);

// Keyhole path around the ray arg z = +-(pi/2 + delta), |z| >= r0, closed by
// the arc of radius r0 through the positive real axis; used for the Laplace
// inversion representation of the half-power semigroup.
Contour build_gamma_laplace(double delta, double r0,
                            double truncation_radius = 1e4);

// Winding number about z0 by continuous argument tracking, including the
// chord that closes the truncated path.
int winding_number(const Contour& gamma, Complex z0);

struct QuadResult {
  Mat value;
  double est_error = 0.0;
  double tail_bound = 0.0;
  long evaluations = 0;
};

// Adaptive Gauss-Kronrod quadrature of f(z) dz over the contour. decay_s is
// the declared algebraic decay |f(z)| <= M |z|^{-s} used, together with the
// (1+|z|)^{-1} resolvent bound baked into the integrand, to extend rays
// until the analytic tail bound is <= tol/10. Throws ToleranceNotMet.
QuadResult quad_contour(const std::function<Mat(Complex)>& f,
                        const Contour& gamma, double tol, double decay_s);

/// Decay declaration for half-line integrands, needed to pick the
/// truncation horizon: |lambda f(lambda)| <= scale * lambda^{-s} for
/// lambda >= 1 (algebraic) or |f| <= scale * exp(-rate lambda^{gamma})
/// (exponential); low_exponent p > 0 bounds |lambda f| <= scale*lambda^p
/// near zero.
struct HalflineDecay {
  enum class Kind { Algebraic, Exponential };
  Kind kind = Kind::Algebraic;
  double s = 1.0;
  double rate = 1.0;
  double gamma = 1.0;
  double low_exponent = 0.5;
  double scale = 1.0;
};

// Adaptive quadrature of f(lambda) d lambda over (0, inf) via the
// substitution lambda = e^u, with certified truncation at both ends.
QuadResult quad_halfline(const std::function<Mat(double)>& f, double tol,
                         const HalflineDecay& decay);

// Adaptive Gauss-Kronrod on a finite interval (test oracle grade).
QuadResult quad_interval(const std::function<Mat(double)>& f, double a,
                         double b, double tol);

} // namespace relpow
