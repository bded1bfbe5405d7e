#pragma once

#include <string>

#include "relpow/contour.hpp"

namespace relpow {

/// Admissible symbol for the contour calculus: analytic off (-inf, 0]
/// with the algebraic decay |eval(z)| <= M |z|^{-decay_s}, decay_s > 0.
struct CalcFunction {
  std::function<Complex(Complex)> eval;
  double decay_s = 1.0;
  std::string description;
};

struct PowerSpec {
  enum class Route { Contour, Balakrishnan, Moment };
  Complex b;
  Route route = Route::Contour;
  int n_moment = 1; // Moment route only; requires Re b in (0, n+1) \ N.
};

// exp(e * Log z) with the principal logarithm.
Complex principal_power(Complex z, Complex e);

// The contour that fits the certified region: the curved-ray path in H
// mode, the sector boundary path in HS mode.
Contour default_contour(const RegionParams& params,
                        double truncation_radius = 1e4);

// Matrix of x -> (2 pi i)^{-1} integral over gamma, traversed clockwise,
// of f(z) (z + A)^{-1} C1 x dz. The clockwise traversal anchors the
// calculus to (z^{-n} applied to A) = (-A)^{-n} C1; see the residue
// identity tests.
Mat hfunctional_calc(const LinearRelation& A, const Mat& C1,
                     const CalcFunction& f, const Contour& gamma, double tol);

// (-A)^{-b} relative to C1 by the selected route. Contour route needs
// Re b > 0 (b = 0 returns C1); Balakrishnan needs 0 < Re b < 1; Moment
// returns the raw quantity C1^n (-A)^{-b} relative to C1 and needs
// Re b in (0, n+1) \ N. All routes share one sign anchoring.
Mat neg_power(const LinearRelation& A, const Mat& C1,
              const RegionParams& params, const PowerSpec& spec, double tol);

// The power relation: for b = -beta with Re beta > 0 the pairs (x, y)
// with C1 y = (-A)^{-beta} x; for Re b > 0 the inverse relation, pairs
// (x, y) with (-A)^{-b} y = C1 x. Built as a null-space graph.
LinearRelation power_relation(const LinearRelation& A, const Mat& C1,
                              const RegionParams& params, Complex b,
                              double tol);

// Purely imaginary power as the regularized composite
// C1^{-2} (1-A)_2 (-A)_{-1} (-A)_{1+i tau} (1-A)_{-2} C1^2.
LinearRelation imaginary_power_relation(const LinearRelation& A, const Mat& C1,
                                        const RegionParams& params, double tau,
                                        double tol);

struct MembershipResult {
  bool member = false;
  double residual = 0.0;
};

// Membership (x, y) in the power relation for b, reduced to the matrix
// residual of the defining linear condition.
MembershipResult power_membership(const LinearRelation& A, const Mat& C1,
                                  const RegionParams& params, Complex b,
                                  const Vec& x, const Vec& y, double tol);

// d/db of the b -> (-A)^{-b} map at b (Re b > 0), by the contour
// calculus applied to -log(z) z^{-b}.
Mat dpower_db(const LinearRelation& A, const Mat& C1,
              const RegionParams& params, Complex b, double tol);

} // namespace relpow
