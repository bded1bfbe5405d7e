#pragma once

#include <vector>

#include "relpow/linrel.hpp"

namespace relpow {

/// Region description for the resolvent growth conditions. In H mode the
/// certified set is the paraboloid-type region
///   P = { xi + i*eta : xi >= eps, |eta| <= c (1+xi)^(-alpha) }
/// together with the disk |z| <= d; in HS mode it is the sector of
/// half-angle theta around the positive real axis together with the disk.
struct RegionParams {
  enum class Mode { H, HS };
  Mode mode = Mode::HS;
  double alpha = -1.0; // resolvent growth exponent, >= -1
  double eps = 0.5;    // H mode only
  double c = 0.5;      // H mode only
  double d = 0.5;
  double theta = kPi / 4; // HS mode sector half-angle, in (0, pi/2)
  Complex lambda0 = Complex(-2.0, 0.0);

  void validate() const;      // throws InvalidParams
  bool contains(Complex lambda) const;
  // H-mode coupling defect eps^2 + c^2 (1+eps)^(-2 alpha) - d^2.
  double coupling_defect() const;
  // Solves the coupling constraint for d given alpha, eps, c.
  static double coupled_d(double alpha, double eps, double c);
};

Mat c_resolvent(const LinearRelation& A, const Mat& C, Complex lambda);
bool in_c_resolvent_set(const LinearRelation& A, const Mat& C, Complex lambda,
                        double tol = kSolveTol);

// (lambda - A)^{-n} C as the unique-valued map (C applied once, the
// relation inverse applied n times).
Mat resolvent_power(const LinearRelation& A, const Mat& C, Complex lambda,
                    int n);

// C1 = C (lambda0 - A)^{-floor(alpha+2)} C for alpha > -1, C1 = C otherwise.
Mat build_c1(const LinearRelation& A, const Mat& C, const RegionParams& params);

struct GridSpec {
  double truncation_radius = 1e4;
  int radial_points = 40;
  int transverse_points = 9;
};

struct RegionCertificate {
  double sup_weighted_norm = 0.0;
  Complex worst_lambda;
  bool pass = false;
  int samples = 0;
};

// Samples (1+|lambda|)^{-alpha} ||(lambda-A)^{-1} C|| over a grid covering
// the region (boundary included, rays truncated). pass iff all samples are
// finite and the sup is <= bound. A sampled certificate, never a proof.
RegionCertificate region_certify(const LinearRelation& A, const Mat& C,
                                 const RegionParams& params, double bound,
                                 const GridSpec& grid = {});

struct SectorialVerdict {
  bool bounded = false;
  double sup_norm = 0.0;
};

// Samples lambda (lambda - A)^{-1} C outside the closed sector of
// half-angle omega_prime (> omega).
SectorialVerdict classify_sectorial(const LinearRelation& A, const Mat& C,
                                    double omega, double omega_prime,
                                    double bound, const GridSpec& grid = {});

// Default lambda0 placement: left of the region, scaled to the operator.
Complex default_lambda0(const LinearRelation& A);

} // namespace relpow
