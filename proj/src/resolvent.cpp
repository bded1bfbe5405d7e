#include "relpow/resolvent.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace relpow {

void RegionParams::validate() const {
  if (alpha < -1.0) throw InvalidParams("alpha must be >= -1");
  if (d <= 0.0 || d > 1.0) throw InvalidParams("d must lie in (0,1]");
  if (mode == Mode::H) {
    if (eps <= 0.0 || eps > 1.0) throw InvalidParams("eps must lie in (0,1]");
    if (c <= 0.0 || c >= 1.0) throw InvalidParams("c must lie in (0,1)");
    if (std::abs(coupling_defect()) > 1e-9)
      throw InvalidParams("coupling constraint eps^2 + c^2 (1+eps)^(-2a) = d^2 "
                          "violated");
  } else {
    if (theta <= 0.0 || theta >= kPi / 2)
      throw InvalidParams("theta must lie in (0, pi/2)");
  }
  if (contains(lambda0))
    throw InvalidParams("lambda0 must lie outside the certified region");
}

double RegionParams::coupling_defect() const {
  return eps * eps + c * c * std::pow(1.0 + eps, -2.0 * alpha) - d * d;
}

double RegionParams::coupled_d(double alpha, double eps, double c) {
  return std::sqrt(eps * eps + c * c * std::pow(1.0 + eps, -2.0 * alpha));
}

bool RegionParams::contains(Complex lambda) const {
  if (std::abs(lambda) <= d) return true;
  const double xi = lambda.real(), eta = lambda.imag();
  if (mode == Mode::H)
    return xi >= eps && std::abs(eta) <= c * std::pow(1.0 + xi, -alpha);
  return std::abs(std::arg(lambda)) <= theta && std::abs(lambda) > 0.0;
}

namespace {

// One factorization of lambda*P - Q, reused for iterated solves. The
// pencil is divided by lambda for |lambda| > 1 so the singular values
// stay O(1) and rank decisions survive arbitrarily large |lambda|.
struct ResolventSolver {
  Mat P;
  Complex scale;
  Mat S;
  Eigen::JacobiSVD<Mat> svd;
  Complex lambda;

  ResolventSolver(const LinearRelation& A, Complex lam)
      : P(A.first_components()),
        scale(std::abs(lam) > 1.0 ? 1.0 / lam : Complex(1.0, 0.0)),
        S(scale * (lam * A.first_components() - A.second_components())),
        svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV),
        lambda(lam) {
    // Single-valuedness: every kernel direction of (lambda*P - Q) must
    // have zero first component, otherwise y is non-unique.
    Mat N = null_space(S);
    if (N.cols() > 0 && (P * N).norm() > kRankTol * std::max(1.0, P.norm()))
      throw NotInResolventSet(lam, "kernel of (lambda - A) is nontrivial");
  }

  // Solves rhs-column in (lambda - A) y for each column; throws on a
  // range defect.
  Mat apply(const Mat& rhs) const {
    Mat scaled = scale * rhs;
    Mat coeffs = svd.solve(scaled);
    for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
      double r = (S * coeffs.col(j) - scaled.col(j)).norm();
      if (r > kSolveTol * (1.0 + scaled.col(j).norm()))
        throw NotInResolventSet(lambda,
                                "range of C not contained in range of "
                                "(lambda - A)");
    }
    return P * coeffs;
  }
};

} // namespace

Mat c_resolvent(const LinearRelation& A, const Mat& C, Complex lambda) {
  if (C.rows() != A.dim() || C.cols() != A.dim())
    throw DimensionMismatch("c_resolvent: C has wrong shape");
  ResolventSolver solver(A, lambda);
  return solver.apply(C);
}

bool in_c_resolvent_set(const LinearRelation& A, const Mat& C, Complex lambda,
                        double tol) {
  if (tol <= 0) throw InvalidParams("tol must be positive");
  try {
    (void)c_resolvent(A, C, lambda);
    return true;
  } catch (const NotInResolventSet&) {
    return false;
  }
}

Mat resolvent_power(const LinearRelation& A, const Mat& C, Complex lambda,
                    int n) {
  if (n < 1) throw InvalidParams("resolvent_power: n must be positive");
  ResolventSolver solver(A, lambda);
  Mat X = C;
  for (int k = 0; k < n; ++k) X = solver.apply(X);
  return X;
}

Mat build_c1(const LinearRelation& A, const Mat& C, const RegionParams& params) {
  if (params.alpha == -1.0) return C;
  const int m = static_cast<int>(std::floor(params.alpha + 2.0));
  if (m == 0) return C * C;
  return C * resolvent_power(A, C, params.lambda0, m);
}

namespace {

std::vector<Complex> region_grid(const RegionParams& p, const GridSpec& g) {
  std::vector<Complex> pts;
  // Disk part, boundary included.
  const int nr = std::max(4, g.transverse_points);
  const int na = 4 * nr;
  for (int i = 1; i <= nr; ++i) {
    double r = p.d * static_cast<double>(i) / nr;
    for (int a = 0; a < na; ++a) {
      double phi = 2.0 * kPi * a / na;
      pts.emplace_back(r * std::cos(phi), r * std::sin(phi));
    }
  }
  // Unbounded part: log-spaced radii/abscissae out to the truncation radius.
  if (p.mode == RegionParams::Mode::H) {
    for (int i = 0; i <= g.radial_points; ++i) {
      double t = static_cast<double>(i) / g.radial_points;
      double xi = p.eps * std::pow(g.truncation_radius / p.eps, t);
      double width = p.c * std::pow(1.0 + xi, -p.alpha);
      for (int k = -g.transverse_points / 2; k <= g.transverse_points / 2;
           ++k) {
        double eta = width * static_cast<double>(k) /
                     std::max(1, g.transverse_points / 2);
        pts.emplace_back(xi, eta);
      }
    }
  } else {
    for (int i = 0; i <= g.radial_points; ++i) {
      double t = static_cast<double>(i) / g.radial_points;
      double r = p.d * std::pow(g.truncation_radius / p.d, t);
      for (int k = -g.transverse_points / 2; k <= g.transverse_points / 2;
           ++k) {
        double phi = p.theta * static_cast<double>(k) /
                     std::max(1, g.transverse_points / 2);
        pts.emplace_back(r * std::cos(phi), r * std::sin(phi));
      }
    }
  }
  return pts;
}

double op_norm(const Mat& M) {
  Eigen::JacobiSVD<Mat> svd(M);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

} // namespace

RegionCertificate region_certify(const LinearRelation& A, const Mat& C,
                                 const RegionParams& params, double bound,
                                 const GridSpec& grid) {
  RegionCertificate cert;
  // Canonical grid order; reduction by max is order-independent but the
  // worst sample reported is the first attaining the sup.
  for (Complex lam : region_grid(params, grid)) {
    Mat R = c_resolvent(A, C, lam); // throws NotInResolventSet{lambda}
    double w = std::pow(1.0 + std::abs(lam), -params.alpha) * op_norm(R);
    ++cert.samples;
    if (w > cert.sup_weighted_norm) {
      cert.sup_weighted_norm = w;
      cert.worst_lambda = lam;
    }
  }
  cert.pass = std::isfinite(cert.sup_weighted_norm) &&
              cert.sup_weighted_norm <= bound;
  return cert;
}

SectorialVerdict classify_sectorial(const LinearRelation& A, const Mat& C,
                                    double omega, double omega_prime,
                                    double bound, const GridSpec& grid) {
  if (omega < 0.0 || omega >= kPi) throw InvalidParams("omega in [0, pi)");
  if (omega_prime <= omega || omega_prime >= kPi)
    throw InvalidParams("omega_prime must lie in (omega, pi)");
  SectorialVerdict v;
  v.bounded = true;
  const int nphi = std::max(5, grid.transverse_points);
  for (int i = 0; i <= grid.radial_points; ++i) {
    double t = static_cast<double>(i) / grid.radial_points;
    double r = 1e-3 * std::pow(grid.truncation_radius / 1e-3, t);
    for (int k = 0; k <= nphi; ++k) {
      double phi =
          omega_prime + (kPi - omega_prime) * static_cast<double>(k) / nphi;
      for (double sign : {1.0, -1.0}) {
        Complex lam = std::polar(r, sign * phi);
        try {
          Mat R = c_resolvent(A, C, lam);
          v.sup_norm = std::max(v.sup_norm, std::abs(lam) * op_norm(R));
        } catch (const NotInResolventSet&) {
          v.bounded = false;
          return v;
        }
      }
    }
  }
  if (v.sup_norm > bound) v.bounded = false;
  return v;
}

Complex default_lambda0(const LinearRelation& A) {
  // Spectral-radius estimate from the graph blocks: ||Q|| / sigma_min+(P)
  // dominates the norm of any single-valued selection of A.
  Eigen::JacobiSVD<Mat> svd(A.first_components());
  double smin = 1.0;
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol) smin = sv(i);
  double rho = op_norm(A.second_components()) / std::max(smin, 1e-2);
  return Complex(-2.0 * (1.0 + rho), 0.0);
}

} // namespace relpow
