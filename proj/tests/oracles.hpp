#pragma once

// Shared fixtures and independent oracles for the test suites. Every
// oracle here avoids the library's own quadrature and calculus paths.

#include <random>
#include <vector>

#include "relpow/instance.hpp"

namespace relpow::testing {

inline RegionParams hs_region(double theta = kPi / 4, double d = 0.5,
                              double alpha = -1.0) {
  RegionParams p;
  p.mode = RegionParams::Mode::HS;
  p.theta = theta;
  p.d = d;
  p.alpha = alpha;
  p.lambda0 = Complex(-2.0, 0.0);
  return p;
}

inline RegionParams h_region(double alpha, double eps, double c) {
  RegionParams p;
  p.mode = RegionParams::Mode::H;
  p.alpha = alpha;
  p.eps = eps;
  p.c = c;
  p.d = RegionParams::coupled_d(alpha, eps, c);
  p.lambda0 = Complex(-2.0, 0.0);
  return p;
}

inline Mat diag_matrix(const std::vector<Complex>& eigs) {
  Mat M = Mat::Zero(eigs.size(), eigs.size());
  for (size_t i = 0; i < eigs.size(); ++i) M(i, i) = eigs[i];
  return M;
}

inline LinearRelation diag_relation(const std::vector<Complex>& eigs) {
  return LinearRelation::from_matrix(diag_matrix(eigs));
}

// B = diag(1, 0), L = -I: the standard multivalued instance with
// resolvent diag(1/(lambda+1), 0).
inline LinearRelation singular_pencil() {
  Mat B = Mat::Zero(2, 2), L = Mat::Zero(2, 2);
  B(0, 0) = 1.0;
  L(0, 0) = -1.0;
  L(1, 1) = -1.0;
  return LinearRelation::from_pencil(B, L);
}

// (-A)^{-b} for a diagonalizable single-valued A = V D V^{-1}: computed
// entirely from the eigendecomposition, independent of any contour.
inline Mat eigen_power_oracle(const Mat& V, const std::vector<Complex>& eigs,
                              Complex b) {
  Mat D = Mat::Zero(eigs.size(), eigs.size());
  for (size_t i = 0; i < eigs.size(); ++i)
    D(i, i) = std::exp(-b * std::log(-eigs[i]));
  return V * D * V.inverse();
}

// Random diagonalizable matrix with prescribed eigenvalues and a
// moderately conditioned eigenvector basis.
inline Mat random_stable_matrix(std::mt19937& rng,
                                std::vector<Complex>& eigs_out, int n) {
  std::uniform_real_distribution<double> re(-5.0, -1.0), im(-1.0, 1.0),
      entry(-0.4, 0.4);
  eigs_out.clear();
  for (int i = 0; i < n; ++i) eigs_out.emplace_back(re(rng), im(rng));
  Mat V = Mat::Identity(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      V(r, c) += Complex(entry(rng), entry(rng));
  return V * diag_matrix(eigs_out) * V.inverse();
}

inline ProblemSpec make_spec(LinearRelation rel, Mat C, RegionParams region) {
  Defaults d;
  return ProblemSpec{std::move(rel), std::move(C), region, d};
}

inline ProblemSpec pencil_spec() {
  LinearRelation A = singular_pencil();
  return make_spec(A, Mat::Identity(2, 2), hs_region());
}

inline ProblemSpec diag_spec() {
  LinearRelation A = diag_relation({Complex(-1, 0), Complex(-4, 0)});
  return make_spec(A, Mat::Identity(2, 2), hs_region());
}

} // namespace relpow::testing
