#pragma once

#include <complex>
#include <Eigen/Dense>

namespace relpow {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Global numeric policy. Rank decisions are relative to the largest
// singular value; subspace equality uses an absolute principal-angle
// tolerance.
inline constexpr double kRankTol = 1e-10;
inline constexpr double kOrthoTol = 1e-12;
inline constexpr double kSubspaceEqTol = 1e-10;
inline constexpr double kSolveTol = 1e-10;
inline constexpr double kAlgebraicTol = 1e-8;
inline constexpr double kQuadTol = 1e-6;

inline constexpr double kPi = 3.14159265358979323846;

} // namespace relpow
