#include "relpow/subspace.hpp"

#include <Eigen/SVD>

namespace relpow {

Mat orthonormal_basis(const Mat& M, double rel_tol) {
  if (M.cols() == 0 || M.norm() == 0.0) return Mat(M.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * sv(0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat null_space(const Mat& M, double rel_tol) {
  if (M.cols() == 0) return Mat(0, 0);
  if (M.rows() == 0 || M.norm() == 0.0)
    return Mat::Identity(M.cols(), M.cols());
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = rel_tol * sv(0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(M.cols() - rank);
}

double subspace_defect(const Mat& sub, const Mat& space) {
  if (sub.cols() == 0) return 0.0;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < sub.cols(); ++j) {
    Vec g = sub.col(j);
    double d = space.cols() == 0 ? g.norm()
                                 : (g - space * (space.adjoint() * g)).norm();
    worst = std::max(worst, d);
  }
  return worst;
}

double distance_to_span(const Vec& v, const Mat& basis) {
  if (basis.cols() == 0) return v.norm();
  return (v - basis * (basis.adjoint() * v)).norm();
}

bool spans_equal(const Mat& a, const Mat& b, double tol) {
  return subspace_defect(a, b) <= tol && subspace_defect(b, a) <= tol;
}

} // namespace relpow
