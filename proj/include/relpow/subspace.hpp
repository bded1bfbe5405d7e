#pragma once

#include "relpow/types.hpp"

namespace relpow {

// Orthonormal basis of the column span of M. Rank is decided by
// sigma > rel_tol * sigma_max.
Mat orthonormal_basis(const Mat& M, double rel_tol = kRankTol);

// Orthonormal basis of the (right) null space of M.
Mat null_space(const Mat& M, double rel_tol = kRankTol);

// Max distance of any unit vector in span(sub) to span(space);
// equals sin of the largest principal angle between sub and its
// projection. Both arguments must have orthonormal columns.
double subspace_defect(const Mat& sub, const Mat& space);

// Distance of v to span(basis) where basis has orthonormal columns.
double distance_to_span(const Vec& v, const Mat& basis);

bool spans_equal(const Mat& a, const Mat& b, double tol = kSubspaceEqTol);

} // namespace relpow
