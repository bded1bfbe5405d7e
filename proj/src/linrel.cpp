#include "relpow/linrel.hpp"

namespace relpow {

LinearRelation LinearRelation::from_graph(const Mat& basis) {
  if (basis.rows() % 2 != 0)
    throw DimensionMismatch("graph basis must have an even number of rows");
  const int n = static_cast<int>(basis.rows() / 2);
  // An already orthonormal basis is kept verbatim so that serialized
  // instances parse back to byte-identical graphs.
  if (basis.cols() > 0 &&
      (basis.adjoint() * basis - Mat::Identity(basis.cols(), basis.cols()))
              .norm() < 1e-12)
    return LinearRelation(n, basis);
  return LinearRelation(n, orthonormal_basis(basis));
}

LinearRelation LinearRelation::from_matrix(const Mat& M) {
  if (M.rows() != M.cols())
    throw DimensionMismatch("from_matrix expects a square matrix");
  const int n = static_cast<int>(M.rows());
  Mat g(2 * n, n);
  g.topRows(n) = Mat::Identity(n, n);
  g.bottomRows(n) = M;
  return from_graph(g);
}

LinearRelation LinearRelation::from_pencil(const Mat& B, const Mat& L) {
  if (B.rows() != B.cols() || L.rows() != L.cols() || B.rows() != L.rows())
    throw DimensionMismatch("pencil matrices must be square of equal size");
  const int n = static_cast<int>(B.rows());
  Mat g(2 * n, n);
  g.topRows(n) = B;
  g.bottomRows(n) = L;
  return from_graph(g);
}

LinearRelation LinearRelation::identity(int n) {
  return from_matrix(Mat::Identity(n, n));
}

LinearRelation LinearRelation::zero_relation(int n) {
  return LinearRelation(n, Mat(2 * n, 0));
}

LinearRelation inverse(const LinearRelation& A) {
  const int n = A.dim_;
  Mat g(2 * n, A.graph_.cols());
  g.topRows(n) = A.graph_.bottomRows(n);
  g.bottomRows(n) = A.graph_.topRows(n);
  return LinearRelation::from_graph(g);
}

LinearRelation add(const LinearRelation& A, const LinearRelation& B) {
  if (A.dim_ != B.dim_)
    throw DimensionMismatch("add: ambient dimensions differ");
  const int n = A.dim_;
  const Mat Pa = A.first_components(), Qa = A.second_components();
  const Mat Pb = B.first_components(), Qb = B.second_components();
  // Pairs (x, u+v) with (x,u) in A, (x,v) in B: match first components.
  Mat cond(n, Pa.cols() + Pb.cols());
  cond << Pa, -Pb;
  Mat N = null_space(cond);
  Mat g(2 * n, N.cols());
  g.topRows(n) = Pa * N.topRows(Pa.cols());
  g.bottomRows(n) =
      Qa * N.topRows(Pa.cols()) + Qb * N.bottomRows(Pb.cols());
  return LinearRelation::from_graph(g);
}

LinearRelation compose(const LinearRelation& B, const LinearRelation& A) {
  if (A.dim_ != B.dim_)
    throw DimensionMismatch("compose: ambient dimensions differ");
  const int n = A.dim_;
  const Mat Pa = A.first_components(), Qa = A.second_components();
  const Mat Pb = B.first_components(), Qb = B.second_components();
  // Pairs (x, z) with some y in Ax and (y, z) in B: match the middle leg.
  Mat cond(n, Qa.cols() + Pb.cols());
  cond << Qa, -Pb;
  Mat N = null_space(cond);
  Mat g(2 * n, N.cols());
  g.topRows(n) = Pa * N.topRows(Qa.cols());
  g.bottomRows(n) = Qb * N.bottomRows(Pb.cols());
  return LinearRelation::from_graph(g);
}

LinearRelation scalar_shift_mul(const LinearRelation& A, Complex z, Complex w) {
  const int n = A.dim_;
  Mat g(2 * n, A.graph_.cols());
  g.topRows(n) = A.first_components();
  g.bottomRows(n) = w * A.first_components() + z * A.second_components();
  return LinearRelation::from_graph(g);
}

LinearRelation integer_power(const LinearRelation& A, int n) {
  if (n == 0) return LinearRelation::identity(A.dim_);
  if (n < 0) return integer_power(inverse(A), -n);
  LinearRelation result = A;
  for (int k = 1; k < n; ++k) result = compose(A, result);
  return result;
}

LinearRelation adjoint(const LinearRelation& A) {
  const int n = A.dim_;
  // (y*, x*) in A* iff <y*, y> = <x*, x> for all (x, y) in A, i.e. the
  // stacked vector (y*; x*) annihilates the pairing [Q^H, -P^H].
  Mat pairing(A.graph_.cols(), 2 * n);
  pairing.leftCols(n) = A.second_components().adjoint();
  pairing.rightCols(n) = -A.first_components().adjoint();
  return LinearRelation::from_graph(null_space(pairing));
}

SubspaceQuad LinearRelation::parts() const {
  const Mat P = first_components(), Q = second_components();
  SubspaceQuad out;
  out.domain = orthonormal_basis(P);
  out.range = orthonormal_basis(Q);
  out.kernel = orthonormal_basis(P * null_space(Q));
  out.mulpart = orthonormal_basis(Q * null_space(P));
  return out;
}

LinearRelation::Membership LinearRelation::contains_pair(const Vec& x,
                                                         const Vec& y,
                                                         double tol) const {
  if (x.size() != dim_ || y.size() != dim_)
    throw DimensionMismatch("contains_pair: vector size mismatch");
  if (tol <= 0) throw InvalidParams("contains_pair: tol must be positive");
  Vec v(2 * dim_);
  v << x, y;
  const double r = distance_to_span(v, graph_);
  return {r <= tol * (1.0 + v.norm()), r};
}

LinearRelation::Inclusion relation_subset(const LinearRelation& A,
                                          const LinearRelation& B, double tol) {
  if (A.dim_ != B.dim_)
    throw DimensionMismatch("relation_subset: ambient dimensions differ");
  const double d = subspace_defect(A.graph_, B.graph_);
  return {d <= tol, d};
}

bool relations_equal(const LinearRelation& A, const LinearRelation& B,
                     double tol) {
  return relation_subset(A, B, tol).subset && relation_subset(B, A, tol).subset;
}

} // namespace relpow
