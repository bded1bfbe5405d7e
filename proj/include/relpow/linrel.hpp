#pragma once

#include "relpow/errors.hpp"
#include "relpow/subspace.hpp"
#include "relpow/types.hpp"

namespace relpow {

/// Orthonormal bases of D(A), R(A), N(A) and the multivalued part A0,
/// all living in the n-dimensional ambient space.
struct SubspaceQuad {
  Mat domain;
  Mat range;
  Mat kernel;
  Mat mulpart;
};

/// A linear relation (multivalued linear operator) on C^n, represented by
/// an orthonormal basis of its graph {(x, y) : y in Ax} stacked as a
/// 2n x k matrix: top n rows are first components, bottom n rows second
/// components. Values are immutable after construction and all operations
/// are pure, so concurrent use is safe.
class LinearRelation {
public:
  static LinearRelation from_graph(const Mat& basis);
  static LinearRelation from_matrix(const Mat& M);
  // Graph {(Bx, Lx)}; multivalued when B is singular.
  static LinearRelation from_pencil(const Mat& B, const Mat& L);
  static LinearRelation identity(int n);
  static LinearRelation zero_relation(int n); // the relation {(0,0)}

  int dim() const { return dim_; }
  const Mat& graph() const { return graph_; }
  Mat first_components() const { return graph_.topRows(dim_); }
  Mat second_components() const { return graph_.bottomRows(dim_); }

  friend LinearRelation inverse(const LinearRelation& A);
  friend LinearRelation add(const LinearRelation& A, const LinearRelation& B);
  // compose(B, A) applies A first: the product BA.
  friend LinearRelation compose(const LinearRelation& B,
                                const LinearRelation& A);
  // Returns w*I + z*A on D(A).
  friend LinearRelation scalar_shift_mul(const LinearRelation& A, Complex z,
                                         Complex w);
  friend LinearRelation integer_power(const LinearRelation& A, int n);
  friend LinearRelation adjoint(const LinearRelation& A);

  SubspaceQuad parts() const;

  struct Membership {
    bool member;
    double residual;
  };
  Membership contains_pair(const Vec& x, const Vec& y, double tol) const;

  struct Inclusion {
    bool subset;
    double defect; // max principal-angle defect over graph columns
  };
  friend Inclusion relation_subset(const LinearRelation& A,
                                   const LinearRelation& B, double tol);
  friend bool relations_equal(const LinearRelation& A, const LinearRelation& B,
                              double tol);

private:
  LinearRelation(int n, Mat graph) : dim_(n), graph_(std::move(graph)) {}
  int dim_;
  Mat graph_;
};

LinearRelation inverse(const LinearRelation& A);
LinearRelation add(const LinearRelation& A, const LinearRelation& B);
LinearRelation compose(const LinearRelation& B, const LinearRelation& A);
LinearRelation scalar_shift_mul(const LinearRelation& A, Complex z, Complex w);
LinearRelation integer_power(const LinearRelation& A, int n);
LinearRelation adjoint(const LinearRelation& A);
LinearRelation::Inclusion relation_subset(const LinearRelation& A,
                                          const LinearRelation& B,
                                          double tol = kSubspaceEqTol);
bool relations_equal(const LinearRelation& A, const LinearRelation& B,
                     double tol = kSubspaceEqTol);

} // namespace relpow
