#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

using namespace relpow;
using namespace relpow::testing;

TEST_CASE("matrix relation round trip") {
  Mat M(2, 2);
  M << Complex(1, 1), Complex(0, 0), Complex(2, 0), Complex(-1, 0);
  LinearRelation A = LinearRelation::from_matrix(M);
  CHECK(A.dim() == 2);
  CHECK(A.graph().cols() == 2);
  Vec x(2);
  x << Complex(1, 0), Complex(0, 1);
  auto m = A.contains_pair(x, Vec(M * x), 1e-10);
  CHECK(m.member);
  CHECK(m.residual < 1e-12);
  Vec wrong = M * x + Vec::Ones(2);
  CHECK_FALSE(A.contains_pair(x, wrong, 1e-10).member);
}

TEST_CASE("composition of matrices is the matrix product") {
  Mat M(2, 2), N(2, 2);
  M << Complex(1, 0), Complex(2, 0), Complex(0, 1), Complex(3, 0);
  N << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(1, 1);
  LinearRelation BA = compose(LinearRelation::from_matrix(N),
                              LinearRelation::from_matrix(M));
  CHECK(relations_equal(BA, LinearRelation::from_matrix(Mat(N * M)), 1e-10));
}

TEST_CASE("sum and scalar shift of matrices") {
  Mat M(2, 2), N(2, 2);
  M << Complex(1, 0), Complex(2, 0), Complex(0, 1), Complex(3, 0);
  N << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(1, 1);
  LinearRelation S = add(LinearRelation::from_matrix(M),
                         LinearRelation::from_matrix(N));
  CHECK(relations_equal(S, LinearRelation::from_matrix(Mat(M + N)), 1e-10));
  const Complex z(2, 1), w(-1, 0);
  LinearRelation sh = scalar_shift_mul(LinearRelation::from_matrix(M), z, w);
  Mat expect = w * Mat::Identity(2, 2) + z * M;
  CHECK(relations_equal(sh, LinearRelation::from_matrix(expect), 1e-10));
}

TEST_CASE("inverse swaps components") {
  LinearRelation A = diag_relation({Complex(-1, 0), Complex(-4, 0)});
  LinearRelation Ai = inverse(A);
  Vec x(2), y(2);
  x << 1.0, 1.0;
  y << -1.0, -4.0;
  CHECK(A.contains_pair(x, y, 1e-10).member);
  CHECK(Ai.contains_pair(y, x, 1e-10).member);
}

TEST_CASE("integer powers agree with repeated products") {
  Mat M(2, 2);
  M << Complex(-1, 0), Complex(1, 0), Complex(0, 0), Complex(-3, 0);
  LinearRelation A = LinearRelation::from_matrix(M);
  CHECK(relations_equal(integer_power(A, 3),
                        LinearRelation::from_matrix(Mat(M * M * M)), 1e-9));
  CHECK(relations_equal(integer_power(A, -1),
                        LinearRelation::from_matrix(M.inverse()), 1e-9));
  CHECK(relations_equal(integer_power(A, 0), LinearRelation::identity(2),
                        1e-10));
}

TEST_CASE("adjoint of a matrix relation is the conjugate transpose") {
  Mat M(2, 2);
  M << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(-2, 1);
  LinearRelation As = adjoint(LinearRelation::from_matrix(M));
  CHECK(relations_equal(As, LinearRelation::from_matrix(Mat(M.adjoint())),
                        1e-10));
}

TEST_CASE("pencil relation exposes the multivalued part") {
  LinearRelation A = singular_pencil();
  SubspaceQuad parts = A.parts();
  CHECK(parts.domain.cols() == 1);
  CHECK(parts.mulpart.cols() == 1);
  CHECK(std::abs(parts.domain(1, 0)) < 1e-12); // domain = span e1
  CHECK(std::abs(parts.mulpart(0, 0)) < 1e-12); // A0 = span e2
  Vec x(2), y(2);
  x << 1.0, 0.0;
  y << -1.0, 3.5; // any second coordinate is admissible
  CHECK(A.contains_pair(x, y, 1e-10).member);
  x << 0.0, 1.0; // not in the domain
  CHECK_FALSE(A.contains_pair(x, y, 1e-10).member);
}

TEST_CASE("relation inclusion and equality") {
  LinearRelation A = diag_relation({Complex(-1, 0), Complex(-4, 0)});
  LinearRelation Z = LinearRelation::zero_relation(2);
  auto inc = relation_subset(Z, A, 1e-10);
  CHECK(inc.subset);
  CHECK_FALSE(relation_subset(A, Z, 1e-10).subset);
  CHECK(relations_equal(A, A, 1e-10));
  CHECK_FALSE(relations_equal(A, LinearRelation::identity(2), 1e-10));
}

TEST_CASE("dimension mismatches are rejected") {
  LinearRelation A = diag_relation({Complex(-1, 0), Complex(-4, 0)});
  LinearRelation B = LinearRelation::identity(3);
  CHECK_THROWS_AS(compose(A, B), DimensionMismatch);
  CHECK_THROWS_AS(add(A, B), DimensionMismatch);
}
