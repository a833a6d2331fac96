#include <doctest.h>

#include <cmath>

#include "mgs/linalg.hpp"

using namespace mgs;

TEST_CASE("solve_spd basic cases") {
  SymMatrix I(2);
  I.set(0, 0, 1);
  I.set(1, 1, 1);
  Vector b(2);
  b << 3, -7;
  CHECK((solve_spd(I, b) - b).norm() == doctest::Approx(0.0));

  SymMatrix D(2);
  D.set(0, 0, 2);
  D.set(1, 1, 4);
  Vector b2(2);
  b2 << 2, 4;
  Vector x = solve_spd(D, b2);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));

  // grounded 3-path Laplacian
  SymMatrix A(2);
  A.set(0, 0, 2);
  A.set(1, 1, 2);
  A.set(0, 1, -1);
  Vector b3(2);
  b3 << 1, 0;
  Vector x3 = solve_spd(A, b3);
  CHECK(x3[0] == doctest::Approx(2.0 / 3));
  CHECK(x3[1] == doctest::Approx(1.0 / 3));
}

TEST_CASE("solve_spd rejects indefinite input") {
  SymMatrix A(2);
  A.set(0, 0, 1);
  A.set(1, 1, -1);
  Vector b(2);
  b << 1, 1;
  CHECK_THROWS_AS(solve_spd(A, b), NotPositiveDefinite);
}

TEST_CASE("solve_spd residual contract") {
  SymMatrix A(3);
  A.set(0, 0, 4);
  A.set(1, 1, 5);
  A.set(2, 2, 6);
  A.set(0, 1, 1);
  A.set(1, 2, -2);
  Vector b(3);
  b << 1, 2, 3;
  Vector x = solve_spd(A, b);
  double resid = (A.dense() * x - b).norm();
  CHECK(resid <= tol::kSolveResidual * (A.dense().norm() * x.norm() + b.norm()));
}

TEST_CASE("sym_eig basic cases") {
  SymMatrix D(3);
  D.set(0, 0, 3);
  D.set(1, 1, 1);
  D.set(2, 2, 2);
  EigResult e = sym_eig(D);
  CHECK(e.values[0] == doctest::Approx(1));
  CHECK(e.values[1] == doctest::Approx(2));
  CHECK(e.values[2] == doctest::Approx(3));

  SymMatrix F(2);
  F.set(0, 1, 1);
  EigResult e2 = sym_eig(F);
  CHECK(e2.values[0] == doctest::Approx(-1));
  CHECK(e2.values[1] == doctest::Approx(1));

  // eigenpair and orthonormality contracts
  double nrm = D.dense().norm();
  for (int i = 0; i < 3; ++i) {
    Vector v = e.vectors.col(i);
    CHECK((D.dense() * v - e.values[i] * v).norm() <= tol::kEigResidual * nrm);
  }
  CHECK((e.vectors.transpose() * e.vectors - Matrix::Identity(3, 3)).norm() <=
        tol::kOrthonormality * 10);
}

TEST_CASE("matrix from the 3-atom path measure has spectrum (0, 8, 16)") {
  // M^{-1/2} S M^{-1/2} for S = path Laplacian (lengths 1/2), masses (1/4,1/2,1/4)
  double s = 4.0 * std::sqrt(0.5) / std::sqrt(0.25);
  SymMatrix K(3);
  K.set(0, 0, 8);
  K.set(1, 1, 8);
  K.set(2, 2, 8);
  K.set(0, 1, -s);
  K.set(1, 2, -s);
  EigResult e = sym_eig(K);
  CHECK(e.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(8.0));
  CHECK(e.values[2] == doctest::Approx(16.0));
}

TEST_CASE("schur_complement") {
  SymMatrix A(2);
  A.set(0, 0, 1);
  A.set(1, 1, 2);
  A.set(0, 1, 0.5);
  SymMatrix full = schur_complement(A, {0, 1});
  CHECK(full(0, 0) == doctest::Approx(1));
  CHECK(full(0, 1) == doctest::Approx(0.5));

  // series law: eliminate the middle of a 3-path with conductances 1/a, 1/b
  double a = 2.0, b = 3.0;
  SymMatrix L(3);
  L.set(0, 0, 1 / a);
  L.set(1, 1, 1 / a + 1 / b);
  L.set(2, 2, 1 / b);
  L.set(0, 1, -1 / a);
  L.set(1, 2, -1 / b);
  SymMatrix S = schur_complement(L, {0, 2});
  double c = 1.0 / (a + b);
  CHECK(S(0, 0) == doctest::Approx(c));
  CHECK(S(1, 1) == doctest::Approx(c));
  CHECK(S(0, 1) == doctest::Approx(-c));
  // still a weighted Laplacian: zero row sums, nonpositive off-diagonal
  CHECK(S(0, 0) + S(0, 1) == doctest::Approx(0.0));
  CHECK(S(0, 1) <= 0.0);

  SymMatrix one(1);
  one.set(0, 0, 5);
  CHECK(schur_complement(one, {0})(0, 0) == doctest::Approx(5));
}
