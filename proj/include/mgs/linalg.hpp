#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mgs/errors.hpp"

namespace mgs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Contractual numerical tolerances.
namespace tol {
inline constexpr double kSymmetry = 1e-12;       // max asymmetry, relative to max |entry|
inline constexpr double kSpdPivot = 1e-12;       // smallest accepted pivot, relative to trace/n
inline constexpr double kSolveResidual = 1e-10;  // ||Ax - b|| <= tol (||A|| ||x|| + ||b||)
inline constexpr double kEigResidual = 1e-9;     // ||Av - lambda v|| <= tol ||A||
inline constexpr double kOrthonormality = 1e-10;
}  // namespace tol

/// Dense real symmetric matrix. Construction symmetrizes the input and
/// rejects asymmetry above tol::kSymmetry relative to the largest entry.
class SymMatrix {
 public:
  explicit SymMatrix(int n) : m_(Matrix::Zero(n, n)) {}
  explicit SymMatrix(const Matrix& m);

  int size() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) { m_(i, j) = v; m_(j, i) = v; }
  void add(int i, int j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) += v;
  }

  const Matrix& dense() const { return m_; }

 private:
  Matrix m_;
};

/// Solves Ax = b for symmetric positive definite A (Cholesky).
Vector solve_spd(const SymMatrix& A, const Vector& b);

struct EigResult {
  Vector values;   // ascending
  Matrix vectors;  // columns, orthonormal
};

/// Full symmetric eigendecomposition, eigenvalues ascending.
EigResult sym_eig(const SymMatrix& A);

/// Schur complement onto the kept indices: A_BB - A_BI A_II^{-1} A_IB.
SymMatrix schur_complement(const SymMatrix& A, const std::vector<int>& keep);

}  // namespace mgs
