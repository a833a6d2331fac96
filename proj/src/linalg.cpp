#include "mgs/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace mgs {

SymMatrix::SymMatrix(const Matrix& m) : m_(m) {
  if (m.rows() != m.cols()) throw NotPositiveDefinite("matrix is not square");
  double scale = m.cwiseAbs().maxCoeff();
  double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol::kSymmetry * std::max(scale, 1e-300))
    throw NotPositiveDefinite("matrix asymmetry " + std::to_string(asym) + " exceeds tolerance");
  m_ = 0.5 * (m + m.transpose());
}

Vector solve_spd(const SymMatrix& A, const Vector& b) {
  const int n = A.size();
  if (b.size() != n) throw NotPositiveDefinite("dimension mismatch in solve_spd");
  Eigen::LLT<Matrix> llt(A.dense());
  double pivot_floor = tol::kSpdPivot * A.dense().trace() / std::max(n, 1);
  if (llt.info() != Eigen::Success ||
      llt.matrixLLT().diagonal().minCoeff() < std::sqrt(std::max(pivot_floor, 0.0)))
    throw NotPositiveDefinite("Cholesky pivot below threshold");
  return llt.solve(b);
}

EigResult sym_eig(const SymMatrix& A) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.dense());
  if (es.info() != Eigen::Success) throw ConvergenceFailure("symmetric eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

SymMatrix schur_complement(const SymMatrix& A, const std::vector<int>& keep) {
  const int n = A.size();
  std::vector<char> kept(n, 0);
  for (int i : keep) {
    if (i < 0 || i >= n) throw IndexOutOfRange("schur_complement index " + std::to_string(i));
    kept[i] = 1;
  }
  std::vector<int> elim;
  for (int i = 0; i < n; ++i)
    if (!kept[i]) elim.push_back(i);
  const int nb = static_cast<int>(keep.size()), ni = static_cast<int>(elim.size());
  if (ni == 0) {
    Matrix out(nb, nb);
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) out(i, j) = A(keep[i], keep[j]);
    return SymMatrix(out);
  }

  Matrix Abb(nb, nb), Abi(nb, ni), Aii(ni, ni);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) Abb(i, j) = A(keep[i], keep[j]);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < ni; ++j) Abi(i, j) = A(keep[i], elim[j]);
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < ni; ++j) Aii(i, j) = A(elim[i], elim[j]);

  Eigen::LLT<Matrix> llt(Aii);
  if (llt.info() != Eigen::Success)
    throw SingularInteriorBlock("eliminated block is not positive definite");
  Matrix out = Abb - Abi * llt.solve(Abi.transpose());
  return SymMatrix(0.5 * (out + out.transpose()));
}

}  // namespace mgs
