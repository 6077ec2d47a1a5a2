#ifndef TWIRLKIT_MATRIX_HPP
#define TWIRLKIT_MATRIX_HPP

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twirlkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-10;

// Matrix unit E_{j,k} (0-based indices here; callers using the 1-based
// conventions of the formulas convert at this boundary).
inline Matrix matrix_unit(Eigen::Index rows, Eigen::Index cols, Eigen::Index j,
                          Eigen::Index k) {
  Matrix e = Matrix::Zero(rows, cols);
  e(j, k) = 1.0;
  return e;
}

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

// All-ones matrix J_n.
inline Matrix all_ones(Eigen::Index n) { return Matrix::Ones(n, n); }

// exp(2*pi*i * num/den) with the integer numerator reduced mod den first,
// so large indices do not lose precision in the angle.
inline Complex unit_phase(long long num, long long den) {
  long long r = num % den;
  if (r < 0) r += den;
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Hilbert-Schmidt inner product <A,B> = Tr(A^* B).
inline Complex frob_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("frob_inner: dimension mismatch");
  return (a.adjoint() * b).trace();
}

inline double frob_norm(const Matrix& a) { return a.norm(); }

inline bool is_unitary(const Matrix& u, double tol = kDefaultTol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - identity(u.rows())).norm() <= tol;
}

struct Eigensystem {
  RealVector values;   // sorted descending
  Matrix vectors;      // columns, same order as values
};

// Eigendecomposition of a Hermitian matrix with deterministic output:
// eigenvalues descending, each eigenvector's largest-magnitude component
// made real positive.
inline Eigensystem hermitian_eig(const Matrix& a, double tol = kDefaultTol) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("hermitian_eig: matrix not square");
  if ((a - a.adjoint()).norm() > tol)
    throw std::invalid_argument("hermitian_eig: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: convergence failure");
  const Eigen::Index n = a.rows();
  Eigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen sorts ascending; reverse to descending.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    Vector v = solver.eigenvectors().col(n - 1 - i);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const Complex pivot = v(imax);
    if (std::abs(pivot) > 0) v *= std::conj(pivot) / std::abs(pivot);
    out.vectors.col(i) = v;
  }
  return out;
}

// Count of singular values above tol * (largest singular value); the zero
// matrix has rank 0.
inline int numerical_rank(const Matrix& a, double tol = kDefaultTol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

}  // namespace twirlkit

#endif  // TWIRLKIT_MATRIX_HPP
