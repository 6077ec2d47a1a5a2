#ifndef TWIRLKIT_COMPLEMENTARY_HPP
#define TWIRLKIT_COMPLEMENTARY_HPP

#include "twirlkit/block_spec.hpp"
#include "twirlkit/channel.hpp"
#include "twirlkit/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace twirlkit {

// Basis of traceless matrices in M_n:
// {E_{j,k} : j != k} followed by {E_{j,j} - E_{j+1,j+1} : 1 <= j < n}.
inline std::vector<Matrix> traceless_basis(int n) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(n) * n - 1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) basis.push_back(matrix_unit(n, n, j, k));
  for (int j = 0; j + 1 < n; ++j)
    basis.push_back(matrix_unit(n, n, j, j) - matrix_unit(n, n, j + 1, j + 1));
  return basis;
}

// Channel Psi complementary to c, with Psi(X)_{j,k} = Tr(A_j X A_k^*).
// Both channels arise from the single isometry A = sum_k A_k (x) e_k; the
// Kraus family below realizes tracing out the first tensor factor of A X A^*.
inline Channel complementary_from_kraus(const Channel& c) {
  const int n = c.dim_in();
  const int m = c.dim_out();
  const int r = static_cast<int>(c.kraus().size());
  std::vector<Matrix> kraus;
  kraus.reserve(m);
  for (int j = 0; j < m; ++j) {
    Matrix b(r, n);
    for (int k = 0; k < r; ++k) b.row(k) = c.kraus()[k].row(j);
    kraus.push_back(std::move(b));
  }
  return Channel(n, r, std::move(kraus));
}

// Psi_n(X) = (1/n) 1_n (x) X, complementary to the depolarizing channel.
inline Channel depolarizing_complement(int n) {
  std::vector<Matrix> kraus;
  kraus.reserve(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    Matrix e = Matrix::Zero(n, 1);
    e(j, 0) = scale;
    kraus.push_back(kron(e, identity(n)));
  }
  return Channel(n, n * n, std::move(kraus));
}

// Complementary channel of block_channel(spec), mapping M_d -> M_N with image
// inside (1_{n_1} (x) M_{n_1}) (+) ... (+) (1_{n_p} (x) M_{n_p}).  The Kraus
// ordering of block_channel places the N output coordinates block by block.
inline Channel block_complement(const BlockSpec& spec) {
  return complementary_from_kraus(block_channel(spec));
}

struct DiagonalReport {
  bool pass = false;
  double worst = 0.0;  // largest diagonal magnitude seen over the probe set
};

// True iff psi(X) has vanishing diagonal for every traceless X, probed over
// the fixed traceless basis.
inline DiagonalReport vanishing_diagonal_check(const Channel& psi,
                                               double tol = kDefaultTol) {
  double worst = 0.0;
  for (const Matrix& x : traceless_basis(psi.dim_in())) {
    const Matrix y = psi.apply(x);
    for (Eigen::Index i = 0; i < y.rows(); ++i)
      worst = std::max(worst, std::abs(y(i, i)));
  }
  return {worst <= tol, worst};
}

// True iff the given vectors are pairwise orthogonal and each one is a trace
// vector for the set {psi(X) : Tr(X) = 0}, probed over the traceless basis.
inline bool trace_vector_basis_check(const Channel& psi,
                                     const std::vector<Vector>& vectors,
                                     double tol = kDefaultTol) {
  const int big_n = psi.dim_out();
  if (static_cast<int>(vectors.size()) != big_n)
    throw std::invalid_argument("trace_vector_basis_check: need N vectors");
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (std::abs(vectors[i].dot(vectors[j])) > tol) return false;
  for (const Matrix& x : traceless_basis(psi.dim_in())) {
    const Matrix y = psi.apply(x);
    const Complex tr = y.trace();
    for (const Vector& v : vectors)
      if (std::abs(v.dot(y * v) - tr) > tol) return false;
  }
  return true;
}

// Unitary U = sum_k e_k v_k^* / |v_k| mapping an orthogonal trace-vector
// basis onto the standard basis.
inline Matrix trace_vector_rotation(const std::vector<Vector>& vectors) {
  const int n = static_cast<int>(vectors.size());
  Matrix u(n, n);
  for (int k = 0; k < n; ++k) {
    const double norm = vectors[k].norm();
    if (norm <= 0.0)
      throw std::invalid_argument("trace_vector_rotation: zero vector");
    u.row(k) = vectors[k].adjoint() / norm;
  }
  return u;
}

inline std::vector<Vector> standard_basis(int n) {
  std::vector<Vector> basis;
  basis.reserve(n);
  for (int k = 0; k < n; ++k) {
    Vector e = Vector::Zero(n);
    e(k) = 1.0;
    basis.push_back(std::move(e));
  }
  return basis;
}

// Orthogonal projection of y onto (1_{m_1} (x) M_{n_1}) (+) ... , assuming
// the coordinates are partitioned block by block with (multiplicity, irrep)
// row-major ordering inside each block.
inline Matrix project_onto_block_algebra(const Matrix& y, const BlockSpec& spec) {
  Matrix out = Matrix::Zero(y.rows(), y.cols());
  int off = 0;
  for (const Block& b : spec.blocks) {
    const int m = b.multiplicity;
    const int n = b.dimension;
    Matrix avg = Matrix::Zero(n, n);
    for (int i = 0; i < m; ++i)
      avg += y.block(off + i * n, off + i * n, n, n);
    avg /= static_cast<double>(m);
    for (int i = 0; i < m; ++i)
      out.block(off + i * n, off + i * n, n, n) = avg;
    off += m * n;
  }
  return out;
}

// True iff psi(X) lies in (1_{m_1} (x) M_{n_1}) (+) ... for every basis X.
// Requires m_l >= n_l for each block, matching the trace-vector existence
// condition for such algebras.
inline bool image_in_block_algebra_check(const Channel& psi,
                                         const BlockSpec& spec,
                                         double tol = kDefaultTol) {
  int total = 0;
  for (const Block& b : spec.blocks) {
    if (b.multiplicity < b.dimension)
      throw std::invalid_argument(
          "image_in_block_algebra_check: requires m_l >= n_l for every block");
    total += b.multiplicity * b.dimension;
  }
  if (total != psi.dim_out())
    throw std::invalid_argument(
        "image_in_block_algebra_check: spec dimension mismatch");
  const int n = psi.dim_in();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Matrix y = psi.apply(matrix_unit(n, n, j, k));
      if ((y - project_onto_block_algebra(y, spec)).norm() > tol) return false;
    }
  return true;
}

}  // namespace twirlkit

#endif  // TWIRLKIT_COMPLEMENTARY_HPP
