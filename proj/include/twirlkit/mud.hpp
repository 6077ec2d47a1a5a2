#ifndef TWIRLKIT_MUD_HPP
#define TWIRLKIT_MUD_HPP

#include "twirlkit/block_spec.hpp"
#include "twirlkit/channel.hpp"
#include "twirlkit/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace twirlkit {

// U_{k,l} = (1/n_l) sum_{a,b=1}^{n_l} ( sum_{c=1}^{n_l}
//     exp(2 pi i c(b-a)/n_l) exp(2 pi i k (N_l + (a-1) n_l + c)/N) ) E_{a,b}.
// All of k, a, b, c, ell are 1-based here; conversion to 0-based happens only
// when writing the matrix entry.
inline Matrix constructor_unitary(int k, int ell, const BlockSpec& spec) {
  const int big_n = spec.rank();
  const int p = static_cast<int>(spec.blocks.size());
  if (k < 1 || k > big_n)
    throw std::out_of_range("constructor_unitary: k out of range");
  if (ell < 1 || ell > p)
    throw std::out_of_range("constructor_unitary: block index out of range");
  const int n = spec.blocks[ell - 1].dimension;
  const int offset = block_offsets(spec)[ell - 1];  // N_ell
  Matrix u = Matrix::Zero(n, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      Complex sum = 0.0;
      for (int c = 1; c <= n; ++c) {
        sum += unit_phase(static_cast<long long>(c) * (b - a), n) *
               unit_phase(static_cast<long long>(k) *
                              (offset + (a - 1) * n + c),
                          big_n);
      }
      u(a - 1, b - 1) = sum / static_cast<double>(n);
    }
  return u;
}

// U_k = (1_{m_1} (x) U_{k,1}) (+) ... (+) (1_{m_p} (x) U_{k,p}).
inline Matrix assemble_unitary(int k, const BlockSpec& spec) {
  if (k < 1 || k > spec.rank())
    throw std::out_of_range("assemble_unitary: k out of range");
  Matrix u;
  for (int ell = 1; ell <= static_cast<int>(spec.blocks.size()); ++ell) {
    const Matrix piece = kron(identity(spec.blocks[ell - 1].multiplicity),
                              constructor_unitary(k, ell, spec));
    u = (u.size() == 0) ? piece : direct_sum(u, piece);
  }
  return u;
}

// The minimal mixed-unitary decomposition of block_channel(spec): N = sum n_l^2
// unitaries with uniform weights 1/N.
inline MixedUnitaryDecomposition minimal_decomposition(const BlockSpec& spec) {
  const int big_n = spec.rank();
  MixedUnitaryDecomposition d;
  d.dim = spec.total_dim();
  d.probs.assign(big_n, 1.0 / static_cast<double>(big_n));
  d.unitaries.reserve(big_n);
  for (int k = 1; k <= big_n; ++k) d.unitaries.push_back(assemble_unitary(k, spec));
  return d;
}

// Transport a decomposition through a basis change: U_k -> u^* U_k u, so the
// result represents X -> sum_k p_k (u^* U_k u) X (u^* U_k u)^*.
inline MixedUnitaryDecomposition conjugated_decomposition(
    const MixedUnitaryDecomposition& d, const Matrix& u,
    double tol = kDefaultTol) {
  if (u.rows() != d.dim || u.cols() != d.dim)
    throw std::invalid_argument("conjugated_decomposition: dimension mismatch");
  if (!is_unitary(u, tol))
    throw std::invalid_argument("conjugated_decomposition: u is not unitary");
  MixedUnitaryDecomposition out;
  out.dim = d.dim;
  out.probs = d.probs;
  out.unitaries.reserve(d.unitaries.size());
  for (const Matrix& uk : d.unitaries) out.unitaries.push_back(u.adjoint() * uk * u);
  return out;
}

struct DecompositionReport {
  bool pass = false;
  double max_channel_error = 0.0;    // Frobenius distance of Choi matrices
  double max_unitarity_error = 0.0;  // worst |U^*U - 1|_F over the family
  double prob_sum_error = 0.0;       // |sum p_k - 1|
};

inline DecompositionReport verify_decomposition(
    const MixedUnitaryDecomposition& d, const Channel& target,
    double tol = kDefaultTol) {
  if (d.dim != target.dim_in() || d.dim != target.dim_out())
    throw std::invalid_argument("verify_decomposition: dimension mismatch");
  DecompositionReport report;
  double psum = 0.0;
  for (double p : d.probs) psum += p;
  report.prob_sum_error = std::abs(psum - 1.0);
  for (const Matrix& u : d.unitaries)
    report.max_unitarity_error = std::max(
        report.max_unitarity_error,
        (u.adjoint() * u - identity(u.rows())).norm());
  // Choi matrix of the mixture, computed directly so that a corrupted
  // family still produces a numeric report instead of a constructor error.
  const int n = d.dim;
  Matrix jm = Matrix::Zero(n * n, n * n);
  for (std::size_t k = 0; k < d.unitaries.size(); ++k) {
    Vector v(n * n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) v(r * n + s) = d.unitaries[k](r, s);
    jm += d.probs[k] * v * v.adjoint();
  }
  report.max_channel_error = (jm - choi(target)).norm();
  report.pass = report.max_channel_error <= tol &&
                report.max_unitarity_error <= tol &&
                report.prob_sum_error <= tol;
  return report;
}

}  // namespace twirlkit

#endif  // TWIRLKIT_MUD_HPP
