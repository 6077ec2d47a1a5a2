#ifndef TWIRLKIT_CHANNEL_HPP
#define TWIRLKIT_CHANNEL_HPP

#include "twirlkit/block_spec.hpp"
#include "twirlkit/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace twirlkit {

// A CPTP map Phi(X) = sum_k A_k X A_k^* stored as its Kraus family.
// Trace preservation (sum_k A_k^* A_k = 1) is validated at construction.
class Channel {
 public:
  Channel(int dim_in, int dim_out, std::vector<Matrix> kraus,
          double tol = kDefaultTol)
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
    if (dim_in_ < 1 || dim_out_ < 1)
      throw std::invalid_argument("Channel: dimensions must be positive");
    if (kraus_.empty())
      throw std::invalid_argument("Channel: empty Kraus family");
    for (const Matrix& a : kraus_)
      if (a.rows() != dim_out_ || a.cols() != dim_in_)
        throw std::invalid_argument("Channel: Kraus operator has wrong shape");
    Matrix sum = Matrix::Zero(dim_in_, dim_in_);
    for (const Matrix& a : kraus_) sum += a.adjoint() * a;
    if ((sum - identity(dim_in_)).norm() > tol)
      throw std::invalid_argument("Channel: Kraus family is not trace preserving");
  }

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& x) const {
    if (x.rows() != dim_in_ || x.cols() != dim_in_)
      throw std::invalid_argument("Channel::apply: input dimension mismatch");
    Matrix out = Matrix::Zero(dim_out_, dim_out_);
    for (const Matrix& a : kraus_) out += a * x * a.adjoint();
    return out;
  }

 private:
  int dim_in_;
  int dim_out_;
  std::vector<Matrix> kraus_;
};

// Choi matrix J(Phi) = sum_{j,k} Phi(E_{j,k}) (x) E_{j,k}, an mn x mn matrix.
inline Matrix choi(const Channel& c) {
  const int n = c.dim_in();
  const int m = c.dim_out();
  Matrix j = Matrix::Zero(m * n, m * n);
  // J(Phi) = sum_i vec(A_i) vec(A_i)^* with vec(A)[r*n+s] = A(r,s).
  for (const Matrix& a : c.kraus()) {
    Vector v(m * n);
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < n; ++s) v(r * n + s) = a(r, s);
    j += v * v.adjoint();
  }
  return j;
}

inline int choi_rank(const Channel& c, double tol = kDefaultTol) {
  return numerical_rank(choi(c), tol);
}

// Kraus family from the spectral factorization of a Choi matrix, dropping
// eigenvalues below the cutoff.
inline std::vector<Matrix> kraus_from_choi(const Matrix& j, int dim_out,
                                           int dim_in, double cutoff = 1e-12) {
  if (j.rows() != dim_out * dim_in || j.cols() != dim_out * dim_in)
    throw std::invalid_argument("kraus_from_choi: dimension mismatch");
  const Eigensystem eig = hermitian_eig(j, 1e-9);
  std::vector<Matrix> kraus;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lambda = eig.values(i);
    if (lambda <= cutoff) continue;
    Matrix a(dim_out, dim_in);
    for (int r = 0; r < dim_out; ++r)
      for (int s = 0; s < dim_in; ++s)
        a(r, s) = std::sqrt(lambda) * eig.vectors(r * dim_in + s, i);
    kraus.push_back(std::move(a));
  }
  return kraus;
}

inline Channel identity_channel(int n) {
  return Channel(n, n, {identity(n)});
}

// Completely depolarizing channel Omega_n with Kraus family {E_{j,k}/sqrt(n)},
// ordered row-major in (j,k).
inline Channel depolarizing(int n) {
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(n) * n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      kraus.push_back(scale * matrix_unit(n, n, j, k));
  return Channel(n, n, std::move(kraus));
}

// Kraus family {A_i (x) B_j}, i outer.
inline Channel channel_tensor(const Channel& a, const Channel& b) {
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const Matrix& ka : a.kraus())
    for (const Matrix& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  return Channel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(),
                 std::move(kraus));
}

// Kraus family {A_i (+) 0} followed by {0 (+) B_j}.  The zero padding makes
// the resulting channel annihilate cross blocks.
inline Channel channel_direct_sum(const Channel& a, const Channel& b) {
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus().size() + b.kraus().size());
  const Matrix za_out = Matrix::Zero(b.dim_out(), b.dim_in());
  const Matrix zb_out = Matrix::Zero(a.dim_out(), a.dim_in());
  for (const Matrix& ka : a.kraus()) kraus.push_back(direct_sum(ka, za_out));
  for (const Matrix& kb : b.kraus()) kraus.push_back(direct_sum(zb_out, kb));
  return Channel(a.dim_in() + b.dim_in(), a.dim_out() + b.dim_out(),
                 std::move(kraus));
}

// Phi = (1_{M_{m_1}} (x) Omega_{n_1}) (+) ... (+) (1_{M_{m_p}} (x) Omega_{n_p}).
inline Channel block_channel(const BlockSpec& spec) {
  if (spec.blocks.empty())
    throw std::invalid_argument("block_channel: empty spec");
  auto one_block = [](const Block& b) {
    return channel_tensor(identity_channel(b.multiplicity),
                          depolarizing(b.dimension));
  };
  Channel phi = one_block(spec.blocks.front());
  for (std::size_t i = 1; i < spec.blocks.size(); ++i)
    phi = channel_direct_sum(phi, one_block(spec.blocks[i]));
  return phi;
}

// X -> V Phi(X) V^* for an isometry or unitary V.
inline Channel conjugate_output(const Channel& c, const Matrix& v) {
  if (v.cols() != c.dim_out())
    throw std::invalid_argument("conjugate_output: dimension mismatch");
  std::vector<Matrix> kraus;
  kraus.reserve(c.kraus().size());
  for (const Matrix& a : c.kraus()) kraus.push_back(v * a);
  return Channel(c.dim_in(), static_cast<int>(v.rows()), std::move(kraus));
}

// Composition b after a, Kraus family {B_j A_i}.
inline Channel compose(const Channel& b, const Channel& a) {
  if (a.dim_out() != b.dim_in())
    throw std::invalid_argument("compose: dimension mismatch");
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const Matrix& kb : b.kraus())
    for (const Matrix& ka : a.kraus()) kraus.push_back(kb * ka);
  return Channel(a.dim_in(), b.dim_out(), std::move(kraus));
}

struct ChannelComparison {
  bool equal = false;
  double choi_error = 0.0;  // Frobenius distance between Choi matrices
};

// Equality is defined on Choi matrices; Kraus representations are non-unique.
inline ChannelComparison channels_equal(const Channel& a, const Channel& b,
                                        double tol = kDefaultTol) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
    throw std::invalid_argument("channels_equal: dimension mismatch");
  const double err = (choi(a) - choi(b)).norm();
  return {err <= tol, err};
}

// Convex combination sum_k p_k U_k X U_k^* of unitary channels.
struct MixedUnitaryDecomposition {
  int dim = 0;
  std::vector<double> probs;
  std::vector<Matrix> unitaries;

  void validate(double tol = kDefaultTol) const {
    if (dim < 1) throw std::invalid_argument("decomposition: dim must be positive");
    if (probs.size() != unitaries.size() || probs.empty())
      throw std::invalid_argument("decomposition: probs/unitaries size mismatch");
    double sum = 0.0;
    for (double p : probs) {
      if (p < 0.0) throw std::invalid_argument("decomposition: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("decomposition: probabilities do not sum to 1");
    for (const Matrix& u : unitaries)
      if (u.rows() != dim || u.cols() != dim || !is_unitary(u, tol))
        throw std::invalid_argument("decomposition: non-unitary element");
  }
};

inline Channel as_channel(const MixedUnitaryDecomposition& d) {
  d.validate();
  std::vector<Matrix> kraus;
  kraus.reserve(d.unitaries.size());
  for (std::size_t k = 0; k < d.unitaries.size(); ++k)
    kraus.push_back(std::sqrt(d.probs[k]) * d.unitaries[k]);
  return Channel(d.dim, d.dim, std::move(kraus));
}

}  // namespace twirlkit

#endif  // TWIRLKIT_CHANNEL_HPP
