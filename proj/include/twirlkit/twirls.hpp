#ifndef TWIRLKIT_TWIRLS_HPP
#define TWIRLKIT_TWIRLS_HPP

#include "twirlkit/block_spec.hpp"
#include "twirlkit/channel.hpp"
#include "twirlkit/matrix.hpp"
#include "twirlkit/mud.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace twirlkit {

// Permutation of {1,...,n}, stored 1-based.
struct Permutation {
  std::vector<int> mapping;

  explicit Permutation(std::vector<int> map) : mapping(std::move(map)) {
    std::vector<bool> seen(mapping.size(), false);
    for (int v : mapping) {
      if (v < 1 || v > static_cast<int>(mapping.size()) || seen[v - 1])
        throw std::invalid_argument("Permutation: not a bijection");
      seen[v - 1] = true;
    }
  }
};

// V_pi = sum_k E_{pi(k),k}, so V_pi e_k = e_{pi(k)}.
inline Matrix permutation_matrix(const Permutation& p) {
  const int n = static_cast<int>(p.mapping.size());
  Matrix v = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) v(p.mapping[k] - 1, k) = 1.0;
  return v;
}

// A represented finite group: a list of unitaries closed under product and
// inverse, containing the identity.  Closure is validated at construction.
class FiniteGroupRep {
 public:
  FiniteGroupRep(int dim, std::vector<Matrix> elements,
                 double unitary_tol = kDefaultTol, double match_tol = 1e-8)
      : dim_(dim), elements_(std::move(elements)) {
    if (dim_ < 1 || elements_.empty())
      throw std::invalid_argument("FiniteGroupRep: empty representation");
    for (const Matrix& g : elements_) {
      if (g.rows() != dim_ || g.cols() != dim_)
        throw std::invalid_argument("FiniteGroupRep: element has wrong dimension");
      if (!is_unitary(g, unitary_tol))
        throw std::invalid_argument("FiniteGroupRep: non-unitary element");
    }
    if (find(identity(dim_), match_tol) < 0)
      throw std::invalid_argument("FiniteGroupRep: identity missing");
    for (const Matrix& g : elements_)
      if (find(g.adjoint(), match_tol) < 0)
        throw std::invalid_argument("FiniteGroupRep: not closed under inverse");
    for (const Matrix& g : elements_)
      for (const Matrix& h : elements_)
        if (find(g * h, match_tol) < 0)
          throw std::invalid_argument("FiniteGroupRep: not closed under product");
  }

  int dim() const { return dim_; }
  const std::vector<Matrix>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }

  // Index of the listed element matching m entrywise, or -1.
  int find(const Matrix& m, double tol = 1e-8) const {
    const Complex tr = m.trace();
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (std::abs(elements_[i].trace() - tr) > tol * dim_) continue;
      if ((elements_[i] - m).cwiseAbs().maxCoeff() <= tol)
        return static_cast<int>(i);
    }
    return -1;
  }

 private:
  int dim_;
  std::vector<Matrix> elements_;
};

// All n! permutation matrices of Sym(n).
inline FiniteGroupRep symmetric_group_rep(int n) {
  if (n < 1) throw std::invalid_argument("symmetric_group_rep: n must be positive");
  if (n > 6) throw std::invalid_argument("symmetric_group_rep: group too large");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Matrix> elements;
  do {
    elements.push_back(permutation_matrix(Permutation(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return FiniteGroupRep(n, std::move(elements));
}

// Group generated by the shift S = sum_k E_{k+1 mod n, k} and the clock
// C = diag(1, w, ..., w^{n-1}), w = exp(2 pi i / n), together with the scalar
// phases needed for closure (the 2n-th roots of unity when n is even).
inline FiniteGroupRep weyl_group_rep(int n) {
  if (n < 2 || n > 6)
    throw std::invalid_argument("weyl_group_rep: n must be in 2..6");
  Matrix shift = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) shift((k + 1) % n, k) = 1.0;
  Matrix clock = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) clock(k, k) = unit_phase(k, n);
  const int q = (n % 2 == 0) ? 2 * n : n;  // order of the phase subgroup
  std::vector<Matrix> elements;
  elements.reserve(static_cast<std::size_t>(q) * n * n);
  Matrix sb = identity(n);
  for (int b = 0; b < n; ++b) {
    Matrix sbcc = sb;
    for (int c = 0; c < n; ++c) {
      for (int a = 0; a < q; ++a)
        elements.push_back(unit_phase(a, q) * sbcc);
      sbcc = sbcc * clock;
    }
    sb = shift * sb;
  }
  return FiniteGroupRep(n, std::move(elements));
}

// Phi(X) = (1/|G|) sum_g rho(g) X rho(g)^*, the projection onto the
// commutant of the representation.
inline Channel twirl_finite_group(const FiniteGroupRep& rep) {
  std::vector<Matrix> kraus;
  kraus.reserve(rep.elements().size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(rep.order()));
  for (const Matrix& g : rep.elements()) kraus.push_back(scale * g);
  return Channel(rep.dim(), rep.dim(), std::move(kraus));
}

// Kraus family of a channel given as an explicit linear map over the matrix
// unit basis, via spectral factorization of its Choi matrix.
template <typename MapFn>
Channel channel_from_map(int n, MapFn&& map, double cutoff = 1e-12) {
  Matrix j = Matrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      j += kron(map(matrix_unit(n, n, a, b)), matrix_unit(n, n, a, b));
  return Channel(n, n, kraus_from_choi(j, n, n, cutoff));
}

// Phi_Sym(n)(X) = <J/n, X> J/n + <1 - J/n, X> (1 - J/n)/(n-1).
inline Channel permutation_twirl_closed_form(int n) {
  if (n < 2)
    throw std::invalid_argument("permutation_twirl_closed_form: n must be >= 2");
  const Matrix p0 = all_ones(n) / static_cast<double>(n);
  const Matrix p1 = identity(n) - p0;
  return channel_from_map(n, [&](const Matrix& x) {
    return frob_inner(p0, x) * p0 +
           frob_inner(p1, x) * p1 / static_cast<double>(n - 1);
  });
}

// U = (1/sqrt(n)) sum_{a,b=1}^n exp(2 pi i a b / n) E_{a,b}; maps J_n/n to
// E_{n,n} and 1 - J_n/n to 1_{n-1} (+) 0 under conjugation.
inline Matrix fourier_matrix(int n) {
  if (n < 1) throw std::invalid_argument("fourier_matrix: n must be positive");
  Matrix u(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      u(a - 1, b - 1) = scale * unit_phase(static_cast<long long>(a) * b, n);
  return u;
}

// The (n-1)^2 + 1 unitaries U^* U_k U decomposing the permutation twirl.
inline MixedUnitaryDecomposition permutation_twirl_decomposition(int n) {
  if (n < 2 || n > 6)
    throw std::invalid_argument("permutation_twirl_decomposition: n must be in 2..6");
  const BlockSpec spec({{1, n - 1}, {1, 1}});
  return conjugated_decomposition(minimal_decomposition(spec), fourier_matrix(n));
}

// Projections onto the symmetric and anti-symmetric subspaces of C^n (x) C^n:
// Pi_0 = (1 + SWAP)/2 and Pi_1 = (1 - SWAP)/2.
inline std::pair<Matrix, Matrix> werner_projectors(int n) {
  if (n < 2) throw std::invalid_argument("werner_projectors: n must be >= 2");
  Matrix swap = Matrix::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      swap += kron(matrix_unit(n, n, j, k), matrix_unit(n, n, k, j));
  const Matrix id = identity(n * n);
  return {(id + swap) / 2.0, (id - swap) / 2.0};
}

// Xi(X) = <Pi_0, X> Pi_0 / C(n+1,2) + <Pi_1, X> Pi_1 / C(n,2), the average
// over U (x) U conjugations.
inline Channel werner_channel(int n) {
  if (n < 2) throw std::invalid_argument("werner_channel: n must be >= 2");
  const auto [p0, p1] = werner_projectors(n);
  const double r0 = n * (n + 1) / 2.0;
  const double r1 = n * (n - 1) / 2.0;
  return channel_from_map(n * n, [&](const Matrix& x) {
    return frob_inner(p0, x) * p0 / r0 + frob_inner(p1, x) * p1 / r1;
  });
}

// Minimal decomposition of the Werner twirl: diagonalize Pi_0 so the
// symmetric eigenspace comes first, decompose Omega_{C(n+1,2)} (+)
// Omega_{C(n,2)}, and conjugate back.
inline MixedUnitaryDecomposition werner_decomposition(int n) {
  if (n < 2 || n > 3)
    throw std::invalid_argument("werner_decomposition: n must be 2 or 3");
  const auto [p0, p1] = werner_projectors(n);
  const int r0 = n * (n + 1) / 2;
  const int r1 = n * (n - 1) / 2;
  // Descending eigenvalue sort puts the rank-r0 unit eigenspace first, so
  // U Pi_0 U^* = 1_{r0} (+) 0 with U = V^*.
  const Eigensystem eig = hermitian_eig(p0);
  const Matrix u = eig.vectors.adjoint();
  const BlockSpec spec({{1, r0}, {1, r1}});
  return conjugated_decomposition(minimal_decomposition(spec), u);
}

}  // namespace twirlkit

#endif  // TWIRLKIT_TWIRLS_HPP
