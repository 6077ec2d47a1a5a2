#ifndef TWIRLKIT_ISOTYPIC_HPP
#define TWIRLKIT_ISOTYPIC_HPP

#include "twirlkit/block_spec.hpp"
#include "twirlkit/channel.hpp"
#include "twirlkit/matrix.hpp"
#include "twirlkit/mud.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace twirlkit {

struct BlockStructure {
  BlockSpec spec;
  Matrix basis_change;  // unitary U with U phi(U^* X U) U^* = block_channel(spec)
  double residual = 0.0;
};

namespace detail {

inline void require_projection_channel(const Channel& phi, double tol = 1e-8) {
  if (phi.dim_in() != phi.dim_out())
    throw std::invalid_argument("commutant projection must be square");
  const Matrix j = choi(phi);
  if ((choi(compose(phi, phi)) - j).norm() > tol)
    throw std::invalid_argument("not a projection channel");
}

inline Matrix random_hermitian(int d, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return (g + g.adjoint()) / 2.0;
}

}  // namespace detail

// A generic element of the commutant algebra: phi(H) for a seeded random
// Hermitian H.  phi must be a commutant-projection channel.
inline Matrix random_commutant_element(const Channel& phi,
                                       unsigned long long seed) {
  detail::require_projection_channel(phi);
  Matrix a = phi.apply(detail::random_hermitian(phi.dim_in(), seed));
  a = (a + a.adjoint()) / 2.0;
  return a;
}

// Numerically recover (spec, U) with U phi(U^* X U) U^* = block_channel(spec).
//
// Strategy: a first random commutant element A has eigenspaces of dimension
// n_l (m_l of them per isotypic component, at generic eigenvalues); a second
// element B links eigenspaces of the same component (its cross blocks are
// scalar multiples of unitaries) and transports a basis between them.
// Ambiguous eigenvalue gaps or link strengths trigger a retry with a fresh
// seed.
inline BlockStructure block_structure(const Channel& phi,
                                      unsigned long long seed,
                                      double tol = 1e-8, int max_retries = 8) {
  detail::require_projection_channel(phi);
  const int d = phi.dim_in();

  for (int attempt = 0; attempt < max_retries; ++attempt) {
    const Matrix a =
        phi.apply(detail::random_hermitian(d, seed + 2ULL * attempt));
    const Eigensystem eig = hermitian_eig((a + a.adjoint()) / 2.0, 1e-8);

    // Cluster eigenvalues (descending) into eigenspaces.
    const double diameter = eig.values(0) - eig.values(d - 1);
    const double gap_threshold =
        1e-6 * diameter + 1e-9 * (std::abs(eig.values(0)) + 1.0);
    bool ambiguous = false;
    std::vector<std::pair<int, int>> clusters;  // [start, end) column ranges
    int start = 0;
    for (int i = 1; i < d; ++i) {
      const double gap = eig.values(i - 1) - eig.values(i);
      if (gap > 0.1 * gap_threshold && gap <= 10.0 * gap_threshold)
        ambiguous = true;
      if (gap > gap_threshold) {
        clusters.emplace_back(start, i);
        start = i;
      }
    }
    clusters.emplace_back(start, d);
    if (ambiguous) continue;

    const Matrix b =
        phi.apply(detail::random_hermitian(d, seed + 2ULL * attempt + 1));
    const double link_threshold = 1e-6 * b.norm();

    // Link eigenspaces into isotypic components (union-find).
    const int nc = static_cast<int>(clusters.size());
    std::vector<int> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    auto basis_of = [&](int i) {
      return eig.vectors.middleCols(clusters[i].first,
                                    clusters[i].second - clusters[i].first);
    };
    for (int i = 0; i < nc && !ambiguous; ++i)
      for (int j = i + 1; j < nc; ++j) {
        const double strength = (basis_of(i).adjoint() * b * basis_of(j)).norm();
        if (strength > 0.1 * link_threshold && strength <= 10.0 * link_threshold) {
          ambiguous = true;
          break;
        }
        if (strength > link_threshold) parent[root(j)] = root(i);
      }
    if (ambiguous) continue;

    std::vector<std::vector<int>> components(nc);
    for (int i = 0; i < nc; ++i) components[root(i)].push_back(i);
    struct Component {
      int irrep_dim;
      std::vector<int> members;  // eigenspace indices, eigenvalue order
    };
    std::vector<Component> comps;
    bool consistent = true;
    for (auto& members : components) {
      if (members.empty()) continue;
      const int n0 = clusters[members[0]].second - clusters[members[0]].first;
      for (int i : members)
        if (clusters[i].second - clusters[i].first != n0) consistent = false;
      comps.push_back({n0, std::move(members)});
    }
    if (!consistent)
      throw std::invalid_argument("not a commutant projection");

    // Canonical component order: descending n, then descending m.
    std::stable_sort(comps.begin(), comps.end(),
                     [](const Component& x, const Component& y) {
                       if (x.irrep_dim != y.irrep_dim)
                         return x.irrep_dim > y.irrep_dim;
                       return x.members.size() > y.members.size();
                     });

    // Transport a basis of the first eigenspace of each component to the
    // others through B; within-component cross blocks are scalar multiples
    // of unitaries, so column normalization almost orthonormalizes and the
    // symmetric correction must stay small.
    std::vector<Block> blocks;
    Matrix v(d, d);
    int col = 0;
    bool transport_ok = true;
    for (const Component& comp : comps) {
      const int n = comp.irrep_dim;
      blocks.push_back({static_cast<int>(comp.members.size()), n});
      const Matrix q1 = basis_of(comp.members[0]);
      for (std::size_t mi = 0; mi < comp.members.size(); ++mi) {
        Matrix q;
        if (mi == 0) {
          q = q1;
        } else {
          const Matrix vi = basis_of(comp.members[mi]);
          q = vi * (vi.adjoint() * b * q1);
          for (int c = 0; c < n; ++c) {
            const double norm = q.col(c).norm();
            if (norm <= 0.0) {
              transport_ok = false;
              break;
            }
            q.col(c) /= norm;
          }
          if (!transport_ok) break;
          const Matrix gram = q.adjoint() * q;
          if ((gram - identity(n)).norm() > 1e-8) {
            transport_ok = false;
            break;
          }
          // Symmetric orthogonalization q <- q G^{-1/2}.
          const Eigensystem ge = hermitian_eig(gram, 1e-8);
          Matrix half_inv = Matrix::Zero(n, n);
          for (int c = 0; c < n; ++c)
            half_inv += ge.vectors.col(c) * ge.vectors.col(c).adjoint() /
                        std::sqrt(ge.values(c));
          q = q * half_inv;
        }
        v.middleCols(col, n) = q;
        col += n;
      }
      if (!transport_ok) break;
    }
    if (!transport_ok || col != d) continue;

    BlockStructure out;
    out.spec = BlockSpec(blocks);
    out.basis_change = v.adjoint();
    if (!is_unitary(out.basis_change, 1e-8)) continue;

    // Residual of the conjugated channel against the canonical block channel.
    std::vector<Matrix> conj_kraus;
    for (const Matrix& k : phi.kraus())
      conj_kraus.push_back(out.basis_change * k * out.basis_change.adjoint());
    const Channel conjugated(d, d, std::move(conj_kraus));
    out.residual = (choi(conjugated) - choi(block_channel(out.spec))).norm();
    if (out.residual <= tol) return out;
  }
  throw std::runtime_error("block_structure: degenerate random elements");
}

// Minimal mixed-unitary decomposition of a commutant-projection channel:
// discover the block structure, decompose the canonical block channel, and
// conjugate back into the original basis.
inline MixedUnitaryDecomposition twirl_decomposition(const Channel& phi,
                                                     unsigned long long seed,
                                                     double tol = 1e-8,
                                                     int max_retries = 8) {
  const BlockStructure bs = block_structure(phi, seed, tol, max_retries);
  const MixedUnitaryDecomposition d = conjugated_decomposition(
      minimal_decomposition(bs.spec), bs.basis_change, 1e-8);
  const DecompositionReport report = verify_decomposition(d, phi, tol);
  if (!report.pass)
    throw std::runtime_error("twirl_decomposition: verification failed");
  return d;
}

}  // namespace twirlkit

#endif  // TWIRLKIT_ISOTYPIC_HPP
