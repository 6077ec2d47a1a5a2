// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.

#include "twirlkit/complementary.hpp"
#include "twirlkit/isotypic.hpp"
#include "twirlkit/mud.hpp"
#include "twirlkit/twirls.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <functional>
#include <string>
#include <vector>

using namespace twirlkit;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass) {
  std::printf("criterion %d (%s): %s\n", index, name.c_str(),
              pass ? "PASS" : "FAIL");
  if (!pass) ++failures;
}

Matrix seeded_unitary(int n, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex diag = r(i, i);
    if (std::abs(diag) > 0) q.col(i) *= diag / std::abs(diag);
  }
  return q;
}

// The five closed-form unitaries of the Omega_2 (+) Omega_1 decomposition.
std::vector<Matrix> reference_five() {
  const double sp = std::sqrt(5.0 + 2.0 * std::sqrt(5.0)) / 4.0;
  const double sm = std::sqrt(5.0 - 2.0 * std::sqrt(5.0)) / 4.0;
  const double q = 0.25;
  const double s5 = std::sqrt(5.0) / 4.0;
  const Complex i(0.0, 1.0);
  auto embed = [](Complex a, Complex b, Complex c, Complex d) {
    Matrix u = Matrix::Zero(3, 3);
    u(0, 0) = a;
    u(0, 1) = b;
    u(1, 0) = c;
    u(1, 1) = d;
    u(2, 2) = 1.0;
    return u;
  };
  return {
      embed(-q + i * sp, -s5 - i * sm, s5 - i * sm, -q - i * sp),
      embed(-q - i * sm, s5 - i * sp, -s5 - i * sp, -q + i * sm),
      embed(-q + i * sm, s5 + i * sp, -s5 + i * sp, -q - i * sm),
      embed(-q - i * sp, -s5 + i * sm, s5 + i * sm, -q + i * sp),
      Matrix(identity(3)),
  };
}

// All produced decompositions together with their target channels, collected
// for the complementary-channel and minimality criteria.
struct Produced {
  MixedUnitaryDecomposition decomposition;
  Channel target;
};

std::vector<Produced> produced;

}  // namespace

int main() {
  // 1. Closed-form reproduction of the five-unitary example.
  {
    const BlockSpec spec({{1, 2}, {1, 1}});
    const MixedUnitaryDecomposition d = minimal_decomposition(spec);
    const auto reference = reference_five();
    bool pass = d.unitaries.size() == 5;
    for (int k = 0; k < 5 && pass; ++k)
      pass = (d.unitaries[k] - reference[k]).cwiseAbs().maxCoeff() <= 1e-9;
    pass = pass && (d.unitaries[4] - identity(3)).norm() <= 1e-12;
    const Channel target = block_channel(spec);
    pass = pass && verify_decomposition(d, target, 1e-10).pass;
    report(1, "five-unitary example reproduction", pass);
    produced.push_back({d, target});
  }

  // 2. Equiangularity of that family.
  {
    const MixedUnitaryDecomposition d =
        minimal_decomposition(BlockSpec({{1, 2}, {1, 1}}));
    bool pass = true;
    for (int k = 0; k < 5; ++k)
      for (int k2 = 0; k2 < 5; ++k2) {
        const Complex ip = frob_inner(d.unitaries[k], d.unitaries[k2]);
        const Complex expected = (k == k2) ? Complex(3.0) : Complex(0.5);
        pass = pass && std::abs(ip - expected) <= 1e-10;
      }
    report(2, "equiangularity", pass);
  }

  // 3. Construction sweep over block specs with d <= 8.
  {
    std::vector<BlockSpec> sweep;
    for (int n = 1; n <= 4; ++n) sweep.push_back(BlockSpec({{1, n}}));
    for (int m = 1; m <= 8; ++m)
      for (int n = 1; m * n <= 8; ++n) sweep.push_back(BlockSpec({{m, n}}));
    sweep.push_back(BlockSpec({{1, 2}, {1, 1}}));
    sweep.push_back(BlockSpec({{2, 2}, {1, 1}}));
    sweep.push_back(BlockSpec({{1, 3}, {1, 2}}));
    sweep.push_back(BlockSpec({{2, 1}, {1, 2}}));
    bool pass = true;
    for (const BlockSpec& spec : sweep) {
      const int big_n = spec.rank();
      const MixedUnitaryDecomposition d = minimal_decomposition(spec);
      pass = pass && static_cast<int>(d.unitaries.size()) == big_n;
      for (const Matrix& u : d.unitaries) pass = pass && is_unitary(u, 1e-10);
      const Channel target = block_channel(spec);
      pass = pass && verify_decomposition(d, target, 1e-10).pass;
      const int p = static_cast<int>(spec.blocks.size());
      for (int l = 1; l <= p; ++l)
        for (int l2 = 1; l2 <= p; ++l2) {
          if (l == l2) continue;
          const int nl = spec.blocks[l - 1].dimension;
          const int nl2 = spec.blocks[l2 - 1].dimension;
          for (int a = 0; a < nl; ++a)
            for (int b = 0; b < nl2; ++b) {
              Matrix avg = Matrix::Zero(nl, nl2);
              for (int k = 1; k <= big_n; ++k)
                avg += constructor_unitary(k, l, spec) *
                       matrix_unit(nl, nl2, a, b) *
                       constructor_unitary(k, l2, spec).adjoint();
              pass = pass && (avg / big_n).norm() <= 1e-10;
            }
        }
      produced.push_back({d, target});
    }
    report(3, "construction sweep d<=8", pass);
  }

  // 4. Permutation twirl for n = 2..5.
  {
    bool pass = true;
    for (int n = 2; n <= 5; ++n) {
      const Channel avg = twirl_finite_group(symmetric_group_rep(n));
      pass = pass && choi_rank(avg) == (n - 1) * (n - 1) + 1;
      pass = pass &&
             channels_equal(avg, permutation_twirl_closed_form(n), 1e-10).equal;
      const MixedUnitaryDecomposition d = permutation_twirl_decomposition(n);
      pass = pass && verify_decomposition(d, avg, 1e-10).pass;
      produced.push_back({d, avg});
    }
    report(4, "permutation twirl n=2..5", pass);
  }

  // 5. Werner twirl for n = 2, 3.
  {
    bool pass = true;
    const int expected_rank[2] = {10, 45};
    const int expected_p0[2] = {3, 6};
    const int expected_p1[2] = {1, 3};
    for (int n = 2; n <= 3; ++n) {
      const Channel xi = werner_channel(n);
      pass = pass && choi_rank(xi) == expected_rank[n - 2];
      const auto [p0, p1] = werner_projectors(n);
      pass = pass && numerical_rank(p0) == expected_p0[n - 2];
      pass = pass && numerical_rank(p1) == expected_p1[n - 2];
      const MixedUnitaryDecomposition d = werner_decomposition(n);
      pass = pass && verify_decomposition(d, xi, 1e-9).pass;
      // SWAP and sampled V (x) V invariance.
      const Matrix swap = 2.0 * p0 - identity(n * n);
      for (unsigned long long s = 0; s < 10; ++s) {
        const Matrix v = seeded_unitary(n, 1000 + s);
        const Matrix vv = kron(v, v);
        const Matrix x = vv + vv.adjoint();  // Hermitian probe
        pass = pass &&
               (vv * xi.apply(x) * vv.adjoint() -
                xi.apply(vv * x * vv.adjoint()))
                       .norm() <= 1e-9;
        pass = pass &&
               (swap * xi.apply(x) * swap -
                xi.apply(swap * x * swap))
                       .norm() <= 1e-9;
      }
      produced.push_back({d, xi});
    }
    report(5, "Werner twirl n=2,3", pass);
  }

  // 6. Isotypic recovery from scrambled block channels and the Weyl twirl.
  {
    auto canonical = [](BlockSpec spec) {
      std::stable_sort(spec.blocks.begin(), spec.blocks.end(),
                       [](const Block& a, const Block& b) {
                         if (a.dimension != b.dimension)
                           return a.dimension > b.dimension;
                         return a.multiplicity > b.multiplicity;
                       });
      return spec;
    };
    const std::vector<BlockSpec> pool = {
        BlockSpec({{1, 2}}),         BlockSpec({{1, 3}}),
        BlockSpec({{2, 2}}),         BlockSpec({{1, 2}, {1, 1}}),
        BlockSpec({{2, 2}, {1, 1}}), BlockSpec({{1, 3}, {1, 2}}),
        BlockSpec({{2, 1}, {1, 2}}), BlockSpec({{2, 2}, {2, 1}}),
        BlockSpec({{1, 3}, {2, 2}}), BlockSpec({{1, 1}, {1, 2}, {1, 1}}),
    };
    bool pass = true;
    for (int trial = 0; trial < 20; ++trial) {
      const BlockSpec& spec = pool[trial % pool.size()];
      const int d = spec.total_dim();
      const Matrix w = seeded_unitary(d, 2000 + trial);
      const Channel blocks = block_channel(spec);
      std::vector<Matrix> kraus;
      for (const Matrix& a : blocks.kraus())
        kraus.push_back(w.adjoint() * a * w);
      const Channel scrambled(d, d, std::move(kraus));
      try {
        const BlockStructure bs = block_structure(scrambled, 3000 + trial);
        pass = pass && bs.spec == canonical(spec) && bs.residual <= 1e-8;
      } catch (const std::exception&) {
        pass = false;
      }
    }
    const Channel weyl = twirl_finite_group(weyl_group_rep(2));
    try {
      const BlockStructure bs = block_structure(weyl, 4000);
      pass = pass && bs.spec == BlockSpec({{1, 2}});
      pass = pass && channels_equal(weyl, depolarizing(2), 1e-10).equal;
      const MixedUnitaryDecomposition dw = twirl_decomposition(weyl, 4001);
      produced.push_back({dw, weyl});
    } catch (const std::exception&) {
      pass = false;
    }
    report(6, "isotypic recovery", pass);
  }

  // 7. Complementary-channel criteria on every produced decomposition: the
  // standard basis is an orthogonal basis of trace vectors, and the rotated
  // complementary channel has vanishing diagonal on traceless inputs.
  {
    bool pass = true;
    for (const Produced& item : produced) {
      const Channel psi = complementary_from_kraus(as_channel(item.decomposition));
      const std::vector<Vector> basis = standard_basis(psi.dim_out());
      const Matrix rotation = trace_vector_rotation(basis);
      const Channel rotated = conjugate_output(psi, rotation);
      pass = pass && vanishing_diagonal_check(rotated, 1e-9).pass;
      pass = pass && trace_vector_basis_check(rotated, basis, 1e-9);
    }
    report(7, "complementary-channel criteria", pass);
  }

  // 8. Minimality: unitary count equals the Choi rank of the target.
  {
    bool pass = true;
    for (const Produced& item : produced)
      pass = pass && static_cast<int>(item.decomposition.unitaries.size()) ==
                         choi_rank(item.target);
    report(8, "minimality witness", pass);
  }

  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
