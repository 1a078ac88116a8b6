// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "eigenmoduli/error.hpp"
#include "eigenmoduli/operators.hpp"
#include "oracles.hpp"

namespace emod {
namespace {

std::vector<std::vector<int>> labels_of(const Basis& b) {
  std::vector<std::vector<int>> out;
  for (const auto& s : b.sets()) out.push_back(s.labels());
  return out;
}

TEST(Projectors, MatchSecondQuantizedOracleOnAllSmallShapes) {
  int checked = 0;
  for (Statistics s : {Statistics::Bose, Statistics::Fermi}) {
    const bool fermi = s == Statistics::Fermi;
    for (int q = 1; q <= 6; ++q) {
      for (int n = 1; n <= 6; ++n) {
        if (fermi && n > q) continue;
        if (space_dimension(q, n, s) > 50) continue;
        for (int m = 1; m <= n; ++m) {
          const ProjectorSet p = build_projectors(q, n, m, s);
          const auto sets = labels_of(p.basis_n());
          for (int I = 0; I < p.dim_m(); ++I) {
            for (int J = 0; J < p.dim_m(); ++J) {
              const oracle::Matrix expected = oracle::projector(
                  p.basis_m().at(I).labels(), p.basis_m().at(J).labels(), sets, q, n, fermi);
              const double err = (p.dense(I, J).cast<cplx>() - expected).cwiseAbs().maxCoeff();
              ASSERT_LE(err, 1e-13) << to_string(s) << " q=" << q << " n=" << n << " m=" << m
                                    << " I=" << I << " J=" << J;
            }
          }
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 40);
}

TEST(Projectors, TraceIdentity) {
  for (Statistics s : {Statistics::Bose, Statistics::Fermi}) {
    for (int q = 1; q <= 4; ++q) {
      for (int n = 1; n <= 4; ++n) {
        if (s == Statistics::Fermi && n > q) continue;
        for (int m = 1; m <= n; ++m) {
          const ProjectorSet p = build_projectors(q, n, m, s);
          EXPECT_LE((p.diagonal_sum() - RealMatrix::Identity(p.dim(), p.dim())).cwiseAbs().maxCoeff(), 1e-12);
          const ProjectorSet raw =
              build_projectors(q, n, m, s, SigmaConvention::TraceNormalized, TraceConvention::Binomial);
          const double c = static_cast<double>(binomial(n, m));
          EXPECT_LE((raw.diagonal_sum() - c * RealMatrix::Identity(p.dim(), p.dim())).cwiseAbs().maxCoeff(),
                    1e-12 * c);
        }
      }
    }
  }
}

// Dense summation of the defining double loop over K, written out directly.
TEST(Projectors, TraceIdentityByDenseSummation) {
  const int q = 2, n = 4, m = 2;
  const Basis bn = enumerate_basis(q, n, Statistics::Bose);
  const Basis bm = enumerate_basis(q, m, Statistics::Bose);
  const Basis bk = enumerate_basis(q, n - m, Statistics::Bose);
  RealMatrix sum = RealMatrix::Zero(bn.size(), bn.size());
  for (const auto& I : bm.sets()) {
    for (const auto& K : bk.sets()) {
      const auto nI = I.occupations(q);
      const auto nK = K.occupations(q);
      double s2 = 1.0;
      for (int a = 0; a < q; ++a) s2 *= oracle::binomial(nI[a] + nK[a], nI[a]);
      std::vector<int> cat = I.labels();
      cat.insert(cat.end(), K.labels().begin(), K.labels().end());
      std::sort(cat.begin(), cat.end());
      const int alpha = bn.position(IndexSet(cat));
      sum(alpha, alpha) += s2 / oracle::binomial(n, m);
    }
  }
  EXPECT_LE((sum - RealMatrix::Identity(bn.size(), bn.size())).cwiseAbs().maxCoeff(), 1e-12);
  const ProjectorSet p = build_projectors(q, n, m, Statistics::Bose);
  EXPECT_LE((p.diagonal_sum() - sum).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Projectors, ReciprocalConventionBreaksTraceIdentity) {
  // single mode, q=1, n=2, m=1: sigma^2 = 1/C(2,1) and the unit scale adds another 1/C(2,1)
  const ProjectorSet p = build_projectors(1, 2, 1, Statistics::Bose, SigmaConvention::Reciprocal);
  EXPECT_NEAR(p.diagonal_sum()(0, 0), 0.25, 1e-15);
}

TEST(Projectors, FullOrderIsMatrixUnit) {
  const ProjectorSet p = build_projectors(3, 2, 2, Statistics::Bose);
  for (int I = 0; I < p.dim_m(); ++I) {
    for (int J = 0; J < p.dim_m(); ++J) {
      RealMatrix e = RealMatrix::Zero(p.dim(), p.dim());
      e(I, J) = 1.0;
      EXPECT_EQ(p.dense(I, J), e);
    }
  }
}

TEST(Projectors, FermiOccupationCount) {
  const ProjectorSet p = build_projectors(4, 2, 1, Statistics::Fermi);
  const RealMatrix p11 = p.dense(0, 0);
  for (int a = 0; a < p.dim(); ++a) {
    const double expected = p.basis_n().at(a).contains(IndexSet{1}) ? 0.5 : 0.0;
    EXPECT_EQ(p11(a, a), expected);
  }
  EXPECT_EQ((p11 - RealMatrix(p11.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Projectors, RejectsBadShapes) {
  EXPECT_THROW((void)build_projectors(3, 2, 3, Statistics::Bose), InvalidArgument);
  EXPECT_THROW((void)build_projectors(3, 2, 0, Statistics::Bose), InvalidArgument);
  EXPECT_THROW((void)build_projectors(2, 3, 1, Statistics::Fermi), InvalidArgument);
  const ProjectorSet p = build_projectors(2, 2, 1, Statistics::Bose);
  EXPECT_THROW((void)p.entries(2, 0), InvalidArgument);
}

TEST(Assemble, IdentityAndHermiticity) {
  const ProjectorSet p = build_projectors(3, 4, 2, Statistics::Bose);
  const ComplexMatrix id = assemble_hamiltonian({2, ComplexMatrix::Identity(p.dim_m(), p.dim_m())}, p);
  EXPECT_LE((id - ComplexMatrix::Identity(p.dim(), p.dim())).cwiseAbs().maxCoeff(), 1e-12);
  const ComplexMatrix h = assemble_hamiltonian({2, random_hermitian(p.dim_m(), 3)}, p);
  EXPECT_LE(hermiticity_defect(h), 1e-12);
}

TEST(Assemble, TwoBosonsOneBody) {
  const ProjectorSet p = build_projectors(2, 2, 1, Statistics::Bose);
  ComplexMatrix hm = ComplexMatrix::Zero(2, 2);
  hm(0, 0) = 1.5;
  hm(1, 1) = -0.25;
  const ComplexMatrix h = assemble_hamiltonian({1, hm}, p);
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected.diagonal() << 1.5, (1.5 - 0.25) / 2, -0.25;
  EXPECT_LE((h - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Assemble, RejectsMismatchedOrNonHermitian) {
  const ProjectorSet p = build_projectors(2, 3, 1, Statistics::Bose);
  EXPECT_THROW((void)assemble_hamiltonian({1, ComplexMatrix::Identity(3, 3)}, p), DimensionMismatch);
  EXPECT_THROW((void)assemble_hamiltonian({2, ComplexMatrix::Identity(2, 2)}, p), DimensionMismatch);
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = cplx(0.0, 1.0);
  EXPECT_THROW((void)assemble_hamiltonian({1, bad}, p), NumericalError);
}

TEST(Generators, CountHermiticityAndReconstruction) {
  for (Statistics s : {Statistics::Bose, Statistics::Fermi}) {
    const ProjectorSet p = build_projectors(4, 3, 2, s);
    const HamiltonianFamily fam = hermitian_generator_basis(p);
    ASSERT_EQ(fam.size(), p.dim_m() * p.dim_m());
    for (const auto& op : fam.operators) EXPECT_LE(hermiticity_defect(op), 1e-14);

    const ComplexMatrix hm = random_hermitian(p.dim_m(), 17);
    const std::vector<double> eta = encode_generator_coefficients(hm);
    ComplexMatrix rebuilt = ComplexMatrix::Zero(p.dim(), p.dim());
    for (int a = 0; a < fam.size(); ++a) rebuilt += eta[static_cast<std::size_t>(a)] * fam.operators[static_cast<std::size_t>(a)];
    // direct double sum over (I,J)
    ComplexMatrix direct = ComplexMatrix::Zero(p.dim(), p.dim());
    for (int I = 0; I < p.dim_m(); ++I) {
      for (int J = 0; J < p.dim_m(); ++J) direct += hm(I, J) * p.dense(I, J).cast<cplx>();
    }
    EXPECT_LE((rebuilt - direct).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Hubbard, DimensionsAndSymmetry) {
  const HubbardModel model = hubbard_operators({4, 3, Boundary::Periodic, 1.0, 0.0});
  EXPECT_EQ(model.basis.size(), 56);
  EXPECT_EQ((model.hopping - model.hopping.transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(model.family.size(), 3);
  ASSERT_TRUE(model.family.parameters.has_value());
  EXPECT_NO_THROW(model.family.validate_parametric());
}

TEST(Hubbard, SingleDoublon) {
  const HubbardModel model = hubbard_operators({2, 2, Boundary::Open, 1.0, 0.0});
  const int s = model.basis.position(IndexSet{spin_orbital_label(0, 0), spin_orbital_label(0, 1)});
  EXPECT_EQ(model.interaction(s, s), 1.0);
  const int t = model.basis.position(IndexSet{spin_orbital_label(0, 0), spin_orbital_label(1, 1)});
  EXPECT_EQ(model.interaction(t, t), 0.0);
}

TEST(Hubbard, HoppingEqualsAssembledOneBodyOperator) {
  for (Boundary bc : {Boundary::Open, Boundary::Periodic}) {
    const int L = 4, n = 3;
    const HubbardModel model = hubbard_operators({L, n, bc, 1.0, 0.0});
    const int q = 2 * L;
    oracle::Matrix h = oracle::Matrix::Zero(q, q);
    std::vector<std::pair<int, int>> bonds{{0, 1}, {1, 2}, {2, 3}};
    if (bc == Boundary::Periodic) bonds.push_back({3, 0});
    for (auto [i, j] : bonds) {
      for (int spin = 0; spin < 2; ++spin) {
        const int a = spin_orbital_label(i, spin) - 1;
        const int b = spin_orbital_label(j, spin) - 1;
        h(a, b) = h(b, a) = 1.0;
      }
    }
    const ProjectorSet p = build_projectors(q, n, 1, Statistics::Fermi);
    const ComplexMatrix assembled = assemble_hamiltonian({1, n * h}, p);
    EXPECT_LE((assembled - model.hopping.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-12) << to_string(bc);

    // and against explicit creation / annihilation operators
    std::vector<std::vector<int>> sets;
    for (const auto& s : model.basis.sets()) sets.push_back(s.labels());
    oracle::Matrix fock = oracle::Matrix::Zero(model.basis.size(), model.basis.size());
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) {
        if (h(a, b) != cplx{}) fock += h(a, b) * oracle::dense_hopping({a + 1}, {b + 1}, sets, q, true);
      }
    }
    EXPECT_LE((fock - model.hopping.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Hubbard, HoppingConservesNumberPerSpin) {
  const int L = 3;
  for (int n = 1; n <= 2 * L; ++n) {
    const HubbardModel model = hubbard_operators({L, n, Boundary::Periodic, 1.0, 0.0});
    const int dim = model.basis.size();
    RealMatrix up = RealMatrix::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
      for (int label : model.basis.at(s).labels()) up(s, s) += (label - 1) % 2 == 0 ? 1.0 : 0.0;
    }
    const RealMatrix total = RealMatrix::Identity(dim, dim) * n;
    EXPECT_LE((model.hopping * up - up * model.hopping).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((model.hopping * total - total * model.hopping).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Hubbard, RejectsBadSpecs) {
  EXPECT_THROW((void)hubbard_operators({0, 1, Boundary::Open, 1.0, 0.0}), InvalidArgument);
  EXPECT_THROW((void)hubbard_operators({2, 5, Boundary::Open, 1.0, 0.0}), InvalidArgument);
  EXPECT_EQ(parse_boundary("PERIODIC"), Boundary::Periodic);
  EXPECT_THROW((void)parse_boundary("twisted"), InvalidArgument);
}

}  // namespace
}  // namespace emod
