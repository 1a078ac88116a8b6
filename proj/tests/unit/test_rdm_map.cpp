// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "eigenmoduli/error.hpp"
#include "eigenmoduli/moduli.hpp"
#include "eigenmoduli/rdm_map.hpp"

namespace emod {
namespace {

ComplexVector unit(int dim, int at) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(at) = 1.0;
  return v;
}

TEST(Unfold, FermiSigns) {
  const ProjectorSet p = build_projectors(4, 2, 1, Statistics::Fermi);
  const int at = p.basis_n().position(IndexSet{1, 2});
  const ComplexMatrix a = unfold(unit(p.dim(), at), p);
  // rows: 1-particle sets [1]..[4]; columns: remaining 1-particle sets
  EXPECT_EQ(a(0, 1), cplx(1.0));
  EXPECT_EQ(a(1, 0), cplx(-1.0));
  EXPECT_EQ((a.array() != cplx(0.0)).count(), 2);
}

TEST(Unfold, BoseFactor) {
  const ProjectorSet p = build_projectors(2, 2, 1, Statistics::Bose);
  const ComplexMatrix a = unfold(unit(p.dim(), 0), p);
  EXPECT_NEAR(std::abs(a(0, 0) - std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_EQ((a.array() != cplx(0.0)).count(), 1);
}

TEST(Unfold, FullOrderIsColumnOfAmplitudes) {
  const ProjectorSet p = build_projectors(3, 2, 2, Statistics::Bose);
  const ComplexVector psi = random_state(p.dim(), 4);
  const ComplexMatrix a = unfold(psi, p);
  ASSERT_EQ(a.cols(), 1);
  EXPECT_EQ(a.col(0), psi);
}

TEST(Rdm, CondensateOccupiesFirstLabel) {
  const ProjectorSet p = build_projectors(3, 4, 1, Statistics::Bose);
  const ReducedDensityMatrix rho = compute_rdm(unit(p.dim(), 0), p);
  ComplexMatrix e11 = ComplexMatrix::Zero(3, 3);
  e11(0, 0) = 1.0;
  EXPECT_LE((rho.matrix - e11).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Rdm, RoutesAgreeAndInvariantsHold) {
  struct Shape { int q, n, m; Statistics s; };
  const Shape shapes[] = {{2, 4, 2, Statistics::Bose}, {3, 4, 2, Statistics::Bose},
                          {3, 3, 1, Statistics::Bose}, {5, 3, 2, Statistics::Fermi},
                          {6, 3, 1, Statistics::Fermi}};
  Engine engine(77);
  int count = 0;
  for (const auto& sh : shapes) {
    const ProjectorSet p = build_projectors(sh.q, sh.n, sh.m, sh.s);
    for (int t = 0; t < 10; ++t, ++count) {
      const ComplexVector psi = random_state(p.dim(), engine);
      const ReducedDensityMatrix a = compute_rdm(psi, p);
      const ReducedDensityMatrix b = compute_rdm_via_projectors(psi, p);
      EXPECT_LE((a.matrix - b.matrix).cwiseAbs().maxCoeff(), 1e-12);
      const RdmDiagnostics d = diagnose(a, 1.0);
      EXPECT_TRUE(d.ok(1e-12)) << d.hermiticity_defect << " " << d.min_eigenvalue << " " << d.trace_error;
    }
  }
  EXPECT_EQ(count, 50);
}

TEST(Rdm, BinomialConventionTrace) {
  const ProjectorSet p =
      build_projectors(3, 4, 2, Statistics::Bose, SigmaConvention::TraceNormalized, TraceConvention::Binomial);
  const ReducedDensityMatrix rho = compute_rdm(random_state(p.dim(), 8), p);
  EXPECT_NEAR(rho.trace().real(), 6.0, 1e-12);
}

TEST(Energy, ClosureAgainstAssembledOperator) {
  Engine engine(31);
  for (auto s : {Statistics::Bose, Statistics::Fermi}) {
    const ProjectorSet p = build_projectors(4, 3, 2, s);
    for (int t = 0; t < 5; ++t) {
      const ComplexVector psi = random_state(p.dim(), engine);
      const MParticleHamiltonian hm{2, random_hermitian(p.dim_m(), engine)};
      const cplx direct = (psi.adjoint() * assemble_hamiltonian(hm, p) * psi)(0);
      EXPECT_NEAR(energy(psi, hm, p), direct.real(), 1e-10);
    }
  }
}

TEST(Energy, IdentityShiftAndEigenpairs) {
  const ProjectorSet p = build_projectors(2, 6, 2, Statistics::Bose);
  const ComplexVector psi = random_state(p.dim(), 5);
  const ComplexMatrix id = ComplexMatrix::Identity(p.dim_m(), p.dim_m());
  EXPECT_NEAR(energy(psi, {2, id}, p), 1.0, 1e-12);
  const MParticleHamiltonian hm{2, random_hermitian(p.dim_m(), 6)};
  EXPECT_NEAR(energy(psi, {2, hm.matrix + 0.75 * id}, p) - energy(psi, hm, p), 0.75, 1e-12);

  const HermitianEigen eig = hermitian_eig(assemble_hamiltonian(hm, p));
  for (int k = 0; k < p.dim(); ++k) {
    EXPECT_NEAR(energy(eig.vectors.col(k), hm, p), eig.values(k), 1e-10);
  }
}

TEST(Energy, RejectsNonHermitian) {
  const ProjectorSet p = build_projectors(2, 2, 1, Statistics::Bose);
  ComplexMatrix h = ComplexMatrix::Identity(2, 2);
  h(0, 1) = 2.0;
  EXPECT_THROW((void)energy(unit(3, 0), {1, h}, p), NumericalError);
}

TEST(PureStateValidation, NormAndLength) {
  PureState s{2, 2, Statistics::Bose, ComplexVector::Zero(3)};
  EXPECT_THROW(s.validate(), NumericalError);
  s.amplitudes = unit(3, 1);
  EXPECT_NO_THROW(s.validate());
  s.amplitudes = unit(4, 1);
  EXPECT_THROW(s.validate(), DimensionMismatch);
}

// ---------------------------------------------------------------------------
// Bipartite
// ---------------------------------------------------------------------------

TEST(Bipartite, MaximallyEntangled) {
  ComplexMatrix psi = ComplexMatrix::Identity(2, 2) / std::sqrt(2.0);
  EXPECT_LE((bipartite_rdm(psi) - 0.5 * ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Bipartite, RdmIsTransposeOfPsiPsiDagger) {
  Engine engine(3);
  ComplexMatrix psi = random_complex_gaussian(3, 4, engine);
  psi /= psi.norm();
  EXPECT_LE((bipartite_rdm(psi) - (psi * psi.adjoint()).transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Bipartite, CorankSquared) {
  for (auto [na, nb] : {std::pair{2, 3}, {3, 4}, {3, 3}, {4, 5}}) {
    for (int r = 1; r <= na; ++r) {
      Engine engine(substream_seed(99, static_cast<std::uint64_t>(na), static_cast<std::uint64_t>(r)));
      const ComplexMatrix psi = planted_rank_state(na, nb, r, engine);
      EXPECT_EQ(numeric_rank(psi), r);
      EXPECT_EQ(cokernel(bipartite_jacobian(psi)).dim, (na - r) * (na - r)) << na << "x" << nb << " r=" << r;
    }
  }
}

TEST(Bipartite, ForwardDifferenceAndPhaseKernel) {
  Engine engine(12);
  ComplexMatrix psi = random_complex_gaussian(3, 4, engine);
  psi /= psi.norm();
  const ComplexMatrix jac = bipartite_jacobian(psi);
  ComplexMatrix delta = random_complex_gaussian(3, 4, engine);
  delta *= 1e-6 / delta.norm();
  ComplexVector dv(24);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 4; ++b) {
      dv(a * 4 + b) = delta(a, b);
      dv(12 + a * 4 + b) = std::conj(delta(a, b));
    }
  }
  const ComplexVector change = vec_rows(bipartite_rdm(psi + delta) - bipartite_rdm(psi));
  EXPECT_LE((change - jac * dv).norm(), 1e-9);

  ComplexVector phase(24);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 4; ++b) {
      phase(a * 4 + b) = cplx(0.0, 1.0) * psi(a, b);
      phase(12 + a * 4 + b) = cplx(0.0, -1.0) * std::conj(psi(a, b));
    }
  }
  EXPECT_LE((jac * phase).norm(), 1e-12);
}

TEST(Bipartite, CommutantDimension) {
  EXPECT_EQ(commutant_dimension(2, 2), 4);
  EXPECT_EQ(commutant_dimension(3, 2), 4);
  for (int nb = 1; nb <= 5; ++nb) EXPECT_EQ(commutant_dimension(1, nb), nb * nb);
  for (int na = 1; na <= 4; ++na) {
    for (int nb = 1; na * nb <= 16; ++nb) EXPECT_EQ(commutant_dimension(na, nb), nb * nb);
  }
  EXPECT_THROW((void)commutant_dimension(9, 8), InvalidArgument);
}

TEST(Bipartite, RejectsBadInput) {
  Engine engine(1);
  EXPECT_THROW((void)planted_rank_state(3, 4, 4, engine), InvalidArgument);
  EXPECT_THROW(validate_bipartite(ComplexMatrix::Zero(2, 2)), NumericalError);
}

}  // namespace
}  // namespace emod
