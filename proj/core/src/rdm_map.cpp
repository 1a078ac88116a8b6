// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigenmoduli/rdm_map.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/SparseCore>

#include "eigenmoduli/error.hpp"

namespace emod {

void PureState::validate(double tol) const {
  if (q < 1 || n < 0) throw InvalidArgument("state needs q >= 1 and n >= 0");
  const auto expected = space_dimension(q, n, statistics);
  if (static_cast<std::uint64_t>(amplitudes.size()) != expected) {
    throw DimensionMismatch("state has " + std::to_string(amplitudes.size()) +
                            " amplitudes, basis has " + std::to_string(expected));
  }
  require_finite(amplitudes, "state amplitudes");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream os;
    os << "invalid state norm " << norm << " (expected 1)";
    throw NumericalError(os.str());
  }
}

namespace {

void require_state_fits(const ComplexVector& psi, const ProjectorSet& projectors) {
  if (psi.size() != projectors.dim()) {
    throw DimensionMismatch("state has " + std::to_string(psi.size()) +
                            " amplitudes, projectors act on " +
                            std::to_string(projectors.dim()) + " states");
  }
}

}  // namespace

ComplexMatrix unfold(const ComplexVector& psi, const ProjectorSet& projectors) {
  require_state_fits(psi, projectors);
  const int na = projectors.dim_m();
  const int nb = projectors.dim_rest();
  ComplexMatrix a = ComplexMatrix::Zero(na, nb);
  for (int I = 0; I < na; ++I) {
    for (int K = 0; K < nb; ++K) {
      const ConcatCell& c = projectors.concat(I, K);
      if (c.position >= 0) a(I, K) = c.sigma * psi(c.position);
    }
  }
  return a;
}

ReducedDensityMatrix compute_rdm(const ComplexVector& psi, const ProjectorSet& projectors) {
  const ComplexMatrix a = unfold(psi, projectors);
  ReducedDensityMatrix rho;
  rho.m = projectors.m();
  rho.convention = projectors.trace_convention();
  rho.matrix = (a.conjugate() * a.transpose()) * projectors.normalization();
  return rho;
}

ReducedDensityMatrix compute_rdm_via_projectors(const ComplexVector& psi,
                                                const ProjectorSet& projectors) {
  require_state_fits(psi, projectors);
  const int na = projectors.dim_m();
  ReducedDensityMatrix rho;
  rho.m = projectors.m();
  rho.convention = projectors.trace_convention();
  rho.matrix = ComplexMatrix::Zero(na, na);
  for (int I = 0; I < na; ++I) {
    for (int J = 0; J < na; ++J) {
      cplx acc{};
      for (const auto& e : projectors.entries(I, J)) {
        acc += std::conj(psi(e.alpha)) * e.value * psi(e.beta);
      }
      rho.matrix(I, J) = acc;
    }
  }
  return rho;
}

RdmDiagnostics diagnose(const ReducedDensityMatrix& rho, double expected_trace) {
  RdmDiagnostics d;
  d.hermiticity_defect = hermiticity_defect(rho.matrix);
  const ComplexMatrix sym = (rho.matrix + rho.matrix.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  d.trace_error = std::abs(rho.trace() - cplx(expected_trace, 0.0));
  return d;
}

double energy(const ComplexVector& psi, const MParticleHamiltonian& hm,
              const ProjectorSet& projectors) {
  if (hm.matrix.rows() != projectors.dim_m() || hm.matrix.cols() != projectors.dim_m()) {
    throw DimensionMismatch("m-particle Hamiltonian does not match the projector basis");
  }
  require_hermitian(hm.matrix, "m-particle Hamiltonian");
  const ReducedDensityMatrix rho = compute_rdm(psi, projectors);
  // rho_{I,J} = <P_{I,J}>, so <H> pairs H_{I,J} with rho_{I,J}: tr(H rho^T).
  const cplx e = hm.matrix.cwiseProduct(rho.matrix).sum();
  if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real()))) {
    std::ostringstream os;
    os << "energy has imaginary part " << e.imag();
    throw NumericalError(os.str());
  }
  return e.real();
}

// ---------------------------------------------------------------------------
// Bipartite
// ---------------------------------------------------------------------------

void validate_bipartite(const ComplexMatrix& Psi, double tol) {
  if (Psi.rows() < 1 || Psi.cols() < 1) throw InvalidArgument("empty bipartite state");
  if (Psi.rows() > Psi.cols()) {
    throw InvalidArgument("bipartite state needs N_A <= N_B (got " + std::to_string(Psi.rows()) +
                          "x" + std::to_string(Psi.cols()) + ")");
  }
  require_finite(Psi, "bipartite state");
  if (std::abs(Psi.norm() - 1.0) > tol) throw NumericalError("bipartite state is not normalized");
}

ComplexMatrix bipartite_rdm(const ComplexMatrix& Psi) {
  return Psi.conjugate() * Psi.transpose();
}

ComplexMatrix bipartite_jacobian(const ComplexMatrix& Psi) {
  const auto na = static_cast<int>(Psi.rows());
  const auto nb = static_cast<int>(Psi.cols());
  if (na > nb) throw InvalidArgument("bipartite Jacobian needs N_A <= N_B");
  const int n = na * nb;
  ComplexMatrix jac = ComplexMatrix::Zero(na * na, 2 * n);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      const int row = i * na + j;
      for (int b = 0; b < nb; ++b) {
        jac(row, j * nb + b) += std::conj(Psi(i, b));
        jac(row, n + i * nb + b) += Psi(j, b);
      }
    }
  }
  return jac;
}

ComplexMatrix planted_rank_state(int na, int nb, int rank, Engine& engine) {
  if (na < 1 || nb < na) throw InvalidArgument("planted state needs 1 <= N_A <= N_B");
  if (rank < 1 || rank > na) {
    throw InvalidArgument("planted rank must lie in 1..N_A (got " + std::to_string(rank) + ")");
  }
  const ComplexMatrix left = random_complex_gaussian(na, rank, engine);
  const ComplexMatrix right = random_complex_gaussian(rank, nb, engine);
  ComplexMatrix psi = left * right;
  psi /= psi.norm();
  return psi;
}

int commutant_dimension(int na, int nb) {
  if (na < 1 || nb < 1) throw InvalidArgument("commutant needs positive dimensions");
  if (na * nb > 64) {
    throw InvalidArgument("commutant_dimension limited to N_A*N_B <= 64 (got " +
                          std::to_string(na * nb) + ")");
  }
  const int n = na * nb;
  const int unknowns = n * n;
  // L -> L P - P L with column-major vec(L): entry (x, y) of the commutator is
  // sum_z L(x,z) P(z,y) - P(x,z) L(z,y). Stack all constraints sparsely and
  // take the nullity of their Gram matrix.
  auto var = [n](int row, int col) { return col * n + row; };
  std::vector<Eigen::Triplet<double>> triplets;
  int eq = 0;
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      // P = e^{ij} (x) I_B has ones at (i*nb + b, j*nb + b)
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y, ++eq) {
          if (y / nb == j) triplets.emplace_back(eq, var(x, i * nb + y % nb), 1.0);
          if (x / nb == i) triplets.emplace_back(eq, var(j * nb + x % nb, y), -1.0);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> stacked(eq, unknowns);
  stacked.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::SparseMatrix<double> sparse_gram = stacked.transpose() * stacked;
  const RealMatrix gram(sparse_gram);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(gram, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double cut = 1e-9 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  return static_cast<int>((ev.array().abs() <= cut).count());
}

}  // namespace emod
