// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rdm_map.hpp
 * @brief Pure state -> m-particle reduced density matrix, energies, and the
 *        bipartite (A x B) system.
 *
 * The RDM is evaluated through the unfolding matrix A[I,K] = sigma_{I,K}
 * psi_{(IK)}: rho = conj(A) A^T scaled by the projector normalization. The
 * projector route rho_{I,J} = <psi|P_{I,J}|psi> is kept as an independent
 * cross-check.
 */

#pragma once

#include "eigenmoduli/fock_basis.hpp"
#include "eigenmoduli/numkernel.hpp"
#include "eigenmoduli/operators.hpp"

namespace emod {

/// Amplitudes over the canonical n-particle basis.
struct PureState {
  int q = 0;
  int n = 0;
  Statistics statistics = Statistics::Bose;
  ComplexVector amplitudes;

  /// Length matches the basis dimension and the norm is 1 within `tol`.
  void validate(double tol = 1e-12) const;
};

struct ReducedDensityMatrix {
  int m = 0;
  TraceConvention convention = TraceConvention::Unit;
  ComplexMatrix matrix;

  [[nodiscard]] cplx trace() const { return matrix.trace(); }
};

/// Diagnostics for the RDM invariants (Hermitian, PSD, trace).
struct RdmDiagnostics {
  double hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;  // |tr rho - expected|

  [[nodiscard]] bool ok(double tol = 1e-12) const {
    return hermiticity_defect <= tol && min_eigenvalue >= -tol && trace_error <= tol;
  }
};

/// N_A x N_B matrix with A[I,K] = sigma_{I,K} psi_{(IK)}; exclusions are exact zeros.
[[nodiscard]] ComplexMatrix unfold(const ComplexVector& psi, const ProjectorSet& projectors);

[[nodiscard]] ReducedDensityMatrix compute_rdm(const ComplexVector& psi,
                                               const ProjectorSet& projectors);

/// rho_{I,J} = <psi|P_{I,J}|psi> evaluated entry by entry from the sparse projectors.
[[nodiscard]] ReducedDensityMatrix compute_rdm_via_projectors(const ComplexVector& psi,
                                                              const ProjectorSet& projectors);

/// Checks the invariants against the expected trace for `psi`'s norm.
[[nodiscard]] RdmDiagnostics diagnose(const ReducedDensityMatrix& rho, double expected_trace);

/// sum_{I,J} Hm_{I,J} rho_{I,J} = <psi|sum Hm_{I,J} P_{I,J}|psi>; throws NumericalError if Hm is not Hermitian or the result is not real.
[[nodiscard]] double energy(const ComplexVector& psi, const MParticleHamiltonian& hm,
                            const ProjectorSet& projectors);

// ---------------------------------------------------------------------------
// Bipartite system H_A (x) H_B
// ---------------------------------------------------------------------------

/// Psi is N_A x N_B with N_A <= N_B and unit Frobenius norm.
void validate_bipartite(const ComplexMatrix& Psi, double tol = 1e-12);

/**
 * rho^A_{i,j} = <psi|e^{ij} (x) I_B|psi> = sum_b conj(Psi_ib) Psi_jb.
 *
 * This is the transpose of Psi Psi^dagger; it has the same spectrum and
 * matches the row convention of the Jacobian.
 */
[[nodiscard]] ComplexMatrix bipartite_rdm(const ComplexMatrix& Psi);

/**
 * N_A^2 x 2N Jacobian of rho^A. Row i*N_A + j; psi-block column (j,b) holds
 * conj(Psi_ib) and conj-block column (i,b) holds Psi_jb, with (a,b) flattened
 * as a*N_B + b.
 */
[[nodiscard]] ComplexMatrix bipartite_jacobian(const ComplexMatrix& Psi);

/// N_A x N_B matrix of rank `rank` with unit Frobenius norm.
[[nodiscard]] ComplexMatrix planted_rank_state(int na, int nb, int rank, Engine& engine);

/// Dimension of {L : [L, e^{ij} (x) I_B] = 0 for all i, j}; requires N_A N_B <= 64.
[[nodiscard]] int commutant_dimension(int na, int nb);

}  // namespace emod
