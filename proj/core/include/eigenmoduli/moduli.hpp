// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file moduli.hpp
 * @brief Jacobians of the state -> RDM map and of Hamiltonian families, and
 *        the cokernel / minor / variety tests that certify eigenstates.
 *
 * Jacobian rows are ordered pairs (I,J) in row-major order I*N_A + J (or the
 * family operator index); columns are the N psi-derivatives followed by the N
 * conj(psi)-derivatives. The cokernel is {eta : eta^T J = 0}. For an
 * eigenpair (psi, E) of sum_{I,J} H_{I,J} P_{I,J} it contains vec(H - E 1).
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eigenmoduli/fock_basis.hpp"
#include "eigenmoduli/numkernel.hpp"
#include "eigenmoduli/operators.hpp"
#include "eigenmoduli/rdm_map.hpp"

namespace emod {

struct RdmShape {
  int q = 0;
  int n = 0;
  int m = 0;
  Statistics statistics = Statistics::Bose;
};

struct JacobianMatrix {
  ComplexMatrix matrix;
  /// Set for RDM Jacobians.
  std::optional<RdmShape> shape;
  /// Operator names for family Jacobians.
  std::vector<std::string> family_names;
  /// True when the conjugate half was dropped because everything is real.
  bool real_reduced = false;

  [[nodiscard]] int rows() const noexcept { return static_cast<int>(matrix.rows()); }
  [[nodiscard]] int cols() const noexcept { return static_cast<int>(matrix.cols()); }
};

struct CokernelReport {
  int dim = 0;
  /// dim - max(0, rows - cols): the part not forced by the shape.
  int excess = 0;
  int rows = 0;
  int cols = 0;
  std::vector<double> singular_values;
  ComplexMatrix basis;  // rows x dim, orthonormal columns
  TolerancePolicy tolerance;
  /// max over basis vectors of ||eta^T J||.
  double max_residual = 0.0;
};

/// Jacobian of psi -> rho^(m): row (I,J) = [psi^dagger P_{I,J}, (P_{I,J} psi)^T].
[[nodiscard]] JacobianMatrix build_jacobian(const ComplexVector& psi, const ProjectorSet& projectors);

/**
 * Row a = [psi^dagger H_a, psi^T H_a^T]. When every operator and psi are real
 * to `real_tol`, returns the N_p x N real reduction with rows (H_a psi)^T.
 */
[[nodiscard]] JacobianMatrix family_jacobian(const ComplexVector& psi,
                                             const HamiltonianFamily& family,
                                             double real_tol = 1e-12);

[[nodiscard]] CokernelReport cokernel(const ComplexMatrix& jacobian,
                                      const TolerancePolicy& policy = {});
[[nodiscard]] CokernelReport cokernel(const JacobianMatrix& jacobian,
                                      const TolerancePolicy& policy = {});

/**
 * Fraction of `target` captured by the cokernel span: ||Proj(t)|| / ||t||.
 * For a one-dimensional cokernel this is |<eta, t>| / (||eta|| ||t||).
 */
[[nodiscard]] double cokernel_alignment(const ComplexMatrix& basis, const ComplexVector& target);

/// Row-major vec of an N_A x N_A matrix, matching Jacobian row order.
[[nodiscard]] ComplexVector vec_rows(const ComplexMatrix& m);
[[nodiscard]] ComplexMatrix unvec_rows(const ComplexVector& v, int n);

struct EtaRecovery {
  ComplexMatrix eta;            // N_A x N_A, unit Frobenius norm, phase fixed toward Hermitian
  int cokernel_dim = 0;
  double hermiticity_defect = 0.0;  // ||eta - eta^dagger||_F
  double right_residual = 0.0;      // ||(sum eta P) psi||
  double left_residual = 0.0;       // ||psi^dagger (sum eta P)||
  std::optional<double> alignment;  // against the supplied reference
  [[nodiscard]] bool verified(double tol = 1e-8) const {
    return right_residual <= tol && left_residual <= tol;
  }
};

/**
 * Reads an m-particle operator eta off the most-null cokernel direction.
 * When `reference` is given (typically H - E 1 for an eigenpair) reports the
 * alignment of the whole cokernel span with it. Throws InvalidArgument when
 * the cokernel is trivial.
 */
[[nodiscard]] EtaRecovery recover_eta(const ComplexVector& psi, const ProjectorSet& projectors,
                                      const TolerancePolicy& policy = {},
                                      const std::optional<ComplexMatrix>& reference = std::nullopt);

// ---------------------------------------------------------------------------
// Minors
// ---------------------------------------------------------------------------

struct MinorSampleReport {
  int sample_count = 0;
  std::vector<double> normalized_abs_dets;
  double max = 0.0;
  double median = 0.0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
};

/// Submatrix rows below this fraction of the largest Jacobian row norm count as zero.
inline constexpr double kMinorRowFloor = 1e-10;

/// |det M_cols| / prod_k ||row_k of M_cols||; 0 when a submatrix row vanishes.
[[nodiscard]] double hadamard_normalized_minor(const ComplexMatrix& jacobian,
                                               const std::vector<int>& columns);

/// Uniformly random column subsets of size rows (no repeated column in a draw).
[[nodiscard]] MinorSampleReport sample_minors(const ComplexMatrix& jacobian, int count,
                                              std::uint64_t seed);

/// Every rows-subset of columns; refuses when C(cols, rows) > `cap`.
[[nodiscard]] MinorSampleReport exhaustive_minors(const ComplexMatrix& jacobian,
                                                  std::uint64_t cap = 10000);

// ---------------------------------------------------------------------------
// Slater determinants and the Plücker relations
// ---------------------------------------------------------------------------

/// q x n matrix with orthonormal columns (QR of a complex Gaussian matrix).
[[nodiscard]] ComplexMatrix random_orthonormal_orbitals(int q, int n, Engine& engine);

/// max |G_ij| over i != j of the Gram matrix G = Phi^dagger Phi.
[[nodiscard]] double orbital_orthogonality_residual(const ComplexMatrix& orbitals);

/// Fermionic state with psi_I = det(Phi restricted to rows I).
[[nodiscard]] PureState slater_embed(const ComplexMatrix& orbitals);

/// h = -Phi Phi^dagger; the Slater state of the columns of Phi is its ground state.
[[nodiscard]] ComplexMatrix slater_one_body_hamiltonian(const ComplexMatrix& orbitals);

/// max over I in I_{n-1}, J in I_{n+1} of |sum_{i in J} (-1)^ord(i) psi_[Ii] psi_[J\i]|.
[[nodiscard]] double plucker_residual(const PureState& state);

// ---------------------------------------------------------------------------
// Symmetric products and the Veronese relations
// ---------------------------------------------------------------------------

/// Bosonic condensate: psi_I = sqrt(multinomial(I)) prod_k phi_{i_k}.
[[nodiscard]] PureState symmetric_product_embed(const ComplexVector& orbital, int n);

/// Max |p_I p_J - p_I' p_J'| over (IJ) = (I'J') with p_I = psi_I / sqrt(multinomial(I)).
[[nodiscard]] double veronese_residual(const PureState& state);

/**
 * Normalized bosonic state prod_j (sum_a phi_{a,j} b_a^dagger)^{k_j} |0>
 * for the columns of `orbitals` (q x r) and multiplicities k_j summing to n.
 */
[[nodiscard]] PureState symmetric_product_state(const ComplexMatrix& orbitals,
                                                const std::vector<int>& multiplicities);

// ---------------------------------------------------------------------------
// Filtration and strata
// ---------------------------------------------------------------------------

/// Max relative residual of the rows of `low` after projection onto the row space of `high`.
[[nodiscard]] double span_inclusion(const JacobianMatrix& low, const JacobianMatrix& high,
                                    const TolerancePolicy& policy = {});

struct StrataSample {
  std::vector<int> multiplicities;
  int cokernel_dim = 0;
};

struct StrataReport {
  int q = 0;
  int n = 0;
  int r = 0;
  std::uint64_t seed = 0;
  std::vector<StrataSample> samples;
  /// (q-1)^2 when r == 1.
  std::optional<int> expected;
  [[nodiscard]] bool matches_expected() const;
};

/// Cokernel dimension of the bosonic 1-RDM Jacobian on product-rank-r states.
[[nodiscard]] StrataReport strata_probe(int q, int n, int r, std::uint64_t seed, int samples = 5,
                                        const TolerancePolicy& policy = {});

}  // namespace emod
