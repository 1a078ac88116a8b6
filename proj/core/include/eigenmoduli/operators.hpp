// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file operators.hpp
 * @brief m-particle projection operators and the Hamiltonians built from them.
 *
 * For m-particle index sets I, J the operator P_{I,J} acts on the n-particle
 * space with entries sigma_{I,K} sigma_{J,K} at ((IK), (JK)) for every
 * (n-m)-particle set K, scaled by 1/C(n,m) under the unit-trace convention.
 * With that scaling sum_I P_{I,I} is the identity and <psi|P_{I,J}|psi> is
 * the m-RDM entry rho_{I,J}.
 */

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eigenmoduli/fock_basis.hpp"
#include "eigenmoduli/numkernel.hpp"

namespace emod {

/// Unit: tr rho = 1 (projectors scaled by 1/C(n,m)). Binomial: tr rho = C(n,m).
enum class TraceConvention { Unit, Binomial };

[[nodiscard]] std::string_view to_string(TraceConvention c) noexcept;

struct ProjectorEntry {
  int alpha;  // row on the n-particle basis, position of (IK)
  int beta;   // column, position of (JK)
  double value;
};

/// Position of (IK) in the n-particle basis and its symmetry factor.
struct ConcatCell {
  int position = -1;  // -1 encodes fermionic exclusion
  double sigma = 0.0;
};

class ProjectorSet {
 public:
  [[nodiscard]] int q() const noexcept { return basis_n_.q(); }
  [[nodiscard]] int n() const noexcept { return basis_n_.k(); }
  [[nodiscard]] int m() const noexcept { return basis_m_.k(); }
  [[nodiscard]] Statistics statistics() const noexcept { return basis_n_.statistics(); }
  [[nodiscard]] SigmaConvention sigma_convention() const noexcept { return sigma_convention_; }
  [[nodiscard]] TraceConvention trace_convention() const noexcept { return trace_convention_; }
  /// Scale applied to every entry: 1/C(n,m) or 1.
  [[nodiscard]] double normalization() const noexcept { return normalization_; }

  [[nodiscard]] const Basis& basis_n() const noexcept { return basis_n_; }
  [[nodiscard]] const Basis& basis_m() const noexcept { return basis_m_; }
  /// The (n-m)-particle basis the K index runs over.
  [[nodiscard]] const Basis& basis_rest() const noexcept { return basis_rest_; }

  [[nodiscard]] int dim() const noexcept { return basis_n_.size(); }
  [[nodiscard]] int dim_m() const noexcept { return basis_m_.size(); }
  [[nodiscard]] int dim_rest() const noexcept { return basis_rest_.size(); }

  /// Sparse entries of P_{I,J} (positions in basis_m).
  [[nodiscard]] const std::vector<ProjectorEntry>& entries(int I, int J) const;

  /// (IK) lookup for I in basis_m, K in basis_rest.
  [[nodiscard]] const ConcatCell& concat(int I, int K) const {
    return table_[static_cast<std::size_t>(I) * static_cast<std::size_t>(dim_rest()) +
                  static_cast<std::size_t>(K)];
  }

  [[nodiscard]] RealMatrix dense(int I, int J) const;

  /// sum_I P_{I,I} as a dense matrix.
  [[nodiscard]] RealMatrix diagonal_sum() const;

  /// Total number of stored triplets.
  [[nodiscard]] std::size_t nonzeros() const noexcept;

  friend ProjectorSet build_projectors(int q, int n, int m, Statistics statistics,
                                       SigmaConvention sigma_convention,
                                       TraceConvention trace_convention);

 private:
  Basis basis_n_;
  Basis basis_m_;
  Basis basis_rest_;
  SigmaConvention sigma_convention_ = SigmaConvention::TraceNormalized;
  TraceConvention trace_convention_ = TraceConvention::Unit;
  double normalization_ = 1.0;
  std::vector<ConcatCell> table_;
  std::vector<std::vector<ProjectorEntry>> entries_;  // index I * dim_m + J
};

/// Requires 1 <= m <= n and, for fermions, n <= q.
[[nodiscard]] ProjectorSet build_projectors(
    int q, int n, int m, Statistics statistics,
    SigmaConvention sigma_convention = SigmaConvention::TraceNormalized,
    TraceConvention trace_convention = TraceConvention::Unit);

struct MParticleHamiltonian {
  int m = 0;
  ComplexMatrix matrix;  // dim_m x dim_m, Hermitian
};

/// sum_{I,J} coeffs(I,J) P_{I,J} for arbitrary complex coefficients.
[[nodiscard]] ComplexMatrix combine(const ProjectorSet& projectors, const ComplexMatrix& coeffs);

/// Full n-particle Hamiltonian sum_{I,J} H_{I,J} P_{I,J}; Hm must be Hermitian.
[[nodiscard]] ComplexMatrix assemble_hamiltonian(const MParticleHamiltonian& hm,
                                                 const ProjectorSet& projectors);

/// A linear family of Hermitian operators sum_a eta_a H_a.
struct HamiltonianFamily {
  std::vector<std::string> names;
  std::vector<ComplexMatrix> operators;
  std::optional<std::vector<double>> parameters;

  [[nodiscard]] int size() const noexcept { return static_cast<int>(operators.size()); }
  [[nodiscard]] int dim() const noexcept {
    return operators.empty() ? 0 : static_cast<int>(operators.front().rows());
  }
  /// All operators square, same size, Hermitian; parameters sized to match.
  void validate() const;
  /// validate() plus: operator 0 is the identity.
  void validate_parametric() const;
  [[nodiscard]] bool leads_with_identity() const;
};

/**
 * Hermitian encoding of the N_A^2 projectors.
 *
 * Slot (I,I) holds P_{I,I}; for I < J slot (I,J) holds P_{I,J} + P_{J,I} and
 * slot (J,I) holds i(P_{I,J} - P_{J,I}). Slot order is row-major I*N_A + J,
 * the same order as Jacobian rows.
 */
[[nodiscard]] HamiltonianFamily hermitian_generator_basis(const ProjectorSet& projectors);

/// Real coefficients eta in generator-slot order with sum eta_a G_a = sum H_IJ P_IJ.
[[nodiscard]] std::vector<double> encode_generator_coefficients(const ComplexMatrix& hm);

enum class Boundary { Open, Periodic };

[[nodiscard]] std::string_view to_string(Boundary b) noexcept;
[[nodiscard]] Boundary parse_boundary(std::string_view text);

struct HubbardSpec {
  int sites = 0;
  int electrons = 0;
  Boundary boundary = Boundary::Periodic;
  double t = 1.0;
  double U = 0.0;

  void validate() const;
};

/// Spin-orbital label (1-based) of (site, spin) with spin 0 = up, 1 = down.
[[nodiscard]] constexpr int spin_orbital_label(int site, int spin) noexcept {
  return 2 * site + spin + 1;
}

struct HubbardModel {
  HubbardSpec spec;
  Basis basis;                // fermionic, q = 2 L
  HamiltonianFamily family;   // {I, T, V}
  RealMatrix hopping;         // T
  RealMatrix interaction;     // V, diagonal

  /// t T + U V
  [[nodiscard]] RealMatrix hamiltonian() const;
};

/// Identity, nearest-neighbour hopping and on-site double occupancy.
[[nodiscard]] HubbardModel hubbard_operators(const HubbardSpec& spec);

}  // namespace emod
