// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file numkernel.hpp
 * @brief Dense complex linear algebra and seeded random sampling.
 *
 * Thin contracts over Eigen: Hermitian eigendecomposition, SVD-based rank
 * and left nullspace with an explicit tolerance policy, LU determinants,
 * and reproducible Gaussian ensembles.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace emod {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Singular values sigma_i count toward the rank when
/// sigma_i > max(relative * sigma_1, absolute_floor).
struct TolerancePolicy {
  double relative = 1e-9;
  double absolute_floor = 1e-14;

  /// Throws InvalidArgument unless both fields are positive and finite.
  void validate() const;
  [[nodiscard]] double threshold(double largest_singular_value) const;
};

struct SvdSpectrum {
  std::vector<double> singular_values;  // descending

  [[nodiscard]] int rank_at(const TolerancePolicy& policy) const;
  [[nodiscard]] double largest() const { return singular_values.empty() ? 0.0 : singular_values.front(); }
};

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns
};

struct SymmetricEigen {
  RealVector values;
  RealMatrix vectors;
};

/// Throws NumericalError when any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// Largest |H_ij - conj(H_ji)|.
[[nodiscard]] double hermiticity_defect(const ComplexMatrix& h);

/// Throws NumericalError unless `h` is square and Hermitian to 1e-12 relative.
void require_hermitian(const ComplexMatrix& h, const char* what, double rel_tol = 1e-12);

[[nodiscard]] HermitianEigen hermitian_eig(const ComplexMatrix& h);
[[nodiscard]] SymmetricEigen symmetric_eig(const RealMatrix& h);

[[nodiscard]] SvdSpectrum svd_spectrum(const ComplexMatrix& m);
[[nodiscard]] int numeric_rank(const ComplexMatrix& m, const TolerancePolicy& policy = {});

/**
 * Orthonormal basis (as columns) of {eta : eta^T M = 0}.
 *
 * Transpose, not conjugate transpose: the columns span the nullspace of M^T.
 * The basis is ordered by increasing singular value of the matching
 * direction, so column 0 is the most-null vector.
 */
[[nodiscard]] ComplexMatrix left_nullspace(const ComplexMatrix& m,
                                           const TolerancePolicy& policy = {});

/// Singular spectrum and transposed left nullspace from one factorization.
struct LeftNullspace {
  SvdSpectrum spectrum;
  int rank = 0;
  ComplexMatrix basis;  // rows x (rows - rank)
};
[[nodiscard]] LeftNullspace left_nullspace_with_spectrum(const ComplexMatrix& m,
                                                         const TolerancePolicy& policy = {});

[[nodiscard]] cplx determinant(const ComplexMatrix& m);

/// log|det M| via partial-pivot LU; -infinity for an exactly singular factor.
[[nodiscard]] double log_abs_determinant(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// Random sampling
// ---------------------------------------------------------------------------

using Engine = std::mt19937_64;

/**
 * Seed of an independent substream.
 *
 * Mixes (master, stream, index) through SplitMix64 so that trial `index` of a
 * run sees the same numbers no matter how trials are scheduled.
 */
[[nodiscard]] std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream,
                                           std::uint64_t index) noexcept;

/// Entries with independent real and imaginary parts ~ N(0, 1/2), so E|z|^2 = 1.
[[nodiscard]] ComplexMatrix random_complex_gaussian(int rows, int cols, Engine& engine);

/// (G + G^dagger) / 2 for a standard complex Gaussian G (GUE).
[[nodiscard]] ComplexMatrix random_hermitian(int dim, Engine& engine);
[[nodiscard]] ComplexMatrix random_hermitian(int dim, std::uint64_t seed);

/// Complex Gaussian vector, normalized to unit length.
[[nodiscard]] ComplexVector random_state(int dim, Engine& engine);
[[nodiscard]] ComplexVector random_state(int dim, std::uint64_t seed);

/// Real Gaussian vector, normalized to unit length.
[[nodiscard]] RealVector random_real_state(int dim, Engine& engine);

}  // namespace emod
