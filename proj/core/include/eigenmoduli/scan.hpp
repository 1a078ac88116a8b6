// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file scan.hpp
 * @brief Exact-diagonalization experiments: random m-interaction Hamiltonians
 *        and the Hubbard family, with cokernel certification of every
 *        eigenstate against random control states.
 *
 * Trial t draws its numbers from substream_seed(seed, stream, t), so results
 * do not depend on the number of worker threads.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eigenmoduli/fock_basis.hpp"
#include "eigenmoduli/numkernel.hpp"
#include "eigenmoduli/operators.hpp"

namespace emod {

struct ScanConfig {
  int q = 2;
  int n = 6;
  int m = 2;
  Statistics statistics = Statistics::Bose;
  int trials = 20;
  int controls = 20;
  std::uint64_t seed = 0;
  TolerancePolicy tolerance;
  /// Eigenvalues closer than this to a neighbour are flagged degenerate.
  double gap_threshold = 1e-8;
  /// Required alignment of the cokernel with vec(H - E 1).
  double alignment_threshold = 1.0 - 1e-8;
  int threads = 1;

  void validate() const;
};

struct EigenRecord {
  int trial = 0;
  int index = 0;
  double energy = 0.0;
  double gap = 0.0;
  bool degenerate = false;
  int coker_dim = 0;
  int excess = 0;
  double eta_alignment = 0.0;
  std::vector<double> singular_values;
};

struct ControlRecord {
  int index = 0;
  int coker_dim = 0;
  int excess = 0;
  std::vector<double> singular_values;
};

struct ScanSummary {
  int eigenstates = 0;
  int degenerate = 0;
  int eigen_failures = 0;     // non-degenerate records failing the cokernel or alignment check
  int control_failures = 0;   // controls off floor_dim (feasible) or below it (infeasible)
  double min_alignment = 1.0;
  [[nodiscard]] bool passed() const { return eigen_failures == 0 && control_failures == 0; }
};

struct ScanReport {
  ScanConfig config;
  int jacobian_rows = 0;
  int jacobian_cols = 0;
  int hilbert_dim = 0;
  /// Least cokernel dimension of any state, rows - (cols - 1): the global phase
  /// direction (i psi, -i conj(psi)) is always in the kernel. Random states attain
  /// it when rows <= cols; above that, extra structure can raise it (fermion pairs
  /// on an odd number of modes have a rank-deficient amplitude matrix).
  int floor_dim = 0;
  std::vector<EigenRecord> records;
  std::vector<ControlRecord> controls;
  ScanSummary summary;

  [[nodiscard]] bool feasible() const { return jacobian_rows <= jacobian_cols; }
};

/// Requires a desk-scale Hilbert space (N <= 500).
[[nodiscard]] ScanReport eigenstate_scan(const ScanConfig& config);

struct HubbardScanConfig {
  HubbardSpec spec{4, 3, Boundary::Periodic, 1.0, 0.0};
  std::vector<double> interactions{0.0, 1.0, 4.0};
  std::uint64_t seed = 0;
  int minor_samples = 200;
  int controls = 100;
  TolerancePolicy tolerance;
  double minor_threshold = 1e-8;

  void validate() const;
};

struct HubbardEigenRecord {
  double U = 0.0;
  int index = 0;
  double energy = 0.0;
  int rank = 0;
  double max_minor = 0.0;
};

struct HubbardScanReport {
  HubbardScanConfig config;
  int hilbert_dim = 0;
  std::vector<HubbardEigenRecord> records;
  std::vector<int> control_ranks;
  int eigen_failures = 0;
  int control_failures = 0;
  [[nodiscard]] bool passed() const { return eigen_failures == 0 && control_failures == 0; }
};

/// Rank and 3x3 minors of the real family Jacobian [psi, T psi, V psi]^T.
[[nodiscard]] HubbardScanReport hubbard_scan(const HubbardScanConfig& config);

}  // namespace emod
