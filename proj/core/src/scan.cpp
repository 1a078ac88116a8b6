// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigenmoduli/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "eigenmoduli/error.hpp"
#include "eigenmoduli/moduli.hpp"

namespace emod {

namespace {

constexpr std::uint64_t kHamiltonianStream = 1;
constexpr std::uint64_t kControlStream = 2;
constexpr std::uint64_t kHubbardMinorStream = 3;
constexpr std::uint64_t kHubbardControlStream = 4;

/// Runs body(i) for i in [0, count) on up to `threads` workers.
template <typename Body>
void parallel_for(int count, int threads, Body&& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += threads) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void ScanConfig::validate() const {
  tolerance.validate();
  if (trials < 1) throw InvalidArgument("scan needs at least one trial");
  if (controls < 0) throw InvalidArgument("control count must be non-negative");
  if (threads < 1) throw InvalidArgument("thread count must be >= 1");
  if (!(gap_threshold >= 0.0)) throw InvalidArgument("gap threshold must be non-negative");
  if (m < 1 || m > n) throw InvalidArgument("scan needs 1 <= m <= n");
  if (statistics == Statistics::Fermi && n > q) throw InvalidArgument("scan needs n <= q for fermions");
  if (space_dimension(q, n, statistics) > 500) {
    throw InvalidArgument("scan limited to Hilbert dimension <= 500 (got " +
                          std::to_string(space_dimension(q, n, statistics)) + ")");
  }
}

ScanReport eigenstate_scan(const ScanConfig& config) {
  config.validate();
  const ProjectorSet projectors = build_projectors(config.q, config.n, config.m, config.statistics);
  const int na = projectors.dim_m();
  const int dim = projectors.dim();

  ScanReport report;
  report.config = config;
  report.hilbert_dim = dim;
  report.jacobian_rows = na * na;
  report.jacobian_cols = 2 * dim;
  report.floor_dim = std::max(0, report.jacobian_rows - (report.jacobian_cols - 1));

  std::vector<std::vector<EigenRecord>> per_trial(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, config.threads, [&](int trial) {
    Engine engine(substream_seed(config.seed, kHamiltonianStream, static_cast<std::uint64_t>(trial)));
    const MParticleHamiltonian hm{config.m, random_hermitian(na, engine)};
    const ComplexMatrix full = assemble_hamiltonian(hm, projectors);
    const HermitianEigen eig = hermitian_eig(full);

    auto& out = per_trial[static_cast<std::size_t>(trial)];
    out.reserve(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) {
      EigenRecord rec;
      rec.trial = trial;
      rec.index = k;
      rec.energy = eig.values(k);
      rec.gap = std::numeric_limits<double>::infinity();
      if (k > 0) rec.gap = std::min(rec.gap, eig.values(k) - eig.values(k - 1));
      if (k + 1 < dim) rec.gap = std::min(rec.gap, eig.values(k + 1) - eig.values(k));
      rec.degenerate = rec.gap < config.gap_threshold;

      const ComplexVector psi = eig.vectors.col(k);
      const CokernelReport ck = cokernel(build_jacobian(psi, projectors), config.tolerance);
      rec.coker_dim = ck.dim;
      rec.excess = ck.excess;
      const ComplexMatrix shifted = hm.matrix - rec.energy * ComplexMatrix::Identity(na, na);
      rec.eta_alignment = cokernel_alignment(ck.basis, vec_rows(shifted));
      rec.singular_values = ck.singular_values;
      out.push_back(std::move(rec));
    }
  });

  report.controls.resize(static_cast<std::size_t>(config.controls));
  parallel_for(config.controls, config.threads, [&](int c) {
    Engine engine(substream_seed(config.seed, kControlStream, static_cast<std::uint64_t>(c)));
    const ComplexVector psi = random_state(dim, engine);
    const CokernelReport ck = cokernel(build_jacobian(psi, projectors), config.tolerance);
    report.controls[static_cast<std::size_t>(c)] = {c, ck.dim, ck.excess, ck.singular_values};
  });

  for (auto& trial : per_trial) {
    for (auto& rec : trial) report.records.push_back(std::move(rec));
  }

  ScanSummary& s = report.summary;
  const bool feasible = report.feasible();
  for (const auto& rec : report.records) {
    ++s.eigenstates;
    if (rec.degenerate) {
      ++s.degenerate;
      continue;
    }
    s.min_alignment = std::min(s.min_alignment, rec.eta_alignment);
    const bool dim_ok = feasible ? rec.coker_dim == 1 : rec.excess >= 1;
    if (!dim_ok || rec.eta_alignment < config.alignment_threshold) ++s.eigen_failures;
  }
  for (const auto& c : report.controls) {
    const bool ok = report.feasible() ? c.coker_dim == report.floor_dim : c.coker_dim >= report.floor_dim;
    if (!ok) ++s.control_failures;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Hubbard
// ---------------------------------------------------------------------------

void HubbardScanConfig::validate() const {
  spec.validate();
  tolerance.validate();
  if (interactions.empty()) throw InvalidArgument("Hubbard scan needs at least one U value");
  if (minor_samples < 1) throw InvalidArgument("minor sample count must be >= 1");
  if (controls < 0) throw InvalidArgument("control count must be non-negative");
}

HubbardScanReport hubbard_scan(const HubbardScanConfig& config) {
  config.validate();
  HubbardScanReport report;
  report.config = config;

  for (std::size_t u = 0; u < config.interactions.size(); ++u) {
    HubbardSpec spec = config.spec;
    spec.U = config.interactions[u];
    const HubbardModel model = hubbard_operators(spec);
    report.hilbert_dim = model.basis.size();
    const SymmetricEigen eig = symmetric_eig(model.hamiltonian());
    for (int k = 0; k < model.basis.size(); ++k) {
      const ComplexVector psi = eig.vectors.col(k).cast<cplx>();
      const JacobianMatrix jac = family_jacobian(psi, model.family);
      HubbardEigenRecord rec;
      rec.U = spec.U;
      rec.index = k;
      rec.energy = eig.values(k);
      rec.rank = numeric_rank(jac.matrix, config.tolerance);
      const std::uint64_t stream = kHubbardMinorStream + (static_cast<std::uint64_t>(u) << 8);
      rec.max_minor =
          sample_minors(jac.matrix, config.minor_samples,
                        substream_seed(config.seed, stream, static_cast<std::uint64_t>(k)))
              .max;
      if (rec.rank > 2 || rec.max_minor > config.minor_threshold) ++report.eigen_failures;
      report.records.push_back(rec);
    }
  }

  const HubbardModel model = hubbard_operators(config.spec);
  for (int c = 0; c < config.controls; ++c) {
    Engine engine(substream_seed(config.seed, kHubbardControlStream, static_cast<std::uint64_t>(c)));
    const ComplexVector psi = random_real_state(model.basis.size(), engine).cast<cplx>();
    const int rank = numeric_rank(family_jacobian(psi, model.family).matrix, config.tolerance);
    report.control_ranks.push_back(rank);
    if (rank != 3) ++report.control_failures;
  }
  return report;
}

}  // namespace emod
