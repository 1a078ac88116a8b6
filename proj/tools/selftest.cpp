// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "cli.hpp"
#include "eigenmoduli/moduli.hpp"
#include "eigenmoduli/operators.hpp"
#include "eigenmoduli/rdm_map.hpp"
#include "eigenmoduli/scan.hpp"

namespace emod::cli {

namespace {

constexpr std::uint64_t kSeed = 20260101;

struct Shape {
  int q, n, m;
  Statistics s;
};

constexpr Shape kShapes[] = {
    {2, 3, 1, Statistics::Bose},  {2, 4, 2, Statistics::Bose},  {3, 4, 2, Statistics::Bose},
    {4, 2, 1, Statistics::Fermi}, {5, 3, 2, Statistics::Fermi}, {6, 3, 1, Statistics::Fermi},
};

SelftestRow at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, value <= bound};
}

/// Central differences of the sesquilinear map psi -> rho along e_b and i e_b.
double finite_difference_defect(const ComplexVector& psi, const ProjectorSet& p) {
  const ComplexMatrix jac = build_jacobian(psi, p).matrix;
  const int dim = p.dim();
  const double h = 1e-3;
  double worst = 0.0;
  for (int b = 0; b < dim; ++b) {
    ComplexVector d = ComplexVector::Zero(dim);
    d(b) = h;
    const ComplexVector dre =
        (vec_rows(compute_rdm(psi + d, p).matrix) - vec_rows(compute_rdm(psi - d, p).matrix)) / (2 * h);
    d(b) = cplx(0.0, h);
    const ComplexVector dim_ =
        (vec_rows(compute_rdm(psi + d, p).matrix) - vec_rows(compute_rdm(psi - d, p).matrix)) / (2 * h);
    const cplx i(0.0, 1.0);
    const ComplexVector dpsi = 0.5 * (dre - i * dim_);
    const ComplexVector dconj = 0.5 * (dre + i * dim_);
    worst = std::max(worst, (jac.col(b) - dpsi).cwiseAbs().maxCoeff());
    worst = std::max(worst, (jac.col(dim + b) - dconj).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

std::vector<SelftestRow> selftest(bool corrupt_sigma) {
  std::vector<SelftestRow> rows;
  const SigmaConvention sc = corrupt_sigma ? SigmaConvention::Reciprocal : SigmaConvention::TraceNormalized;

  double trace_defect = 0.0;
  for (const auto& s : kShapes) {
    const ProjectorSet p = build_projectors(s.q, s.n, s.m, s.s, sc);
    const RealMatrix id = RealMatrix::Identity(p.dim(), p.dim());
    trace_defect = std::max(trace_defect, (p.diagonal_sum() - id).cwiseAbs().maxCoeff());
  }
  rows.push_back(at_most("trace identity sum_I P_II = 1", trace_defect, 1e-12));
  if (!rows.back().passed) return rows;

  double route = 0.0, closure = 0.0, fd = 0.0, psd = 0.0;
  for (std::size_t k = 0; k < std::size(kShapes); ++k) {
    const auto& s = kShapes[k];
    const ProjectorSet p = build_projectors(s.q, s.n, s.m, s.s);
    Engine engine(substream_seed(kSeed, 1, k));
    const ComplexVector psi = random_state(p.dim(), engine);
    const MParticleHamiltonian hm{s.m, random_hermitian(p.dim_m(), engine)};
    const ReducedDensityMatrix rho = compute_rdm(psi, p);
    route = std::max(route, (rho.matrix - compute_rdm_via_projectors(psi, p).matrix).cwiseAbs().maxCoeff());
    const double direct = (psi.adjoint() * assemble_hamiltonian(hm, p) * psi)(0).real();
    closure = std::max(closure, std::abs(direct - energy(psi, hm, p)));
    fd = std::max(fd, finite_difference_defect(psi, p));
    psd = std::max(psd, -diagnose(rho, 1.0).min_eigenvalue);
  }
  rows.push_back(at_most("rdm unfolding = projector route", route, 1e-12));
  rows.push_back(at_most("energy closure E = tr(H rho)", closure, 1e-10));
  rows.push_back(at_most("finite-difference Jacobian", fd, 1e-9));
  rows.push_back(at_most("rdm positivity (-min eigenvalue)", psd, 1e-12));

  {
    ScanConfig cfg;
    cfg.q = 2;
    cfg.n = 4;
    cfg.m = 2;
    cfg.trials = 3;
    cfg.controls = 5;
    cfg.seed = kSeed;
    const ScanReport rep = eigenstate_scan(cfg);
    rows.push_back(at_most("eigenstate cokernel dim 1",
                           rep.summary.eigen_failures + rep.summary.control_failures, 0));
  }

  {
    Engine engine(substream_seed(kSeed, 2, 0));
    double plucker = 0.0;
    for (auto [q, n] : {std::pair{4, 2}, {5, 2}, {6, 3}}) {
      plucker = std::max(plucker, plucker_residual(slater_embed(random_orthonormal_orbitals(q, n, engine))));
    }
    rows.push_back(at_most("Plücker residual of Slater states", plucker, 1e-12));
  }

  {
    Engine engine(substream_seed(kSeed, 3, 0));
    double veronese = 0.0;
    int mismatches = 0;
    for (auto [q, n] : {std::pair{2, 4}, {3, 4}, {3, 6}}) {
      const PureState psi = symmetric_product_embed(random_state(q, engine), n);
      veronese = std::max(veronese, veronese_residual(psi));
      const ProjectorSet p = build_projectors(q, n, 1, Statistics::Bose);
      if (cokernel(build_jacobian(psi.amplitudes, p)).dim != (q - 1) * (q - 1)) ++mismatches;
    }
    rows.push_back(at_most("Veronese residual of condensates", veronese, 1e-12));
    rows.push_back(at_most("condensate cokernel dim (q-1)^2", mismatches, 0));
  }

  {
    int mismatches = 0;
    for (auto [na, nb] : {std::pair{2, 3}, {3, 4}}) {
      for (int r = 1; r <= na; ++r) {
        Engine engine(substream_seed(kSeed, 4, static_cast<std::uint64_t>(10 * na + r)));
        const int dim = cokernel(bipartite_jacobian(planted_rank_state(na, nb, r, engine))).dim;
        if (dim != (na - r) * (na - r)) ++mismatches;
      }
    }
    rows.push_back(at_most("bipartite corank squared", mismatches, 0));
  }

  {
    int mismatches = 0;
    for (auto [na, nb] : {std::pair{2, 2}, {2, 3}, {3, 4}, {4, 4}}) {
      if (commutant_dimension(na, nb) != nb * nb) ++mismatches;
    }
    rows.push_back(at_most("commutant dimension N_B^2", mismatches, 0));
  }

  {
    double worst = 0.0;
    for (auto [q, n] : {std::pair{2, 4}, {3, 4}}) {
      const ProjectorSet p1 = build_projectors(q, n, 1, Statistics::Bose);
      const ProjectorSet p2 = build_projectors(q, n, 2, Statistics::Bose);
      const ComplexVector psi = random_state(p1.dim(), substream_seed(kSeed, 5, static_cast<std::uint64_t>(q)));
      worst = std::max(worst, span_inclusion(build_jacobian(psi, p1), build_jacobian(psi, p2)));
    }
    rows.push_back(at_most("span inclusion J1 in J2", worst, 1e-10));
  }

  {
    HubbardScanConfig cfg;
    cfg.spec = {3, 2, Boundary::Open, 1.0, 0.0};
    cfg.interactions = {0.0, 2.0};
    cfg.seed = kSeed;
    cfg.minor_samples = 50;
    cfg.controls = 10;
    const HubbardScanReport rep = hubbard_scan(cfg);
    rows.push_back(at_most("Hubbard family rank <= 2", rep.eigen_failures + rep.control_failures, 0));
  }
  return rows;
}

}  // namespace emod::cli
