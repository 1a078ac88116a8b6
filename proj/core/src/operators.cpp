// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigenmoduli/operators.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <utility>

#include "eigenmoduli/error.hpp"

namespace emod {

std::string_view to_string(TraceConvention c) noexcept {
  return c == TraceConvention::Unit ? "unit" : "binomial";
}

// ---------------------------------------------------------------------------
// ProjectorSet
// ---------------------------------------------------------------------------

const std::vector<ProjectorEntry>& ProjectorSet::entries(int I, int J) const {
  if (I < 0 || J < 0 || I >= dim_m() || J >= dim_m()) {
    throw InvalidArgument("projector index (" + std::to_string(I) + "," + std::to_string(J) +
                          ") out of range");
  }
  return entries_[static_cast<std::size_t>(I) * static_cast<std::size_t>(dim_m()) +
                  static_cast<std::size_t>(J)];
}

RealMatrix ProjectorSet::dense(int I, int J) const {
  RealMatrix p = RealMatrix::Zero(dim(), dim());
  for (const auto& e : entries(I, J)) p(e.alpha, e.beta) += e.value;
  return p;
}

RealMatrix ProjectorSet::diagonal_sum() const {
  RealMatrix s = RealMatrix::Zero(dim(), dim());
  for (int I = 0; I < dim_m(); ++I) {
    for (const auto& e : entries(I, I)) s(e.alpha, e.beta) += e.value;
  }
  return s;
}

std::size_t ProjectorSet::nonzeros() const noexcept {
  std::size_t total = 0;
  for (const auto& list : entries_) total += list.size();
  return total;
}

ProjectorSet build_projectors(int q, int n, int m, Statistics statistics,
                              SigmaConvention sigma_convention, TraceConvention trace_convention) {
  if (m < 1 || m > n) {
    throw InvalidArgument("projectors need 1 <= m <= n (got m=" + std::to_string(m) +
                          ", n=" + std::to_string(n) + ")");
  }
  if (statistics == Statistics::Fermi && n > q) {
    throw InvalidArgument("fermionic projectors need n <= q (got n=" + std::to_string(n) +
                          ", q=" + std::to_string(q) + ")");
  }

  ProjectorSet p;
  p.basis_n_ = enumerate_basis(q, n, statistics);
  p.basis_m_ = enumerate_basis(q, m, statistics);
  p.basis_rest_ = enumerate_basis(q, n - m, statistics);
  p.sigma_convention_ = sigma_convention;
  p.trace_convention_ = trace_convention;
  p.normalization_ = trace_convention == TraceConvention::Unit
                         ? 1.0 / static_cast<double>(binomial(n, m))
                         : 1.0;

  const int na = p.dim_m();
  const int nb = p.dim_rest();
  p.table_.resize(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb));
  for (int I = 0; I < na; ++I) {
    for (int K = 0; K < nb; ++K) {
      const IndexSet& iset = p.basis_m_.at(I);
      const IndexSet& kset = p.basis_rest_.at(K);
      const ConcatResult c = concat_index(iset, kset, q, statistics);
      ConcatCell& cell = p.table_[static_cast<std::size_t>(I) * nb + K];
      if (c.coefficient == 0.0) continue;
      cell.position = p.basis_n_.position(c.sorted);
      cell.sigma = sigma(iset, kset, q, statistics, sigma_convention);
    }
  }

  p.entries_.resize(static_cast<std::size_t>(na) * static_cast<std::size_t>(na));
  for (int I = 0; I < na; ++I) {
    for (int J = 0; J < na; ++J) {
      auto& list = p.entries_[static_cast<std::size_t>(I) * na + J];
      for (int K = 0; K < nb; ++K) {
        const ConcatCell& ci = p.concat(I, K);
        const ConcatCell& cj = p.concat(J, K);
        if (ci.position < 0 || cj.position < 0) continue;
        list.push_back({ci.position, cj.position, ci.sigma * cj.sigma * p.normalization_});
      }
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

ComplexMatrix combine(const ProjectorSet& projectors, const ComplexMatrix& coeffs) {
  const int na = projectors.dim_m();
  if (coeffs.rows() != na || coeffs.cols() != na) {
    throw DimensionMismatch("coefficient matrix is " + std::to_string(coeffs.rows()) + "x" +
                            std::to_string(coeffs.cols()) + ", projectors expect " +
                            std::to_string(na) + "x" + std::to_string(na));
  }
  ComplexMatrix h = ComplexMatrix::Zero(projectors.dim(), projectors.dim());
  for (int I = 0; I < na; ++I) {
    for (int J = 0; J < na; ++J) {
      const cplx c = coeffs(I, J);
      if (c == cplx{}) continue;
      for (const auto& e : projectors.entries(I, J)) h(e.alpha, e.beta) += c * e.value;
    }
  }
  return h;
}

ComplexMatrix assemble_hamiltonian(const MParticleHamiltonian& hm, const ProjectorSet& projectors) {
  if (hm.m != projectors.m()) {
    throw DimensionMismatch("Hamiltonian is " + std::to_string(hm.m) +
                            "-particle, projectors are " + std::to_string(projectors.m()) +
                            "-particle");
  }
  if (hm.matrix.rows() != projectors.dim_m() || hm.matrix.cols() != projectors.dim_m()) {
    throw DimensionMismatch("m-particle Hamiltonian has shape " +
                            std::to_string(hm.matrix.rows()) + "x" +
                            std::to_string(hm.matrix.cols()) + ", basis has " +
                            std::to_string(projectors.dim_m()) + " states");
  }
  require_hermitian(hm.matrix, "m-particle Hamiltonian");
  return combine(projectors, hm.matrix);
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

void HamiltonianFamily::validate() const {
  if (operators.empty()) throw InvalidArgument("Hamiltonian family is empty");
  if (names.size() != operators.size()) {
    throw InvalidArgument("family has " + std::to_string(operators.size()) + " operators but " +
                          std::to_string(names.size()) + " names");
  }
  const auto d = operators.front().rows();
  for (std::size_t a = 0; a < operators.size(); ++a) {
    if (operators[a].rows() != d || operators[a].cols() != d) {
      throw DimensionMismatch("family operator '" + names[a] + "' is not " + std::to_string(d) +
                              "x" + std::to_string(d));
    }
    require_hermitian(operators[a], names[a].c_str());
  }
  if (parameters && parameters->size() != operators.size()) {
    throw DimensionMismatch("family has " + std::to_string(operators.size()) +
                            " operators but " + std::to_string(parameters->size()) +
                            " parameters");
  }
}

bool HamiltonianFamily::leads_with_identity() const {
  if (operators.empty()) return false;
  const auto& id = operators.front();
  return id.rows() == id.cols() &&
         (id - ComplexMatrix::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff() == 0.0;
}

void HamiltonianFamily::validate_parametric() const {
  validate();
  if (!leads_with_identity()) {
    throw InvalidArgument("a parametric family must list the identity first (eta_0 = -E)");
  }
}

HamiltonianFamily hermitian_generator_basis(const ProjectorSet& projectors) {
  const int na = projectors.dim_m();
  const auto& bm = projectors.basis_m();
  HamiltonianFamily family;
  family.names.resize(static_cast<std::size_t>(na) * na);
  family.operators.resize(static_cast<std::size_t>(na) * na);
  const cplx i_unit(0.0, 1.0);
  for (int I = 0; I < na; ++I) {
    for (int J = 0; J < na; ++J) {
      const auto slot = static_cast<std::size_t>(I) * na + J;
      if (I == J) {
        family.names[slot] = "P" + bm.at(I).str() + bm.at(I).str();
        family.operators[slot] = projectors.dense(I, I).cast<cplx>();
      } else if (I < J) {
        family.names[slot] = "S" + bm.at(I).str() + bm.at(J).str();
        family.operators[slot] = (projectors.dense(I, J) + projectors.dense(J, I)).cast<cplx>();
      } else {
        // slot (I,J) with J < I carries the antisymmetric part of the pair (J,I)
        family.names[slot] = "A" + bm.at(J).str() + bm.at(I).str();
        family.operators[slot] =
            i_unit * (projectors.dense(J, I) - projectors.dense(I, J)).cast<cplx>();
      }
    }
  }
  return family;
}

std::vector<double> encode_generator_coefficients(const ComplexMatrix& hm) {
  if (hm.rows() != hm.cols()) throw DimensionMismatch("m-particle Hamiltonian must be square");
  require_hermitian(hm, "m-particle Hamiltonian");
  const auto na = static_cast<int>(hm.rows());
  std::vector<double> eta(static_cast<std::size_t>(na) * na);
  for (int I = 0; I < na; ++I) {
    for (int J = 0; J < na; ++J) {
      const auto slot = static_cast<std::size_t>(I) * na + J;
      if (I == J) {
        eta[slot] = hm(I, I).real();
      } else if (I < J) {
        eta[slot] = hm(I, J).real();
      } else {
        eta[slot] = hm(J, I).imag();
      }
    }
  }
  return eta;
}

// ---------------------------------------------------------------------------
// Hubbard
// ---------------------------------------------------------------------------

std::string_view to_string(Boundary b) noexcept {
  return b == Boundary::Open ? "open" : "periodic";
}

Boundary parse_boundary(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "open" || lower == "obc") return Boundary::Open;
  if (lower == "periodic" || lower == "pbc") return Boundary::Periodic;
  throw InvalidArgument("unknown boundary '" + std::string(text) + "' (expected open|periodic)");
}

void HubbardSpec::validate() const {
  if (sites < 1) throw InvalidArgument("Hubbard chain needs at least one site");
  if (sites > 31) throw InvalidArgument("Hubbard chain limited to 31 sites");
  if (electrons < 1 || electrons > 2 * sites) {
    throw InvalidArgument("invalid filling: " + std::to_string(electrons) +
                          " electrons on " + std::to_string(sites) + " sites");
  }
}

RealMatrix HubbardModel::hamiltonian() const { return spec.t * hopping + spec.U * interaction; }

HubbardModel hubbard_operators(const HubbardSpec& spec) {
  spec.validate();
  const int L = spec.sites;
  HubbardModel model;
  model.spec = spec;
  model.basis = enumerate_basis(2 * L, spec.electrons, Statistics::Fermi);
  const int dim = model.basis.size();

  // bit p <-> spin-orbital label p + 1
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(dim));
  std::unordered_map<std::uint64_t, int> index;
  for (int s = 0; s < dim; ++s) {
    std::uint64_t mask = 0;
    for (int label : model.basis.at(s).labels()) mask |= std::uint64_t{1} << (label - 1);
    masks[static_cast<std::size_t>(s)] = mask;
    index.emplace(mask, s);
  }

  std::set<std::pair<int, int>> bonds;
  for (int i = 0; i + 1 < L; ++i) bonds.emplace(i, i + 1);
  if (spec.boundary == Boundary::Periodic && L > 2) bonds.emplace(0, L - 1);

  model.hopping = RealMatrix::Zero(dim, dim);
  model.interaction = RealMatrix::Zero(dim, dim);

  auto hop = [&](int to, int from, int s) {
    // c^dagger_to c_from |state>
    const std::uint64_t mask = masks[static_cast<std::size_t>(s)];
    const std::uint64_t from_bit = std::uint64_t{1} << from;
    const std::uint64_t to_bit = std::uint64_t{1} << to;
    if (!(mask & from_bit) || (mask & to_bit)) return;
    const int lo = std::min(to, from);
    const int hi = std::max(to, from);
    const std::uint64_t between = mask & (((std::uint64_t{1} << hi) - 1) & ~((std::uint64_t{1} << (lo + 1)) - 1));
    const double sign = (std::popcount(between) % 2 == 0) ? 1.0 : -1.0;
    const int target = index.at((mask & ~from_bit) | to_bit);
    model.hopping(target, s) += sign;
  };

  for (int s = 0; s < dim; ++s) {
    for (const auto& [i, j] : bonds) {
      for (int spin = 0; spin < 2; ++spin) {
        const int a = spin_orbital_label(i, spin) - 1;
        const int b = spin_orbital_label(j, spin) - 1;
        hop(a, b, s);
        hop(b, a, s);
      }
    }
    const std::uint64_t mask = masks[static_cast<std::size_t>(s)];
    int doublons = 0;
    for (int site = 0; site < L; ++site) {
      const bool up = mask & (std::uint64_t{1} << (spin_orbital_label(site, 0) - 1));
      const bool down = mask & (std::uint64_t{1} << (spin_orbital_label(site, 1) - 1));
      doublons += (up && down) ? 1 : 0;
    }
    model.interaction(s, s) = doublons;
  }

  model.family.names = {"I", "T", "V"};
  model.family.operators = {ComplexMatrix::Identity(dim, dim), model.hopping.cast<cplx>(),
                            model.interaction.cast<cplx>()};
  model.family.parameters = std::vector<double>{0.0, spec.t, spec.U};
  return model;
}

}  // namespace emod
