// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigenmoduli/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "eigenmoduli/error.hpp"

namespace emod {

namespace {

constexpr std::uint64_t kStrataStream = 0x5354524154ULL;  // "STRAT"

void require_state_fits(const ComplexVector& psi, int dim, const char* what) {
  if (psi.size() != dim) {
    throw DimensionMismatch(std::string(what) + ": state has " + std::to_string(psi.size()) +
                            " amplitudes, expected " + std::to_string(dim));
  }
  require_finite(psi, what);
}

double multinomial(const std::vector<int>& occupations) {
  double value = 1.0;
  int running = 0;
  for (int k : occupations) {
    running += k;
    value *= static_cast<double>(binomial(running, k));
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// Jacobians
// ---------------------------------------------------------------------------

JacobianMatrix build_jacobian(const ComplexVector& psi, const ProjectorSet& projectors) {
  require_state_fits(psi, projectors.dim(), "build_jacobian");
  const int na = projectors.dim_m();
  const int n = projectors.dim();
  JacobianMatrix jac;
  jac.shape = RdmShape{projectors.q(), projectors.n(), projectors.m(), projectors.statistics()};
  jac.matrix = ComplexMatrix::Zero(na * na, 2 * n);
  for (int I = 0; I < na; ++I) {
    for (int J = 0; J < na; ++J) {
      const int row = I * na + J;
      for (const auto& e : projectors.entries(I, J)) {
        // d/d psi_beta of psi^dagger P psi, and d/d conj(psi_alpha)
        jac.matrix(row, e.beta) += e.value * std::conj(psi(e.alpha));
        jac.matrix(row, n + e.alpha) += e.value * psi(e.beta);
      }
    }
  }
  return jac;
}

JacobianMatrix family_jacobian(const ComplexVector& psi, const HamiltonianFamily& family,
                               double real_tol) {
  family.validate();
  const int n = family.dim();
  require_state_fits(psi, n, "family_jacobian");

  bool real = psi.imag().cwiseAbs().maxCoeff() <= real_tol;
  for (const auto& op : family.operators) {
    if (!real) break;
    real = op.imag().cwiseAbs().maxCoeff() <= real_tol;
  }

  JacobianMatrix jac;
  jac.family_names = family.names;
  jac.real_reduced = real;
  jac.matrix = ComplexMatrix::Zero(family.size(), real ? n : 2 * n);
  for (int a = 0; a < family.size(); ++a) {
    const ComplexMatrix& h = family.operators[static_cast<std::size_t>(a)];
    const ComplexVector h_psi = h * psi;
    if (real) {
      jac.matrix.row(a) = h_psi.real().cast<cplx>().transpose();
    } else {
      jac.matrix.row(a).head(n) = psi.adjoint() * h;
      jac.matrix.row(a).tail(n) = h_psi.transpose();
    }
  }
  return jac;
}

CokernelReport cokernel(const ComplexMatrix& jacobian, const TolerancePolicy& policy) {
  const LeftNullspace lns = left_nullspace_with_spectrum(jacobian, policy);
  CokernelReport rep;
  rep.rows = static_cast<int>(jacobian.rows());
  rep.cols = static_cast<int>(jacobian.cols());
  rep.dim = rep.rows - lns.rank;
  rep.excess = rep.dim - std::max(0, rep.rows - rep.cols);
  rep.singular_values = lns.spectrum.singular_values;
  rep.basis = lns.basis;
  rep.tolerance = policy;
  for (int k = 0; k < rep.dim; ++k) {
    const double r = (jacobian.transpose() * rep.basis.col(k)).norm();
    rep.max_residual = std::max(rep.max_residual, r);
  }
  return rep;
}

CokernelReport cokernel(const JacobianMatrix& jacobian, const TolerancePolicy& policy) {
  return cokernel(jacobian.matrix, policy);
}

double cokernel_alignment(const ComplexMatrix& basis, const ComplexVector& target) {
  if (basis.rows() != target.size()) {
    throw DimensionMismatch("alignment target has length " + std::to_string(target.size()) +
                            ", cokernel vectors have length " + std::to_string(basis.rows()));
  }
  const double tn = target.norm();
  if (tn == 0.0) throw InvalidArgument("alignment target is zero");
  if (basis.cols() == 0) return 0.0;
  return (basis.adjoint() * target).norm() / tn;
}

ComplexVector vec_rows(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

ComplexMatrix unvec_rows(const ComplexVector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) {
    throw DimensionMismatch("cannot reshape a length-" + std::to_string(v.size()) +
                            " vector into " + std::to_string(n) + "x" + std::to_string(n));
  }
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  }
  return m;
}

EtaRecovery recover_eta(const ComplexVector& psi, const ProjectorSet& projectors,
                        const TolerancePolicy& policy,
                        const std::optional<ComplexMatrix>& reference) {
  const JacobianMatrix jac = build_jacobian(psi, projectors);
  const CokernelReport rep = cokernel(jac, policy);
  if (rep.dim == 0) throw InvalidArgument("trivial cokernel: the state is not a critical point");

  const int na = projectors.dim_m();
  const ComplexMatrix raw = unvec_rows(rep.basis.col(0), na);
  // The cokernel is closed under eta -> eta^dagger, so one of these two
  // combinations is a Hermitian member of it.
  const ComplexMatrix plus = raw + raw.adjoint();
  const ComplexMatrix minus = cplx(0.0, 1.0) * (raw - raw.adjoint());
  ComplexMatrix eta = plus.norm() >= minus.norm() ? plus : minus;
  eta /= eta.norm();
  // fix the overall sign: largest-magnitude diagonal entry positive
  Eigen::Index k = 0;
  eta.diagonal().real().cwiseAbs().maxCoeff(&k);
  if (eta(k, k).real() < 0.0) eta = -eta;

  EtaRecovery out;
  out.cokernel_dim = rep.dim;
  out.hermiticity_defect = (eta - eta.adjoint()).norm();
  const ComplexMatrix op = combine(projectors, eta);
  out.right_residual = (op * psi).norm();
  out.left_residual = (psi.adjoint() * op).norm();
  if (reference) {
    if (reference->rows() != na || reference->cols() != na) {
      throw DimensionMismatch("reference operator does not match the m-particle basis");
    }
    out.alignment = cokernel_alignment(rep.basis, vec_rows(*reference));
  }
  out.eta = std::move(eta);
  return out;
}

// ---------------------------------------------------------------------------
// Minors
// ---------------------------------------------------------------------------

double hadamard_normalized_minor(const ComplexMatrix& jacobian, const std::vector<int>& columns) {
  const auto rows = static_cast<int>(jacobian.rows());
  if (static_cast<int>(columns.size()) != rows) {
    throw DimensionMismatch("a minor needs exactly " + std::to_string(rows) + " columns");
  }
  ComplexMatrix sub(rows, rows);
  for (int c = 0; c < rows; ++c) {
    const int col = columns[static_cast<std::size_t>(c)];
    if (col < 0 || col >= jacobian.cols()) throw InvalidArgument("minor column out of range");
    sub.col(c) = jacobian.col(col);
  }
  // Rows at rounding level relative to the largest Jacobian row are structural zeros.
  const double floor = kMinorRowFloor * jacobian.rowwise().norm().maxCoeff();
  double log_norms = 0.0;
  for (int r = 0; r < rows; ++r) {
    const double nr = sub.row(r).norm();
    if (nr <= floor) return 0.0;
    log_norms += std::log(nr);
  }
  const double log_det = log_abs_determinant(sub);
  if (!std::isfinite(log_det)) return 0.0;
  return std::min(1.0, std::exp(log_det - log_norms));
}

namespace {

void finish(MinorSampleReport& rep) {
  rep.sample_count = static_cast<int>(rep.normalized_abs_dets.size());
  if (rep.normalized_abs_dets.empty()) return;
  std::vector<double> sorted = rep.normalized_abs_dets;
  std::sort(sorted.begin(), sorted.end());
  rep.max = sorted.back();
  const std::size_t mid = sorted.size() / 2;
  rep.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

void require_minor_shape(const ComplexMatrix& jacobian) {
  if (jacobian.rows() == 0) throw InvalidArgument("minors of an empty Jacobian");
  if (jacobian.cols() < jacobian.rows()) {
    throw InvalidArgument("infeasible shape for minors: " + std::to_string(jacobian.cols()) +
                          " columns < " + std::to_string(jacobian.rows()) +
                          " rows (2N < N_A^2); use the cokernel excess instead");
  }
}

}  // namespace

MinorSampleReport sample_minors(const ComplexMatrix& jacobian, int count, std::uint64_t seed) {
  require_minor_shape(jacobian);
  if (count < 1) throw InvalidArgument("minor sample count must be >= 1");
  MinorSampleReport rep;
  rep.seed = seed;
  Engine engine(seed);
  std::vector<int> all(static_cast<std::size_t>(jacobian.cols()));
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> pick;
  pick.reserve(static_cast<std::size_t>(jacobian.rows()));
  rep.normalized_abs_dets.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    pick.clear();
    std::sample(all.begin(), all.end(), std::back_inserter(pick), jacobian.rows(), engine);
    rep.normalized_abs_dets.push_back(hadamard_normalized_minor(jacobian, pick));
  }
  finish(rep);
  return rep;
}

MinorSampleReport exhaustive_minors(const ComplexMatrix& jacobian, std::uint64_t cap) {
  require_minor_shape(jacobian);
  const auto rows = static_cast<int>(jacobian.rows());
  const auto cols = static_cast<int>(jacobian.cols());
  const std::uint64_t total = binomial(cols, rows);
  if (total > cap) {
    throw InvalidArgument("exhaustive minors would need " + std::to_string(total) +
                          " determinants (cap " + std::to_string(cap) + "); sample instead");
  }
  MinorSampleReport rep;
  rep.exhaustive = true;
  rep.normalized_abs_dets.reserve(total);
  std::vector<int> pick(static_cast<std::size_t>(rows));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    rep.normalized_abs_dets.push_back(hadamard_normalized_minor(jacobian, pick));
    int i = rows - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == cols - rows + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < rows; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  finish(rep);
  return rep;
}

// ---------------------------------------------------------------------------
// Slater / Plücker
// ---------------------------------------------------------------------------

ComplexMatrix random_orthonormal_orbitals(int q, int n, Engine& engine) {
  if (n < 1 || n > q) throw InvalidArgument("need 1 <= n <= q orbitals");
  const ComplexMatrix g = random_complex_gaussian(q, n, engine);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(q, n);
}

double orbital_orthogonality_residual(const ComplexMatrix& orbitals) {
  const ComplexMatrix gram = orbitals.adjoint() * orbitals;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(gram(i, j)));
    }
  }
  return worst;
}

PureState slater_embed(const ComplexMatrix& orbitals) {
  const auto q = static_cast<int>(orbitals.rows());
  const auto n = static_cast<int>(orbitals.cols());
  if (n < 1 || n > q) throw InvalidArgument("Slater determinant needs 1 <= n <= q orbitals");
  require_finite(orbitals, "orbitals");
  if (numeric_rank(orbitals) < n) throw InvalidArgument("orbitals are rank-deficient");
  const ComplexMatrix gram = orbitals.adjoint() * orbitals;
  const double defect = (gram - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    throw NumericalError("orbitals are not orthonormal: max |G - 1| = " + std::to_string(defect));
  }

  const Basis basis = enumerate_basis(q, n, Statistics::Fermi);
  PureState state{q, n, Statistics::Fermi, ComplexVector(basis.size())};
  ComplexMatrix sub(n, n);
  for (int p = 0; p < basis.size(); ++p) {
    const IndexSet& set = basis.at(p);
    for (int r = 0; r < n; ++r) sub.row(r) = orbitals.row(set[r] - 1);
    state.amplitudes(p) = determinant(sub);
  }
  state.amplitudes /= state.amplitudes.norm();
  return state;
}

ComplexMatrix slater_one_body_hamiltonian(const ComplexMatrix& orbitals) {
  return -(orbitals * orbitals.adjoint());
}

double plucker_residual(const PureState& state) {
  if (state.statistics != Statistics::Fermi) {
    throw InvalidArgument("Plücker relations apply to fermionic states");
  }
  const int q = state.q;
  const int n = state.n;
  const Basis basis = enumerate_basis(q, n, Statistics::Fermi);
  if (state.amplitudes.size() != basis.size()) {
    throw DimensionMismatch("state does not match its fermionic basis");
  }
  if (n < 1 || n + 1 > q) return 0.0;  // no relations on P^0 or the full top wedge

  const Basis lower = enumerate_basis(q, n - 1, Statistics::Fermi);
  const Basis upper = enumerate_basis(q, n + 1, Statistics::Fermi);
  double worst = 0.0;
  for (const IndexSet& I : lower.sets()) {
    for (const IndexSet& J : upper.sets()) {
      cplx sum{};
      for (int l = 0; l < J.size(); ++l) {
        const IndexSet single{J[l]};
        const ConcatResult ii = concat_index(I, single, q, Statistics::Fermi);
        if (ii.coefficient == 0.0) continue;
        const IndexSet rest = J.minus(single);
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        sum += sign * ii.coefficient * state.amplitudes(basis.position(ii.sorted)) *
               state.amplitudes(basis.position(rest));
      }
      worst = std::max(worst, std::abs(sum));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Symmetric products / Veronese
// ---------------------------------------------------------------------------

PureState symmetric_product_embed(const ComplexVector& orbital, int n) {
  const auto q = static_cast<int>(orbital.size());
  if (q < 1) throw InvalidArgument("orbital has no components");
  if (n < 0) throw InvalidArgument("particle number must be non-negative");
  require_finite(orbital, "orbital");
  const double norm = orbital.norm();
  if (norm == 0.0) throw InvalidArgument("zero orbital");
  const ComplexVector phi = orbital / norm;

  const Basis basis = enumerate_basis(q, n, Statistics::Bose);
  PureState state{q, n, Statistics::Bose, ComplexVector(basis.size())};
  for (int p = 0; p < basis.size(); ++p) {
    const IndexSet& set = basis.at(p);
    cplx prod{1.0, 0.0};
    for (int label : set.labels()) prod *= phi(label - 1);
    state.amplitudes(p) = std::sqrt(multinomial(set.occupations(q))) * prod;
  }
  state.amplitudes /= state.amplitudes.norm();
  return state;
}

double veronese_residual(const PureState& state) {
  if (state.statistics != Statistics::Bose) {
    throw InvalidArgument("Veronese relations apply to bosonic states");
  }
  const Basis basis = enumerate_basis(state.q, state.n, Statistics::Bose);
  if (state.amplitudes.size() != basis.size()) {
    throw DimensionMismatch("state does not match its bosonic basis");
  }
  std::vector<cplx> reduced(static_cast<std::size_t>(basis.size()));
  for (int p = 0; p < basis.size(); ++p) {
    reduced[static_cast<std::size_t>(p)] =
        state.amplitudes(p) / std::sqrt(multinomial(basis.at(p).occupations(state.q)));
  }
  // products p_I p_J grouped by the merged multiset (IJ)
  std::map<std::vector<int>, std::vector<cplx>> groups;
  for (int a = 0; a < basis.size(); ++a) {
    for (int b = a; b < basis.size(); ++b) {
      std::vector<int> merged;
      std::merge(basis.at(a).labels().begin(), basis.at(a).labels().end(),
                 basis.at(b).labels().begin(), basis.at(b).labels().end(),
                 std::back_inserter(merged));
      groups[merged].push_back(reduced[static_cast<std::size_t>(a)] *
                               reduced[static_cast<std::size_t>(b)]);
    }
  }
  double worst = 0.0;
  for (const auto& [key, values] : groups) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        worst = std::max(worst, std::abs(values[i] - values[j]));
      }
    }
  }
  return worst;
}

PureState symmetric_product_state(const ComplexMatrix& orbitals,
                                  const std::vector<int>& multiplicities) {
  const auto q = static_cast<int>(orbitals.rows());
  if (q < 1) throw InvalidArgument("orbitals have no components");
  if (static_cast<Eigen::Index>(multiplicities.size()) != orbitals.cols()) {
    throw DimensionMismatch("one multiplicity per orbital required");
  }
  int n = 0;
  for (int k : multiplicities) {
    if (k < 0) throw InvalidArgument("negative multiplicity");
    n += k;
  }
  require_finite(orbitals, "orbitals");

  // Expand the product of creation operators into monomials of b^dagger.
  std::map<std::vector<int>, cplx> poly;
  poly.emplace(std::vector<int>(static_cast<std::size_t>(q), 0), cplx{1.0, 0.0});
  for (std::size_t j = 0; j < multiplicities.size(); ++j) {
    for (int rep = 0; rep < multiplicities[j]; ++rep) {
      std::map<std::vector<int>, cplx> next;
      for (const auto& [occ, coef] : poly) {
        for (int a = 0; a < q; ++a) {
          const cplx f = orbitals(a, static_cast<Eigen::Index>(j));
          if (f == cplx{}) continue;
          std::vector<int> key = occ;
          ++key[static_cast<std::size_t>(a)];
          next[key] += coef * f;
        }
      }
      poly = std::move(next);
    }
  }

  const Basis basis = enumerate_basis(q, n, Statistics::Bose);
  PureState state{q, n, Statistics::Bose, ComplexVector::Zero(basis.size())};
  for (const auto& [occ, coef] : poly) {
    std::vector<int> labels;
    double factorials = 1.0;
    for (int a = 0; a < q; ++a) {
      for (int c = 0; c < occ[static_cast<std::size_t>(a)]; ++c) {
        labels.push_back(a + 1);
        factorials *= c + 1;
      }
    }
    // (b^dagger)^k |0> = sqrt(k!) |k>
    state.amplitudes(basis.position(IndexSet(std::move(labels)))) = coef * std::sqrt(factorials);
  }
  const double norm = state.amplitudes.norm();
  if (norm == 0.0) throw NumericalError("symmetric product vanishes");
  state.amplitudes /= norm;
  return state;
}

// ---------------------------------------------------------------------------
// Filtration and strata
// ---------------------------------------------------------------------------

double span_inclusion(const JacobianMatrix& low, const JacobianMatrix& high,
                      const TolerancePolicy& policy) {
  if (low.cols() != high.cols()) {
    throw DimensionMismatch("Jacobians refer to different states (" + std::to_string(low.cols()) +
                            " vs " + std::to_string(high.cols()) + " columns)");
  }
  if (low.shape && high.shape) {
    const RdmShape& a = *low.shape;
    const RdmShape& b = *high.shape;
    if (a.q != b.q || a.n != b.n || a.statistics != b.statistics) {
      throw DimensionMismatch("Jacobians refer to different many-body spaces");
    }
  }
  policy.validate();
  // Row space of `high` = column space of high^T.
  Eigen::JacobiSVD<ComplexMatrix> svd(high.matrix.transpose(), Eigen::ComputeThinU);
  SvdSpectrum spec;
  const auto& s = svd.singularValues();
  spec.singular_values.assign(s.data(), s.data() + s.size());
  const int rank = spec.rank_at(policy);
  const ComplexMatrix u = svd.matrixU().leftCols(rank);

  double worst = 0.0;
  for (int r = 0; r < low.rows(); ++r) {
    const ComplexVector v = low.matrix.row(r).transpose();
    const double nv = v.norm();
    if (nv == 0.0) continue;
    const ComplexVector resid = v - u * (u.adjoint() * v);
    worst = std::max(worst, resid.norm() / nv);
  }
  return worst;
}

bool StrataReport::matches_expected() const {
  if (!expected) return true;
  return std::all_of(samples.begin(), samples.end(),
                     [this](const StrataSample& s) { return s.cokernel_dim == *expected; });
}

StrataReport strata_probe(int q, int n, int r, std::uint64_t seed, int samples,
                          const TolerancePolicy& policy) {
  if (q < 1 || n < 1) throw InvalidArgument("strata probe needs q >= 1 and n >= 1");
  if (r < 1 || r > std::min(q, n)) {
    throw InvalidArgument("infeasible rank r=" + std::to_string(r) + " (need 1 <= r <= min(q, n))");
  }
  if (samples < 1) throw InvalidArgument("strata probe needs at least one sample");

  const ProjectorSet projectors = build_projectors(q, n, 1, Statistics::Bose);
  StrataReport rep;
  rep.q = q;
  rep.n = n;
  rep.r = r;
  rep.seed = seed;
  if (r == 1) rep.expected = (q - 1) * (q - 1);

  for (int s = 0; s < samples; ++s) {
    Engine engine(substream_seed(seed, kStrataStream, static_cast<std::uint64_t>(s)));
    // uniform composition of n into r positive parts: r-1 distinct cut points in 1..n-1
    std::vector<int> cuts;
    std::vector<int> positions(static_cast<std::size_t>(n - 1));
    std::iota(positions.begin(), positions.end(), 1);
    std::sample(positions.begin(), positions.end(), std::back_inserter(cuts), r - 1, engine);
    std::vector<int> parts;
    int prev = 0;
    for (int c : cuts) {
      parts.push_back(c - prev);
      prev = c;
    }
    parts.push_back(n - prev);

    ComplexMatrix orbitals = random_complex_gaussian(q, r, engine);
    for (int j = 0; j < r; ++j) orbitals.col(j).normalize();
    const PureState state = symmetric_product_state(orbitals, parts);
    const CokernelReport ck = cokernel(build_jacobian(state.amplitudes, projectors), policy);
    rep.samples.push_back({std::move(parts), ck.dim});
  }
  return rep;
}

}  // namespace emod
