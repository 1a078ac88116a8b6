// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "eigenmoduli/error.hpp"
#include "eigenmoduli/fock_basis.hpp"
#include "eigenmoduli/moduli.hpp"
#include "eigenmoduli/operators.hpp"
#include "eigenmoduli/rdm_map.hpp"
#include "eigenmoduli/scan.hpp"
#include "eigenmoduli/serialize.hpp"
#include "eigenmoduli/version.hpp"

namespace emod::cli {

using io::json;

namespace {

constexpr std::uint64_t kPluckerStream = 10;
constexpr std::uint64_t kVeroneseStream = 11;
constexpr std::uint64_t kBipartiteStream = 12;
constexpr std::uint64_t kDiagStream = 13;

struct Io {
  std::ostream& out;
  std::ostream& err;
};

/// Where and how a report goes; never part of the embedded config.
struct Sink {
  std::string path;
};

struct Tolerance {
  double relative = TolerancePolicy{}.relative;
  double floor = TolerancePolicy{}.absolute_floor;

  [[nodiscard]] TolerancePolicy policy() const {
    TolerancePolicy p{relative, floor};
    p.validate();
    return p;
  }
};

void add_tolerance(CLI::App* sub, Tolerance& tol) {
  sub->add_option("--tol", tol.relative, "relative singular-value cutoff")->capture_default_str();
  sub->add_option("--tol-floor", tol.floor, "absolute singular-value floor")->capture_default_str();
}

void add_sink(CLI::App* sub, Sink& sink) {
  sub->add_option("-o,--out", sink.path, "write the report here instead of stdout");
}

void put_tolerance(json& config, const Tolerance& tol) {
  config["tol"] = tol.relative;
  config["tol-floor"] = tol.floor;
}

void emit(const Io& io, const Sink& sink, const std::string& command, const json& config,
          const json& payload, std::optional<std::uint64_t> seed,
          std::optional<TolerancePolicy> tolerance, bool passed) {
  json report = io::make_report(command, config, payload, seed, tolerance);
  report["invocation"] = invocation(command, config);
  report["checks_passed"] = passed;
  const std::string text = io::dump(report);
  if (sink.path.empty()) {
    io.out << text;
  } else {
    io::write_text_file(sink.path, text);
    io.out << command << ": " << (passed ? "ok" : "CHECK FAILED") << ", report written to "
           << sink.path << "\n";
  }
}

PureState load_state(const std::string& path) {
  PureState state = io::state_from_json(io::read_json_file(path));
  state.validate();
  return state;
}

std::string number_text(const json& v) { return v.dump(); }

/// The operator source for Jacobian-based commands: an RDM order or a family file.
struct OperatorChoice {
  int m = 0;
  std::string family;

  void bind(CLI::App* sub) {
    auto* mo = sub->add_option("--m", m, "RDM order");
    auto* fo = sub->add_option("--family", family, "Hamiltonian family JSON file");
    mo->excludes(fo);
  }

  void put(json& config) const {
    if (family.empty()) {
      config["m"] = m;
    } else {
      config["family"] = family;
    }
  }

  [[nodiscard]] JacobianMatrix jacobian(const PureState& state) const {
    if (family.empty()) {
      if (m < 1) throw InvalidArgument("give --m (RDM order) or --family");
      const ProjectorSet p = build_projectors(state.q, state.n, m, state.statistics);
      return build_jacobian(state.amplitudes, p);
    }
    const HamiltonianFamily fam = io::family_from_json(io::read_json_file(family));
    return family_jacobian(state.amplitudes, fam);
  }
};

void require_feasible(const JacobianMatrix& jac, bool allow) {
  if (allow || jac.family_names.size() > 0 || jac.rows() <= jac.cols()) return;
  throw InvalidArgument("infeasible shape: 2N = " + std::to_string(jac.cols()) + " < N_A^2 = " +
                        std::to_string(jac.rows()) +
                        "; the cokernel is forced to dimension >= " +
                        std::to_string(jac.rows() - jac.cols()) +
                        " (need 2N >= N_A^2, or pass --allow-infeasible)");
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct BasisCmd {
  int q = 0, k = 0;
  std::string stat;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--q", q, "number of modes")->required();
    s->add_option("--k", k, "number of particles")->required();
    s->add_option("--stat", stat, "bose or fermi")->required();
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    const Basis b = enumerate_basis(q, k, parse_statistics(stat));
    json config = {{"q", q}, {"k", k}, {"stat", stat}};
    json payload = {{"size", b.size()}, {"basis", io::to_json(b)}};
    emit(io, sink, "basis", config, payload, std::nullopt, std::nullopt, true);
    return kExitOk;
  }
};

struct ProjectorsCmd {
  int q = 0, n = 0, m = 0;
  std::string stat, trace = "unit";
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--q", q)->required();
    s->add_option("--n", n)->required();
    s->add_option("--m", m)->required();
    s->add_option("--stat", stat)->required();
    s->add_option("--trace", trace, "unit or binomial normalization")
        ->check(CLI::IsMember({"unit", "binomial"}))
        ->capture_default_str();
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    const TraceConvention tc = trace == "unit" ? TraceConvention::Unit : TraceConvention::Binomial;
    const ProjectorSet p =
        build_projectors(q, n, m, parse_statistics(stat), SigmaConvention::TraceNormalized, tc);
    const double expected = tc == TraceConvention::Unit ? 1.0 : static_cast<double>(binomial(n, m));
    const double defect =
        (p.diagonal_sum() - expected * RealMatrix::Identity(p.dim(), p.dim())).cwiseAbs().maxCoeff();
    const bool passed = defect <= 1e-12 * expected;
    json config = {{"q", q}, {"n", n}, {"m", m}, {"stat", stat}, {"trace", trace}};
    json payload = io::to_json(p);
    payload["trace_identity_defect"] = defect;
    emit(io, sink, "projectors", config, payload, std::nullopt, std::nullopt, passed);
    return passed ? kExitOk : kExitCheckFailed;
  }
};

struct RdmCmd {
  std::string state, route = "unfold";
  int m = 0;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--state", state, "state JSON file")->required();
    s->add_option("--m", m, "RDM order")->required();
    s->add_option("--route", route, "unfold or projectors")
        ->check(CLI::IsMember({"unfold", "projectors"}))
        ->capture_default_str();
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    const PureState psi = load_state(state);
    const ProjectorSet p = build_projectors(psi.q, psi.n, m, psi.statistics);
    const ReducedDensityMatrix rho = route == "unfold" ? compute_rdm(psi.amplitudes, p)
                                                       : compute_rdm_via_projectors(psi.amplitudes, p);
    const RdmDiagnostics d = diagnose(rho, 1.0);
    json config = {{"state", state}, {"m", m}, {"route", route}};
    json payload = io::to_json(rho);
    payload["diagnostics"] = {{"hermiticity_defect", d.hermiticity_defect},
                              {"min_eigenvalue", d.min_eigenvalue},
                              {"trace_error", d.trace_error},
                              {"ok", d.ok(1e-10)}};
    emit(io, sink, "rdm", config, payload, std::nullopt, std::nullopt, d.ok(1e-10));
    return d.ok(1e-10) ? kExitOk : kExitCheckFailed;
  }
};

struct DiagCmd {
  std::string hamiltonian, stat = "bose", state_out, hamiltonian_out;
  int q = 0, n = 0, m = 0, index = -1;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  Sink sink;

  void bind(CLI::App* s) {
    auto* h = s->add_option("--hamiltonian", hamiltonian, "m-particle Hamiltonian JSON file");
    auto* qo = s->add_option("--q", q, "modes (random GUE Hamiltonian)");
    s->add_option("--n", n, "particles (random GUE Hamiltonian)");
    s->add_option("--m", m, "interaction order (random GUE Hamiltonian)");
    s->add_option("--stat", stat)->capture_default_str();
    seed_opt = s->add_option("--seed", seed, "seed for the random Hamiltonian");
    h->excludes(qo);
    s->add_option("--index", index, "eigenstate to write with --state-out");
    s->add_option("--state-out", state_out, "write eigenstate --index as a state file");
    s->add_option("--hamiltonian-out", hamiltonian_out, "write the m-particle Hamiltonian used");
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    io::HamiltonianFile file;
    json config;
    std::optional<std::uint64_t> used_seed;
    if (!hamiltonian.empty()) {
      file = io::hamiltonian_from_json(io::read_json_file(hamiltonian));
      config = {{"hamiltonian", hamiltonian}};
    } else {
      if (q < 1 || n < 1 || m < 1) {
        throw InvalidArgument("give --hamiltonian, or --q, --n, --m and --seed for a random one");
      }
      if (seed_opt->count() == 0) throw InvalidArgument("a random Hamiltonian requires --seed");
      file.q = q;
      file.n = n;
      file.statistics = parse_statistics(stat);
      file.hamiltonian.m = m;
      const int na = static_cast<int>(space_dimension(q, m, file.statistics));
      Engine engine(substream_seed(seed, kDiagStream, 0));
      file.hamiltonian.matrix = random_hermitian(na, engine);
      config = {{"q", q}, {"n", n}, {"m", m}, {"stat", stat}, {"seed", seed}};
      used_seed = seed;
    }
    if (index >= 0) config["index"] = index;

    const ProjectorSet p = build_projectors(file.q, file.n, file.hamiltonian.m, file.statistics);
    const HermitianEigen eig = hermitian_eig(assemble_hamiltonian(file.hamiltonian, p));
    json energies = json::array();
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) energies.push_back(eig.values(k));
    json payload = {{"hilbert_dim", p.dim()}, {"energies", energies}};

    if (!state_out.empty()) {
      if (index < 0 || index >= p.dim()) {
        throw InvalidArgument("--state-out needs --index in [0, " + std::to_string(p.dim()) + ")");
      }
      PureState psi{file.q, file.n, file.statistics, eig.vectors.col(index)};
      io::write_text_file(state_out, io::dump(io::to_json(psi)));
    }
    if (!hamiltonian_out.empty()) {
      io::write_text_file(hamiltonian_out, io::dump(io::to_json(file, TraceConvention::Unit)));
    }
    emit(io, sink, "diag", config, payload, used_seed, std::nullopt, true);
    return kExitOk;
  }
};

struct JacobianCmd {
  std::string state;
  OperatorChoice ops;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--state", state)->required();
    ops.bind(s);
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    const PureState psi = load_state(state);
    json config = {{"state", state}};
    ops.put(config);
    emit(io, sink, "jacobian", config, io::to_json(ops.jacobian(psi)), std::nullopt, std::nullopt,
         true);
    return kExitOk;
  }
};

struct CokernelCmd {
  std::string state, hamiltonian;
  OperatorChoice ops;
  bool allow_infeasible = false;
  Tolerance tol;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--state", state)->required();
    ops.bind(s);
    s->add_option("--hamiltonian", hamiltonian,
                  "m-particle Hamiltonian; reports alignment of the cokernel with H - E 1");
    s->add_flag("--allow-infeasible", allow_infeasible, "accept 2N < N_A^2 shapes");
    add_tolerance(s, tol);
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    const PureState psi = load_state(state);
    const TolerancePolicy policy = tol.policy();
    const JacobianMatrix jac = ops.jacobian(psi);
    require_feasible(jac, allow_infeasible);
    const CokernelReport ck = cokernel(jac, policy);

    json config = {{"state", state}, {"allow-infeasible", allow_infeasible}};
    ops.put(config);
    put_tolerance(config, tol);
    json payload = {{"cokernel", io::to_json(ck)}};

    if (ops.family.empty() && ck.dim > 0) {
      const ProjectorSet p = build_projectors(psi.q, psi.n, ops.m, psi.statistics);
      std::optional<ComplexMatrix> reference;
      if (!hamiltonian.empty()) {
        config["hamiltonian"] = hamiltonian;
        const io::HamiltonianFile h = io::hamiltonian_from_json(io::read_json_file(hamiltonian));
        if (h.q != psi.q || h.n != psi.n || h.statistics != psi.statistics || h.hamiltonian.m != ops.m) {
          throw InvalidArgument("Hamiltonian header does not match the state and --m");
        }
        const double e = energy(psi.amplitudes, h.hamiltonian, p);
        reference = h.hamiltonian.matrix - e * ComplexMatrix::Identity(p.dim_m(), p.dim_m());
        payload["energy"] = e;
      }
      payload["eta"] = io::to_json(recover_eta(psi.amplitudes, p, policy, reference));
    }
    emit(io, sink, "cokernel", config, payload, std::nullopt, policy, true);
    return kExitOk;
  }
};

struct MinorsCmd {
  std::string state;
  OperatorChoice ops;
  int samples = 100;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::uint64_t cap = 10000;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--state", state)->required();
    ops.bind(s);
    s->add_option("--samples", samples, "random column subsets")->capture_default_str();
    s->add_option("--seed", seed)->required();
    s->add_flag("--exhaustive", exhaustive, "enumerate every column subset instead of sampling");
    s->add_option("--cap", cap, "refuse exhaustive runs above this many minors")->capture_default_str();
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    const PureState psi = load_state(state);
    const JacobianMatrix jac = ops.jacobian(psi);
    const MinorSampleReport rep =
        exhaustive ? exhaustive_minors(jac.matrix, cap) : sample_minors(jac.matrix, samples, seed);
    json config = {{"state", state}, {"samples", samples}, {"seed", seed},
                   {"exhaustive", exhaustive}, {"cap", cap}};
    ops.put(config);
    emit(io, sink, "minors", config, io::to_json(rep), seed, std::nullopt, true);
    return kExitOk;
  }
};

struct PluckerCmd {
  std::string state;
  int q = 0, n = 0, m = 0, samples = 1;
  std::uint64_t seed = 0;
  double threshold = 1e-12;
  Tolerance tol;
  CLI::Option* seed_opt = nullptr;
  Sink sink;

  void bind(CLI::App* s) {
    auto* so = s->add_option("--state", state, "check a given fermionic state");
    auto* qo = s->add_option("--q", q, "modes (random Slater states)");
    s->add_option("--n", n, "particles (random Slater states)");
    so->excludes(qo);
    seed_opt = s->add_option("--seed", seed);
    s->add_option("--samples", samples)->capture_default_str();
    s->add_option("--m", m, "also certify the m-RDM cokernel of each Slater state");
    s->add_option("--threshold", threshold, "maximum Plücker residual")->capture_default_str();
    add_tolerance(s, tol);
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    if (!state.empty()) {
      const PureState psi = load_state(state);
      if (psi.statistics != Statistics::Fermi) throw InvalidArgument("Plücker relations need a fermionic state");
      json config = {{"state", state}};
      emit(io, sink, "plucker", config, {{"residual", plucker_residual(psi)}}, std::nullopt,
           std::nullopt, true);
      return kExitOk;
    }
    if (q < 1 || n < 1) throw InvalidArgument("give --state, or --q, --n and --seed");
    if (seed_opt->count() == 0) throw InvalidArgument("random Slater states require --seed");
    if (samples < 1) throw InvalidArgument("--samples must be >= 1");
    const TolerancePolicy policy = tol.policy();
    std::optional<ProjectorSet> p;
    if (m > 0) p = build_projectors(q, n, m, Statistics::Fermi);

    bool passed = true;
    json records = json::array();
    for (int s = 0; s < samples; ++s) {
      Engine engine(substream_seed(seed, kPluckerStream, static_cast<std::uint64_t>(s)));
      const ComplexMatrix phi = random_orthonormal_orbitals(q, n, engine);
      const PureState psi = slater_embed(phi);
      json rec = {{"sample", s},
                  {"orthogonality_residual", orbital_orthogonality_residual(phi)},
                  {"plucker_residual", plucker_residual(psi)}};
      passed = passed && rec["plucker_residual"].get<double>() <= threshold;
      if (p) {
        const CokernelReport ck = cokernel(build_jacobian(psi.amplitudes, *p), policy);
        rec["coker_dim"] = ck.dim;
        passed = passed && ck.dim >= 1;
        if (m == 1 && ck.dim >= 1) {
          const MParticleHamiltonian h{1, slater_one_body_hamiltonian(phi)};
          const double e = energy(psi.amplitudes, h, *p);
          const EtaRecovery eta = recover_eta(psi.amplitudes, *p, policy,
                                              h.matrix - e * ComplexMatrix::Identity(q, q));
          rec["energy"] = e;
          rec["eta_alignment"] = *eta.alignment;
          passed = passed && *eta.alignment >= 1.0 - 1e-8;
        }
      }
      records.push_back(std::move(rec));
    }
    json config = {{"q", q}, {"n", n}, {"m", m}, {"samples", samples}, {"seed", seed},
                   {"threshold", threshold}};
    put_tolerance(config, tol);
    emit(io, sink, "plucker", config, {{"records", records}}, seed, policy, passed);
    return passed ? kExitOk : kExitCheckFailed;
  }
};

struct VeroneseCmd {
  std::string state;
  int q = 0, n = 0, samples = 1;
  std::uint64_t seed = 0;
  double threshold = 1e-12;
  Tolerance tol;
  CLI::Option* seed_opt = nullptr;
  Sink sink;

  void bind(CLI::App* s) {
    auto* so = s->add_option("--state", state, "check a given bosonic state");
    auto* qo = s->add_option("--q", q, "modes (random condensates)");
    s->add_option("--n", n, "particles (random condensates)");
    so->excludes(qo);
    seed_opt = s->add_option("--seed", seed);
    s->add_option("--samples", samples)->capture_default_str();
    s->add_option("--threshold", threshold, "maximum Veronese residual")->capture_default_str();
    add_tolerance(s, tol);
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    if (!state.empty()) {
      const PureState psi = load_state(state);
      if (psi.statistics != Statistics::Bose) throw InvalidArgument("Veronese relations need a bosonic state");
      json config = {{"state", state}};
      emit(io, sink, "veronese", config, {{"residual", veronese_residual(psi)}}, std::nullopt,
           std::nullopt, true);
      return kExitOk;
    }
    if (q < 1 || n < 1) throw InvalidArgument("give --state, or --q, --n and --seed");
    if (seed_opt->count() == 0) throw InvalidArgument("random condensates require --seed");
    if (samples < 1) throw InvalidArgument("--samples must be >= 1");
    const TolerancePolicy policy = tol.policy();
    const ProjectorSet p = build_projectors(q, n, 1, Statistics::Bose);
    const int expected = (q - 1) * (q - 1);

    bool passed = true;
    json records = json::array();
    for (int s = 0; s < samples; ++s) {
      Engine engine(substream_seed(seed, kVeroneseStream, static_cast<std::uint64_t>(s)));
      const PureState psi = symmetric_product_embed(random_state(q, engine), n);
      const double residual = veronese_residual(psi);
      const int dim = cokernel(build_jacobian(psi.amplitudes, p), policy).dim;
      passed = passed && residual <= threshold && dim == expected;
      records.push_back({{"sample", s}, {"veronese_residual", residual}, {"coker_dim", dim}});
    }
    json config = {{"q", q}, {"n", n}, {"samples", samples}, {"seed", seed},
                   {"threshold", threshold}};
    put_tolerance(config, tol);
    emit(io, sink, "veronese", config, {{"expected_coker_dim", expected}, {"records", records}},
         seed, policy, passed);
    return passed ? kExitOk : kExitCheckFailed;
  }
};

struct ScanCmd {
  ScanConfig cfg;
  std::string stat = "bose", format = "json";
  Tolerance tol;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--q", cfg.q)->capture_default_str();
    s->add_option("--n", cfg.n)->capture_default_str();
    s->add_option("--m", cfg.m)->capture_default_str();
    s->add_option("--stat", stat)->capture_default_str();
    s->add_option("--trials", cfg.trials, "random Hamiltonians")->capture_default_str();
    s->add_option("--controls", cfg.controls, "random control states")->capture_default_str();
    s->add_option("--seed", cfg.seed)->required();
    s->add_option("--gap-threshold", cfg.gap_threshold, "degeneracy cutoff")->capture_default_str();
    s->add_option("--alignment-threshold", cfg.alignment_threshold)->capture_default_str();
    s->add_option("--threads", cfg.threads, "worker threads (does not change results)")
        ->capture_default_str();
    s->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    add_tolerance(s, tol);
    add_sink(s, sink);
  }

  int run(const Io& io) {
    cfg.statistics = parse_statistics(stat);
    cfg.tolerance = tol.policy();
    const ScanReport rep = eigenstate_scan(cfg);
    json config = {{"q", cfg.q},
                   {"n", cfg.n},
                   {"m", cfg.m},
                   {"stat", stat},
                   {"trials", cfg.trials},
                   {"controls", cfg.controls},
                   {"seed", cfg.seed},
                   {"gap-threshold", cfg.gap_threshold},
                   {"alignment-threshold", cfg.alignment_threshold},
                   {"format", format}};
    put_tolerance(config, tol);
    const bool passed = rep.summary.passed();
    if (format == "json") {
      emit(io, sink, "scan", config, io::to_json(rep), cfg.seed, cfg.tolerance, passed);
    } else {
      std::string text = "# eigenmoduli " + std::string(kVersion) + " scan " + config.dump() + "\n" +
                         io::scan_to_csv(rep);
      if (sink.path.empty()) {
        io.out << text;
      } else {
        io::write_text_file(sink.path, text);
      }
    }
    if (!passed) {
      io.err << "scan: " << rep.summary.eigen_failures << " eigenstate and "
             << rep.summary.control_failures << " control records failed the cokernel check\n";
    }
    return passed ? kExitOk : kExitCheckFailed;
  }
};

struct StrataCmd {
  int q = 0, n = 0, r = 0, samples = 5;
  std::uint64_t seed = 0;
  Tolerance tol;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--q", q)->required();
    s->add_option("--n", n)->required();
    s->add_option("--r", r, "product rank; omit to sweep 1..min(q, n)");
    s->add_option("--seed", seed)->required();
    s->add_option("--samples", samples)->capture_default_str();
    add_tolerance(s, tol);
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    const TolerancePolicy policy = tol.policy();
    const int lo = r > 0 ? r : 1;
    const int hi = r > 0 ? r : std::min(q, n);
    bool passed = true;
    bool monotone = true;
    int previous_max = -1;
    json strata = json::array();
    for (int rank = lo; rank <= hi; ++rank) {
      const StrataReport rep = strata_probe(q, n, rank, seed, samples, policy);
      passed = passed && rep.matches_expected();
      int lo_dim = rep.samples.front().cokernel_dim;
      int hi_dim = lo_dim;
      for (const auto& s : rep.samples) {
        lo_dim = std::min(lo_dim, s.cokernel_dim);
        hi_dim = std::max(hi_dim, s.cokernel_dim);
      }
      if (previous_max >= 0 && hi_dim > previous_max) monotone = false;
      previous_max = hi_dim;
      json entry = io::to_json(rep);
      entry["min_coker_dim"] = lo_dim;
      entry["max_coker_dim"] = hi_dim;
      strata.push_back(std::move(entry));
    }
    json config = {{"q", q}, {"n", n}, {"r", r}, {"seed", seed}, {"samples", samples}};
    put_tolerance(config, tol);
    emit(io, sink, "strata", config, {{"strata", strata}, {"monotone_non_increasing", monotone}},
         seed, policy, passed);
    return passed ? kExitOk : kExitCheckFailed;
  }
};

struct HubbardCmd {
  HubbardScanConfig cfg;
  std::string boundary = "periodic";
  Tolerance tol;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--sites", cfg.spec.sites)->capture_default_str();
    s->add_option("--electrons", cfg.spec.electrons)->capture_default_str();
    s->add_option("--boundary", boundary)->capture_default_str();
    s->add_option("--t", cfg.spec.t, "hopping amplitude")->capture_default_str();
    s->add_option("--U", cfg.interactions, "on-site interaction values")->capture_default_str();
    s->add_option("--seed", cfg.seed)->required();
    s->add_option("--samples", cfg.minor_samples, "3x3 minors per eigenstate")->capture_default_str();
    s->add_option("--controls", cfg.controls, "random real control states")->capture_default_str();
    s->add_option("--minor-threshold", cfg.minor_threshold)->capture_default_str();
    add_tolerance(s, tol);
    add_sink(s, sink);
  }

  int run(const Io& io) {
    cfg.spec.boundary = parse_boundary(boundary);
    cfg.tolerance = tol.policy();
    const HubbardScanReport rep = hubbard_scan(cfg);
    json config = {{"sites", cfg.spec.sites},
                   {"electrons", cfg.spec.electrons},
                   {"boundary", boundary},
                   {"t", cfg.spec.t},
                   {"U", cfg.interactions},
                   {"seed", cfg.seed},
                   {"samples", cfg.minor_samples},
                   {"controls", cfg.controls},
                   {"minor-threshold", cfg.minor_threshold}};
    put_tolerance(config, tol);
    emit(io, sink, "hubbard", config, io::to_json(rep), cfg.seed, cfg.tolerance, rep.passed());
    return rep.passed() ? kExitOk : kExitCheckFailed;
  }
};

struct BipartiteCmd {
  int na = 0, nb = 0, rank = 0;
  std::uint64_t seed = 0;
  bool commutant = false;
  Tolerance tol;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_option("--na", na, "dimension of subsystem A")->required();
    s->add_option("--nb", nb, "dimension of subsystem B")->required();
    s->add_option("--rank", rank, "planted Schmidt rank; omit to sweep 1..N_A");
    s->add_option("--seed", seed)->required();
    s->add_flag("--commutant", commutant, "also compute the commutant dimension (N_A N_B <= 64)");
    add_tolerance(s, tol);
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    const TolerancePolicy policy = tol.policy();
    const int lo = rank > 0 ? rank : 1;
    const int hi = rank > 0 ? rank : na;
    bool passed = true;
    json records = json::array();
    for (int r = lo; r <= hi; ++r) {
      Engine engine(substream_seed(seed, kBipartiteStream, static_cast<std::uint64_t>(r)));
      const ComplexMatrix psi = planted_rank_state(na, nb, r, engine);
      const int dim = cokernel(bipartite_jacobian(psi), policy).dim;
      const int expected = (na - r) * (na - r);
      passed = passed && dim == expected;
      records.push_back({{"rank", r}, {"coker_dim", dim}, {"expected", expected},
                         {"schmidt_rank", numeric_rank(psi, policy)}});
    }
    json payload = {{"records", records}};
    if (commutant) {
      const int c = commutant_dimension(na, nb);
      payload["commutant_dim"] = c;
      payload["expected_commutant_dim"] = nb * nb;
      passed = passed && c == nb * nb;
    }
    json config = {{"na", na}, {"nb", nb}, {"rank", rank}, {"seed", seed},
                   {"commutant", commutant}};
    put_tolerance(config, tol);
    emit(io, sink, "bipartite", config, payload, seed, policy, passed);
    return passed ? kExitOk : kExitCheckFailed;
  }
};

struct SelftestCmd {
  bool corrupt_sigma = false;
  Sink sink;

  void bind(CLI::App* s) {
    s->add_flag("--corrupt-sigma", corrupt_sigma,
                "debug: use the reciprocal bosonic symmetry factor (must fail)");
    add_sink(s, sink);
  }

  int run(const Io& io) const {
    const std::vector<SelftestRow> rows = selftest(corrupt_sigma);
    bool passed = true;
    json table = json::array();
    std::ostringstream text;
    text << std::left << std::setw(34) << "check" << std::setw(14) << "value" << std::setw(12)
         << "bound" << "result\n";
    for (const auto& r : rows) {
      passed = passed && r.passed;
      table.push_back({{"check", r.name}, {"value", r.value}, {"bound", r.bound}, {"passed", r.passed}});
      // Pad by code points; setw counts bytes and labels may hold non-ASCII letters.
      const auto width = std::count_if(r.name.begin(), r.name.end(),
                                       [](char ch) { return (static_cast<unsigned char>(ch) & 0xC0) != 0x80; });
      text << r.name << std::string(width < 34 ? 34 - width : 1, ' ') << std::left << std::setw(14)
           << std::scientific
           << std::setprecision(3) << r.value << std::setw(12) << std::setprecision(1) << r.bound
           << (r.passed ? "PASS" : "FAIL") << "\n";
      if (!r.passed) break;
    }
    io.out << text.str();
    if (!sink.path.empty()) {
      json config = {{"corrupt-sigma", corrupt_sigma}};
      json report = io::make_report("selftest", config, {{"checks", table}}, std::nullopt, std::nullopt);
      report["invocation"] = invocation("selftest", config);
      report["checks_passed"] = passed;
      io::write_text_file(sink.path, io::dump(report));
    }
    return passed ? kExitOk : kExitCheckFailed;
  }
};

}  // namespace

std::vector<std::string> invocation(const std::string& command, const json& config) {
  std::vector<std::string> args{command};
  for (const auto& [key, value] : config.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (value.is_array()) {
      args.push_back("--" + key);
      for (const auto& v : value) args.push_back(number_text(v));
    } else if (value.is_string()) {
      args.push_back("--" + key);
      args.push_back(value.get<std::string>());
    } else if (!value.is_null()) {
      args.push_back("--" + key);
      args.push_back(number_text(value));
    }
  }
  return args;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"eigenmoduli: reduced density matrices, Jacobian cokernels and eigenstate geometry"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  BasisCmd basis;
  ProjectorsCmd projectors;
  RdmCmd rdm;
  DiagCmd diag;
  JacobianCmd jacobian;
  CokernelCmd coker;
  MinorsCmd minors;
  PluckerCmd plucker;
  VeroneseCmd veronese;
  ScanCmd scan;
  StrataCmd strata;
  HubbardCmd hubbard;
  BipartiteCmd bipartite;
  SelftestCmd self;

  auto* s_basis = app.add_subcommand("basis", "enumerate an occupation-number basis");
  auto* s_proj = app.add_subcommand("projectors", "build the projectors P_{I,J}");
  auto* s_rdm = app.add_subcommand("rdm", "reduced density matrix of a state");
  auto* s_diag = app.add_subcommand("diag", "exact diagonalization of an m-particle Hamiltonian");
  auto* s_jac = app.add_subcommand("jacobian", "Jacobian of the state -> RDM map or of a family");
  auto* s_coker = app.add_subcommand("cokernel", "cokernel of the Jacobian and recovered eta");
  auto* s_minors = app.add_subcommand("minors", "Hadamard-normalized maximal minors");
  auto* s_plucker = app.add_subcommand("plucker", "Plücker relations of Slater states");
  auto* s_veronese = app.add_subcommand("veronese", "Veronese relations of bosonic condensates");
  auto* s_scan = app.add_subcommand("scan", "cokernel scan over random m-particle Hamiltonians");
  auto* s_strata = app.add_subcommand("strata", "cokernel dimension of product-rank-r states");
  auto* s_hubbard = app.add_subcommand("hubbard", "rank and minors of the Hubbard family Jacobian");
  auto* s_bip = app.add_subcommand("bipartite", "bipartite warm-up: planted-rank cokernels");
  auto* s_self = app.add_subcommand("selftest", "fixed-seed invariant suite");

  basis.bind(s_basis);
  projectors.bind(s_proj);
  rdm.bind(s_rdm);
  diag.bind(s_diag);
  jacobian.bind(s_jac);
  coker.bind(s_coker);
  minors.bind(s_minors);
  plucker.bind(s_plucker);
  veronese.bind(s_veronese);
  scan.bind(s_scan);
  strata.bind(s_strata);
  hubbard.bind(s_hubbard);
  bipartite.bind(s_bip);
  self.bind(s_self);

  const Io io{out, err};
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (s_basis->parsed()) return basis.run(io);
    if (s_proj->parsed()) return projectors.run(io);
    if (s_rdm->parsed()) return rdm.run(io);
    if (s_diag->parsed()) return diag.run(io);
    if (s_jac->parsed()) return jacobian.run(io);
    if (s_coker->parsed()) return coker.run(io);
    if (s_minors->parsed()) return minors.run(io);
    if (s_plucker->parsed()) return plucker.run(io);
    if (s_veronese->parsed()) return veronese.run(io);
    if (s_scan->parsed()) return scan.run(io);
    if (s_strata->parsed()) return strata.run(io);
    if (s_hubbard->parsed()) return hubbard.run(io);
    if (s_bip->parsed()) return bipartite.run(io);
    if (s_self->parsed()) return self.run(io);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace emod::cli
