// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigenmoduli/serialize.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "eigenmoduli/error.hpp"
#include "eigenmoduli/version.hpp"

namespace emod::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw FormatError((path.empty() ? std::string("/") : path) + ": " + what);
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing field");
  return *it;
}

int int_member(const json& j, const std::string& key, const std::string& path) {
  const json& v = member(j, key, path);
  if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
  return v.get<int>();
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "non-finite number");
  return v;
}

Statistics statistics_member(const json& j, const std::string& path) {
  const json& v = member(j, "statistics", path);
  if (!v.is_string()) fail(path + "/statistics", "expected \"bose\" or \"fermi\"");
  try {
    return parse_statistics(v.get<std::string>());
  } catch (const InvalidArgument& e) {
    fail(path + "/statistics", e.what());
  }
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json singular_values_json(const std::vector<double>& s) { return json(s); }

}  // namespace

json to_json(const IndexSet& set) { return json(set.labels()); }

json to_json(const Basis& basis) {
  json sets = json::array();
  for (const auto& s : basis.sets()) sets.push_back(to_json(s));
  return {{"q", basis.q()},
          {"k", basis.k()},
          {"statistics", std::string(to_string(basis.statistics()))},
          {"sets", std::move(sets)}};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const RealMatrix& m) { return matrix_to_json(ComplexMatrix(m.cast<cplx>())); }

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

cplx complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) fail(path, "expected a [re, im] pair");
  return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

ComplexVector vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of [re, im] pairs");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], path + "/" + std::to_string(i));
  }
  return v;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) fail(path + "/0", "expected a row array");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) {
      fail(rp, "expected a row of " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], rp + "/" + std::to_string(c));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// States and operators
// ---------------------------------------------------------------------------

json to_json(const PureState& state) {
  return {{"q", state.q},
          {"n", state.n},
          {"statistics", std::string(to_string(state.statistics))},
          {"amplitudes", vector_to_json(state.amplitudes)}};
}

PureState state_from_json(const json& j) {
  PureState s;
  s.q = int_member(j, "q", "");
  s.n = int_member(j, "n", "");
  s.statistics = statistics_member(j, "");
  if (s.q < 1) fail("/q", "must be >= 1");
  if (s.n < 0) fail("/n", "must be >= 0");
  if (s.statistics == Statistics::Fermi && s.n > s.q) fail("/n", "exceeds q for fermions");
  s.amplitudes = vector_from_json(member(j, "amplitudes", ""), "/amplitudes");
  const auto expected = space_dimension(s.q, s.n, s.statistics);
  if (static_cast<std::uint64_t>(s.amplitudes.size()) != expected) {
    fail("/amplitudes", "expected " + std::to_string(expected) + " amplitudes, got " +
                            std::to_string(s.amplitudes.size()));
  }
  return s;
}

json to_json(const HamiltonianFile& file, TraceConvention convention) {
  return {{"q", file.q},
          {"n", file.n},
          {"m", file.hamiltonian.m},
          {"statistics", std::string(to_string(file.statistics))},
          {"normalization", std::string(to_string(convention))},
          {"matrix", matrix_to_json(file.hamiltonian.matrix)}};
}

HamiltonianFile hamiltonian_from_json(const json& j) {
  HamiltonianFile f;
  f.q = int_member(j, "q", "");
  f.n = int_member(j, "n", "");
  f.hamiltonian.m = int_member(j, "m", "");
  f.statistics = statistics_member(j, "");
  if (f.q < 1) fail("/q", "must be >= 1");
  if (f.hamiltonian.m < 1 || f.hamiltonian.m > f.n) fail("/m", "need 1 <= m <= n");
  f.hamiltonian.matrix = matrix_from_json(member(j, "matrix", ""), "/matrix");
  const auto na = space_dimension(f.q, f.hamiltonian.m, f.statistics);
  if (static_cast<std::uint64_t>(f.hamiltonian.matrix.rows()) != na ||
      f.hamiltonian.matrix.rows() != f.hamiltonian.matrix.cols()) {
    fail("/matrix", "expected a " + std::to_string(na) + "x" + std::to_string(na) + " matrix");
  }
  return f;
}

json family_to_json(const HamiltonianFamily& family, int q, int n, Statistics statistics) {
  json ops = json::array();
  for (int a = 0; a < family.size(); ++a) {
    ops.push_back({{"name", family.names[static_cast<std::size_t>(a)]},
                   {"matrix", matrix_to_json(family.operators[static_cast<std::size_t>(a)])}});
  }
  json out = {{"q", q},
              {"n", n},
              {"statistics", std::string(to_string(statistics))},
              {"operators", std::move(ops)}};
  if (family.parameters) out["parameters"] = *family.parameters;
  return out;
}

HamiltonianFamily family_from_json(const json& j) {
  HamiltonianFamily f;
  const json& ops = member(j, "operators", "");
  if (!ops.is_array() || ops.empty()) fail("/operators", "expected a non-empty array");
  for (std::size_t a = 0; a < ops.size(); ++a) {
    const std::string p = "/operators/" + std::to_string(a);
    const json& name = member(ops[a], "name", p);
    if (!name.is_string()) fail(p + "/name", "expected a string");
    f.names.push_back(name.get<std::string>());
    f.operators.push_back(matrix_from_json(member(ops[a], "matrix", p), p + "/matrix"));
  }
  if (auto it = j.find("parameters"); it != j.end()) {
    if (!it->is_array()) fail("/parameters", "expected an array of reals");
    std::vector<double> params;
    for (std::size_t i = 0; i < it->size(); ++i) {
      params.push_back(number((*it)[i], "/parameters/" + std::to_string(i)));
    }
    f.parameters = std::move(params);
  }
  return f;
}

json to_json(const ProjectorSet& p) {
  json entries = json::array();
  for (int I = 0; I < p.dim_m(); ++I) {
    for (int J = 0; J < p.dim_m(); ++J) {
      json triplets = json::array();
      for (const auto& e : p.entries(I, J)) triplets.push_back({e.alpha, e.beta, e.value});
      entries.push_back({{"I", to_json(p.basis_m().at(I))},
                         {"J", to_json(p.basis_m().at(J))},
                         {"triplets", std::move(triplets)}});
    }
  }
  return {{"q", p.q()},
          {"n", p.n()},
          {"m", p.m()},
          {"statistics", std::string(to_string(p.statistics()))},
          {"normalization", p.normalization()},
          {"trace_convention", std::string(to_string(p.trace_convention()))},
          {"sigma_convention", std::string(to_string(p.sigma_convention()))},
          {"basis_n", to_json(p.basis_n())},
          {"basis_m", to_json(p.basis_m())},
          {"entries", std::move(entries)}};
}

json to_json(const ReducedDensityMatrix& rho) {
  return {{"m", rho.m},
          {"trace_convention", std::string(to_string(rho.convention))},
          {"trace", complex_to_json(rho.trace())},
          {"matrix", matrix_to_json(rho.matrix)}};
}

json to_json(const JacobianMatrix& jac) {
  json out = {{"rows", jac.rows()},
              {"cols", jac.cols()},
              {"real_reduced", jac.real_reduced},
              {"matrix", matrix_to_json(jac.matrix)}};
  if (jac.shape) {
    out["shape"] = {{"q", jac.shape->q},
                    {"n", jac.shape->n},
                    {"m", jac.shape->m},
                    {"statistics", std::string(to_string(jac.shape->statistics))}};
  }
  if (!jac.family_names.empty()) out["family"] = jac.family_names;
  return out;
}

json to_json(const TolerancePolicy& policy) {
  return {{"relative", policy.relative}, {"absolute_floor", policy.absolute_floor}};
}

json to_json(const CokernelReport& r, bool include_basis) {
  json out = {{"dim", r.dim},
              {"excess", r.excess},
              {"rows", r.rows},
              {"cols", r.cols},
              {"feasible", r.rows <= r.cols},
              {"tolerance", to_json(r.tolerance)},
              {"max_residual", r.max_residual},
              {"singular_values", singular_values_json(r.singular_values)}};
  if (include_basis) {
    json basis = json::array();
    for (Eigen::Index k = 0; k < r.basis.cols(); ++k) basis.push_back(vector_to_json(r.basis.col(k)));
    out["basis"] = std::move(basis);
  }
  return out;
}

json to_json(const MinorSampleReport& r) {
  return {{"sample_count", r.sample_count},
          {"exhaustive", r.exhaustive},
          {"seed", r.seed},
          {"max", r.max},
          {"median", r.median},
          {"normalized_abs_dets", r.normalized_abs_dets}};
}

json to_json(const EtaRecovery& r) {
  json out = {{"cokernel_dim", r.cokernel_dim},
              {"hermiticity_defect", r.hermiticity_defect},
              {"right_residual", r.right_residual},
              {"left_residual", r.left_residual},
              {"verified", r.verified()},
              {"eta", matrix_to_json(r.eta)}};
  out["alignment"] = r.alignment ? json(*r.alignment) : json(nullptr);
  return out;
}

json to_json(const StrataReport& r) {
  json samples = json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"multiplicities", s.multiplicities}, {"coker_dim", s.cokernel_dim}});
  }
  return {{"q", r.q},
          {"n", r.n},
          {"r", r.r},
          {"seed", r.seed},
          {"expected", r.expected ? json(*r.expected) : json(nullptr)},
          {"matches_expected", r.matches_expected()},
          {"samples", std::move(samples)}};
}

json to_json(const ScanConfig& c) {
  return {{"q", c.q},
          {"n", c.n},
          {"m", c.m},
          {"statistics", std::string(to_string(c.statistics))},
          {"trials", c.trials},
          {"controls", c.controls},
          {"seed", c.seed},
          {"tolerance", to_json(c.tolerance)},
          {"gap_threshold", c.gap_threshold},
          {"alignment_threshold", c.alignment_threshold}};
}

json to_json(const ScanReport& r) {
  json records = json::array();
  for (const auto& e : r.records) {
    records.push_back({{"trial", e.trial},
                       {"index", e.index},
                       {"energy", e.energy},
                       {"gap_to_nearest", finite_or_null(e.gap)},
                       {"degenerate", e.degenerate},
                       {"coker_dim", e.coker_dim},
                       {"excess", e.excess},
                       {"eta_alignment", e.eta_alignment},
                       {"singular_values", singular_values_json(e.singular_values)}});
  }
  json controls = json::array();
  for (const auto& c : r.controls) {
    controls.push_back({{"index", c.index},
                        {"coker_dim", c.coker_dim},
                        {"excess", c.excess},
                        {"singular_values", singular_values_json(c.singular_values)}});
  }
  return {{"hilbert_dim", r.hilbert_dim},
          {"jacobian_rows", r.jacobian_rows},
          {"jacobian_cols", r.jacobian_cols},
          {"feasible", r.feasible()},
          {"floor_dim", r.floor_dim},
          {"summary",
           {{"eigenstates", r.summary.eigenstates},
            {"degenerate", r.summary.degenerate},
            {"eigen_failures", r.summary.eigen_failures},
            {"control_failures", r.summary.control_failures},
            {"min_alignment", r.summary.min_alignment},
            {"passed", r.summary.passed()}}},
          {"records", std::move(records)},
          {"controls", std::move(controls)}};
}

json to_json(const HubbardScanConfig& c) {
  return {{"sites", c.spec.sites},
          {"electrons", c.spec.electrons},
          {"boundary", std::string(to_string(c.spec.boundary))},
          {"t", c.spec.t},
          {"interactions", c.interactions},
          {"seed", c.seed},
          {"minor_samples", c.minor_samples},
          {"controls", c.controls},
          {"tolerance", to_json(c.tolerance)},
          {"minor_threshold", c.minor_threshold}};
}

json to_json(const HubbardScanReport& r) {
  json records = json::array();
  for (const auto& e : r.records) {
    records.push_back({{"U", e.U},
                       {"index", e.index},
                       {"energy", e.energy},
                       {"rank", e.rank},
                       {"max_minor", e.max_minor}});
  }
  return {{"hilbert_dim", r.hilbert_dim},
          {"eigen_failures", r.eigen_failures},
          {"control_failures", r.control_failures},
          {"passed", r.passed()},
          {"records", std::move(records)},
          {"control_ranks", r.control_ranks}};
}

std::string scan_to_csv(const ScanReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "trial,index,energy,gap,coker_dim,excess,eta_alignment\n";
  for (const auto& e : r.records) {
    os << e.trial << ',' << e.index << ',' << e.energy << ',';
    if (std::isfinite(e.gap)) os << e.gap;
    os << ',' << e.coker_dim << ',' << e.excess << ',' << e.eta_alignment << '\n';
  }
  return os.str();
}

json make_report(const std::string& command, const json& config, const json& payload,
                 std::optional<std::uint64_t> seed, const std::optional<TolerancePolicy>& tolerance) {
  json out;
  out["command"] = command;
  out["version"] = std::string(kVersion);
  out["sigma_convention"] = std::string(to_string(SigmaConvention::TraceNormalized));
  out["config"] = config;
  out["seed"] = seed ? json(*seed) : json(nullptr);
  out["tolerance"] = tolerance ? to_json(*tolerance) : json(nullptr);
  out["result"] = payload;
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": malformed JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << text;
  if (!out) throw Error(path + ": write failed");
}

}  // namespace emod::io
