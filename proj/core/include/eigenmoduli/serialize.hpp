// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file serialize.hpp
 * @brief JSON and CSV forms of bases, states, operators and reports.
 *
 * Complex numbers are [re, im] pairs; matrices are arrays of rows in the
 * canonical lexicographic basis order. Parsers throw FormatError naming the
 * JSON path of the first offending value.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "eigenmoduli/fock_basis.hpp"
#include "eigenmoduli/moduli.hpp"
#include "eigenmoduli/numkernel.hpp"
#include "eigenmoduli/operators.hpp"
#include "eigenmoduli/rdm_map.hpp"
#include "eigenmoduli/scan.hpp"

namespace emod::io {

using nlohmann::json;

[[nodiscard]] json to_json(const IndexSet& set);
[[nodiscard]] json to_json(const Basis& basis);
[[nodiscard]] json complex_to_json(cplx z);
[[nodiscard]] json matrix_to_json(const ComplexMatrix& m);
[[nodiscard]] json matrix_to_json(const RealMatrix& m);
[[nodiscard]] json vector_to_json(const ComplexVector& v);

[[nodiscard]] cplx complex_from_json(const json& j, const std::string& path);
[[nodiscard]] ComplexVector vector_from_json(const json& j, const std::string& path);
[[nodiscard]] ComplexMatrix matrix_from_json(const json& j, const std::string& path);

/// {"q","n","statistics","amplitudes":[[re,im],...]}
[[nodiscard]] json to_json(const PureState& state);
/// Parses and checks shape; norm is left to PureState::validate.
[[nodiscard]] PureState state_from_json(const json& j);

/// An m-particle Hamiltonian file with its header.
struct HamiltonianFile {
  int q = 0;
  int n = 0;
  Statistics statistics = Statistics::Bose;
  MParticleHamiltonian hamiltonian;
};

[[nodiscard]] json to_json(const HamiltonianFile& file, TraceConvention convention);
[[nodiscard]] HamiltonianFile hamiltonian_from_json(const json& j);

/// {"q","n","statistics","operators":[{"name","matrix"}],"parameters"?}
[[nodiscard]] json family_to_json(const HamiltonianFamily& family, int q, int n,
                                  Statistics statistics);
[[nodiscard]] HamiltonianFamily family_from_json(const json& j);

[[nodiscard]] json to_json(const ProjectorSet& projectors);
[[nodiscard]] json to_json(const ReducedDensityMatrix& rho);
[[nodiscard]] json to_json(const JacobianMatrix& jacobian);
[[nodiscard]] json to_json(const CokernelReport& report, bool include_basis = true);
[[nodiscard]] json to_json(const MinorSampleReport& report);
[[nodiscard]] json to_json(const EtaRecovery& recovery);
[[nodiscard]] json to_json(const StrataReport& report);
[[nodiscard]] json to_json(const TolerancePolicy& policy);
[[nodiscard]] json to_json(const ScanConfig& config);
[[nodiscard]] json to_json(const ScanReport& report);
[[nodiscard]] json to_json(const HubbardScanConfig& config);
[[nodiscard]] json to_json(const HubbardScanReport& report);

/// One line per eigenstate: trial,index,energy,gap,coker_dim,excess,eta_alignment
[[nodiscard]] std::string scan_to_csv(const ScanReport& report);

/**
 * Common envelope for every report: command, config, seed, tolerance,
 * library version and symmetry-factor convention, followed by the payload.
 */
[[nodiscard]] json make_report(const std::string& command, const json& config,
                               const json& payload, std::optional<std::uint64_t> seed,
                               const std::optional<TolerancePolicy>& tolerance);

/// Deterministic text form (2-space indent, trailing newline).
[[nodiscard]] std::string dump(const json& j);

[[nodiscard]] json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace emod::io
