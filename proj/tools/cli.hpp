// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line driver. Exit codes: 0 success, 1 usage / input errors,
// 2 a numerical check failed.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace emod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Arguments that reproduce a report from the config it embeds.
[[nodiscard]] std::vector<std::string> invocation(const std::string& command,
                                                  const nlohmann::json& config);

struct SelftestRow {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool passed = false;
};

/// Fixed-seed invariant suite. With corrupt_sigma the projectors use the
/// reciprocal bosonic factor and the trace identity is expected to fail.
[[nodiscard]] std::vector<SelftestRow> selftest(bool corrupt_sigma);

}  // namespace emod::cli
