// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "eigenmoduli/serialize.hpp"

namespace emod {
namespace {

using io::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) { return ::testing::TempDir() + "/emod_cli_" + name; }

TEST(Cli, BasisReport) {
  const Outcome r = call({"basis", "--q", "4", "--k", "2", "--stat", "fermi"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("command"), "basis");
  EXPECT_EQ(j.at("result").at("size"), 6);
  EXPECT_EQ(j.at("result").at("basis").at("sets")[0], json::parse("[1,2]"));
  EXPECT_TRUE(j.at("checks_passed").get<bool>());
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(call({}).code, cli::kExitUsage);
  EXPECT_EQ(call({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(call({"basis", "--q", "2"}).code, cli::kExitUsage);
  EXPECT_EQ(call({"basis", "--q", "2", "--k", "3", "--stat", "fermi"}).code, cli::kExitUsage);
  EXPECT_EQ(call({"--help"}).code, cli::kExitOk);
}

TEST(Cli, InputFileErrorsExitOneWithPath) {
  const std::string zero = temp("zero_state.json");
  io::write_text_file(zero, R"({"q": 2, "n": 2, "statistics": "bose", "amplitudes": [[0,0],[0,0],[0,0]]})");
  const Outcome z = call({"rdm", "--state", zero, "--m", "1"});
  EXPECT_EQ(z.code, cli::kExitUsage);
  EXPECT_NE(z.err.find("norm"), std::string::npos) << z.err;

  const std::string bad = temp("bad_state.json");
  io::write_text_file(bad, R"({"q": 2, "n": 2, "statistics": "bose", "amplitudes": [[1,0],[0,"x"],[0,0]]})");
  const Outcome b = call({"rdm", "--state", bad, "--m", "1"});
  EXPECT_EQ(b.code, cli::kExitUsage);
  EXPECT_NE(b.err.find("/amplitudes/1"), std::string::npos) << b.err;

  const std::string broken = temp("broken.json");
  io::write_text_file(broken, "{\"q\": 2,");
  EXPECT_EQ(call({"rdm", "--state", broken, "--m", "1"}).code, cli::kExitUsage);
}

TEST(Cli, DiagThenCokernelRecoversHamiltonian) {
  const std::string state = temp("eig_state.json");
  const std::string ham = temp("eig_ham.json");
  const Outcome d = call({"diag", "--q", "2", "--n", "6", "--m", "2", "--stat", "bose", "--seed", "3",
                          "--index", "2", "--state-out", state, "--hamiltonian-out", ham});
  ASSERT_EQ(d.code, cli::kExitOk) << d.err;

  const Outcome c = call({"cokernel", "--state", state, "--m", "2", "--hamiltonian", ham});
  ASSERT_EQ(c.code, cli::kExitOk) << c.err;
  const json j = json::parse(c.out);
  EXPECT_TRUE(j.at("checks_passed").get<bool>());
  EXPECT_EQ(j.at("result").at("cokernel").at("dim"), 1);
  EXPECT_GE(j.at("result").at("eta").at("alignment").get<double>(), 1.0 - 1e-8);
}

TEST(Cli, InfeasibleCokernelNeedsOptIn) {
  const std::string state = temp("tall_state.json");
  ASSERT_EQ(call({"diag", "--q", "3", "--n", "4", "--m", "2", "--stat", "bose", "--seed", "1",
                  "--index", "0", "--state-out", state})
                .code,
            cli::kExitOk);
  const Outcome refused = call({"cokernel", "--state", state, "--m", "2"});
  EXPECT_EQ(refused.code, cli::kExitUsage);
  EXPECT_NE(refused.err.find("infeasible shape"), std::string::npos) << refused.err;
  EXPECT_EQ(call({"cokernel", "--state", state, "--m", "2", "--allow-infeasible"}).code, cli::kExitOk);
}

TEST(Cli, SelftestAndNegativeControl) {
  const Outcome ok = call({"selftest"});
  EXPECT_EQ(ok.code, cli::kExitOk) << ok.out << ok.err;
  const Outcome bad = call({"selftest", "--corrupt-sigma"});
  EXPECT_EQ(bad.code, cli::kExitCheckFailed);
  EXPECT_NE(bad.out.find("trace"), std::string::npos) << bad.out;
}

TEST(Cli, ReportsReplayFromTheirInvocation) {
  const std::vector<std::vector<std::string>> commands = {
      {"scan", "--q", "2", "--n", "4", "--m", "2", "--stat", "bose", "--trials", "2", "--controls", "2",
       "--seed", "9"},
      {"plucker", "--q", "5", "--n", "2", "--seed", "4", "--samples", "3"},
      {"veronese", "--q", "3", "--n", "4", "--seed", "4", "--samples", "3"},
      {"strata", "--q", "2", "--n", "4", "--r", "1", "--seed", "2"},
      {"bipartite", "--na", "3", "--nb", "4", "--seed", "5"},
      {"hubbard", "--sites", "2", "--electrons", "2", "--boundary", "open", "--U", "0", "1", "--seed", "3",
       "--samples", "5", "--controls", "5"},
  };
  for (const auto& args : commands) {
    const Outcome first = call(args);
    ASSERT_EQ(first.code, cli::kExitOk) << args[0] << ": " << first.err;
    const json report = json::parse(first.out);
    const auto replay = report.at("invocation").get<std::vector<std::string>>();
    const Outcome second = call(replay);
    ASSERT_EQ(second.code, cli::kExitOk) << args[0];
    EXPECT_EQ(first.out, second.out) << args[0];
  }
}

TEST(Cli, ScanCsvAndThreads) {
  const std::vector<std::string> base = {"scan", "--q", "2", "--n", "4", "--m", "2", "--stat", "bose",
                                         "--trials", "3", "--controls", "2", "--seed", "21"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return call(a);
  };
  const Outcome one = with({"--threads", "1"});
  const Outcome three = with({"--threads", "3"});
  ASSERT_EQ(one.code, cli::kExitOk);
  EXPECT_EQ(one.out, three.out);
  const Outcome csv = with({"--format", "csv"});
  ASSERT_EQ(csv.code, cli::kExitOk);
  EXPECT_EQ(csv.out.rfind("# eigenmoduli", 0), 0u);
  EXPECT_NE(csv.out.find("\ntrial,index,energy,gap,coker_dim,excess,eta_alignment\n"), std::string::npos);
}

TEST(Cli, OutFlagWritesFileAndSummary) {
  const std::string path = temp("basis_out.json");
  const Outcome r = call({"basis", "--q", "2", "--k", "4", "--stat", "bose", "-o", path});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find(path), std::string::npos);
  EXPECT_EQ(io::read_json_file(path).at("result").at("size"), 5);
}

}  // namespace
}  // namespace emod
