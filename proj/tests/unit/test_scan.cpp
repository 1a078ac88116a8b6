// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "eigenmoduli/error.hpp"
#include "eigenmoduli/scan.hpp"
#include "eigenmoduli/serialize.hpp"

namespace emod {
namespace {

ScanConfig small_config() {
  ScanConfig c;
  c.q = 2;
  c.n = 6;
  c.m = 2;
  c.trials = 3;
  c.controls = 5;
  c.seed = 2026;
  return c;
}

TEST(Scan, FeasibleShapeCertifiesEveryEigenstate) {
  const ScanReport r = eigenstate_scan(small_config());
  EXPECT_TRUE(r.feasible());
  EXPECT_EQ(r.hilbert_dim, 7);
  EXPECT_EQ(r.floor_dim, 0);
  EXPECT_EQ(static_cast<int>(r.records.size()), 3 * 7);
  EXPECT_EQ(static_cast<int>(r.controls.size()), 5);
  EXPECT_TRUE(r.summary.passed());
  EXPECT_GE(r.summary.min_alignment, 1.0 - 1e-8);
  for (const auto& e : r.records) {
    if (!e.degenerate) {
      EXPECT_EQ(e.coker_dim, 1);
    }
  }
  for (const auto& c : r.controls) EXPECT_EQ(c.coker_dim, 0);
}

TEST(Scan, ThreadCountDoesNotChangeResults) {
  ScanConfig c = small_config();
  const std::string serial = io::dump(io::to_json(eigenstate_scan(c)));
  c.threads = 3;
  const std::string parallel = io::dump(io::to_json(eigenstate_scan(c)));
  EXPECT_EQ(serial, parallel);
  c.seed += 1;
  EXPECT_NE(serial, io::dump(io::to_json(eigenstate_scan(c))));
}

TEST(Scan, InfeasibleShapeUsesGenericBaseline) {
  ScanConfig c = small_config();
  c.q = 3;
  c.n = 4;
  c.trials = 2;
  const ScanReport r = eigenstate_scan(c);
  EXPECT_FALSE(r.feasible());
  EXPECT_EQ(r.jacobian_rows, 36);
  EXPECT_EQ(r.jacobian_cols, 30);
  EXPECT_EQ(r.floor_dim, 7);
  for (const auto& ctl : r.controls) EXPECT_EQ(ctl.coker_dim, 7);
  for (const auto& e : r.records) EXPECT_GE(e.excess, 1);
  EXPECT_TRUE(r.summary.passed());
}

// A fermion pair on five modes has a 5x5 antisymmetric amplitude matrix, which
// is never invertible; random states sit one above the phase floor.
TEST(Scan, FermionPairsOnOddModesExceedThePhaseFloor) {
  ScanConfig c = small_config();
  c.q = 5;
  c.n = 2;
  c.m = 1;
  c.statistics = Statistics::Fermi;
  const ScanReport r = eigenstate_scan(c);
  EXPECT_EQ(r.hilbert_dim, 10);
  EXPECT_EQ(r.floor_dim, 6);  // 25 - (20 - 1)
  for (const auto& ctl : r.controls) EXPECT_EQ(ctl.coker_dim, 7);
  EXPECT_TRUE(r.summary.passed());
}

TEST(Scan, RejectsBadConfig) {
  ScanConfig c = small_config();
  c.trials = 0;
  EXPECT_THROW((void)eigenstate_scan(c), InvalidArgument);
  c = small_config();
  c.m = 7;
  EXPECT_THROW((void)eigenstate_scan(c), InvalidArgument);
  c = small_config();
  c.q = 6;
  c.n = 8;
  EXPECT_THROW((void)eigenstate_scan(c), InvalidArgument);  // N = 1287
}

TEST(HubbardScan, EigenstatesAreRankDeficient) {
  HubbardScanConfig c;
  c.spec = {3, 3, Boundary::Open, 1.0, 0.0};
  c.interactions = {0.0, 2.0, 8.0};
  c.seed = 11;
  c.minor_samples = 20;
  c.controls = 20;
  const HubbardScanReport r = hubbard_scan(c);
  EXPECT_EQ(r.hilbert_dim, 20);
  EXPECT_EQ(static_cast<int>(r.records.size()), 3 * 20);
  EXPECT_TRUE(r.passed());
  for (const auto& e : r.records) {
    EXPECT_LE(e.rank, 2);
    EXPECT_LE(e.max_minor, 1e-8);
  }
  for (int rank : r.control_ranks) EXPECT_EQ(rank, 3);
}

}  // namespace
}  // namespace emod
