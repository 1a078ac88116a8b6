// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "eigenmoduli/error.hpp"
#include "eigenmoduli/fock_basis.hpp"
#include "oracles.hpp"

namespace emod {
namespace {

TEST(Basis, MatchesBruteForceEnumeration) {
  for (int q = 1; q <= 6; ++q) {
    for (int k = 0; k <= 8; ++k) {
      for (Statistics s : {Statistics::Bose, Statistics::Fermi}) {
        const bool fermi = s == Statistics::Fermi;
        if (fermi && k > q) continue;
        const Basis b = enumerate_basis(q, k, s);
        const auto expected = oracle::brute_force_sets(q, k, fermi);
        ASSERT_EQ(b.size(), static_cast<int>(expected.size())) << "q=" << q << " k=" << k;
        ASSERT_EQ(static_cast<std::uint64_t>(b.size()), space_dimension(q, k, s));
        for (int i = 0; i < b.size(); ++i) {
          EXPECT_EQ(b.at(i).labels(), expected[static_cast<std::size_t>(i)]);
        }
      }
    }
  }
}

TEST(Basis, SmallCardinalities) {
  EXPECT_EQ(enumerate_basis(2, 4, Statistics::Bose).size(), 5);
  EXPECT_EQ(enumerate_basis(4, 2, Statistics::Fermi).size(), 6);
  for (Statistics s : {Statistics::Bose, Statistics::Fermi}) {
    const Basis vac = enumerate_basis(3, 0, s);
    ASSERT_EQ(vac.size(), 1);
    EXPECT_TRUE(vac.at(0).empty());
  }
}

TEST(Basis, LookupRoundTrip) {
  const Basis b = enumerate_basis(4, 3, Statistics::Bose);
  for (int i = 0; i < b.size(); ++i) {
    EXPECT_EQ(b.position(b.at(i)), i);
    EXPECT_TRUE(b.at(i).is_valid(4, Statistics::Bose));
  }
  EXPECT_FALSE(b.find(IndexSet{2, 1, 1}).has_value());
  EXPECT_THROW((void)b.position(IndexSet{5, 5, 5}), InvalidArgument);
}

TEST(Basis, RejectsBadShapes) {
  EXPECT_THROW((void)enumerate_basis(0, 1, Statistics::Bose), InvalidArgument);
  EXPECT_THROW((void)enumerate_basis(3, -1, Statistics::Bose), InvalidArgument);
  EXPECT_THROW((void)enumerate_basis(2, 3, Statistics::Fermi), InvalidArgument);
}

TEST(IndexSetOps, ValidityContainsMinus) {
  EXPECT_TRUE(IndexSet({1, 1, 2}).is_valid(2, Statistics::Bose));
  EXPECT_FALSE(IndexSet({1, 1, 2}).is_valid(2, Statistics::Fermi));
  EXPECT_FALSE(IndexSet({2, 1}).is_valid(3, Statistics::Bose));
  EXPECT_FALSE(IndexSet({1, 4}).is_valid(3, Statistics::Fermi));
  EXPECT_TRUE(IndexSet({1, 1, 2}).contains(IndexSet{1, 2}));
  EXPECT_FALSE(IndexSet({1, 2}).contains(IndexSet{1, 1}));
  EXPECT_EQ(IndexSet({1, 1, 2, 3}).minus(IndexSet{1, 3}), IndexSet({1, 2}));
  EXPECT_EQ(IndexSet({1, 1, 3}).occupations(3), (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(IndexSet({1, 2}).str(), "[1,2]");
}

TEST(Concat, WorkedExamples) {
  const ConcatResult f = concat_index(IndexSet{2}, IndexSet{1, 3}, 3, Statistics::Fermi);
  EXPECT_EQ(f.sorted, IndexSet({1, 2, 3}));
  EXPECT_EQ(f.coefficient, -1.0);
  EXPECT_EQ(concat_index(IndexSet{1}, IndexSet{1, 2}, 3, Statistics::Fermi).coefficient, 0.0);
  const ConcatResult b = concat_index(IndexSet{1, 2}, IndexSet{2}, 2, Statistics::Bose);
  EXPECT_EQ(b.sorted, IndexSet({1, 2, 2}));
  EXPECT_EQ(b.coefficient, 1.0);
}

TEST(Concat, FermiSignMatchesPermutationParity) {
  const int q = 6;
  for (int m = 0; m <= 3; ++m) {
    const Basis bi = enumerate_basis(q, m, Statistics::Fermi);
    const Basis bk = enumerate_basis(q, 3, Statistics::Fermi);
    for (const auto& I : bi.sets()) {
      for (const auto& K : bk.sets()) {
        const ConcatResult r = concat_index(I, K, q, Statistics::Fermi);
        std::vector<int> cat = I.labels();
        cat.insert(cat.end(), K.labels().begin(), K.labels().end());
        std::vector<int> sorted = cat;
        std::sort(sorted.begin(), sorted.end());
        const bool overlap = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
        if (overlap) {
          EXPECT_EQ(r.coefficient, 0.0);
        } else {
          EXPECT_EQ(r.coefficient, oracle::permutation_sign(cat)) << I.str() << K.str();
          EXPECT_EQ(r.sorted.labels(), sorted);
        }
      }
    }
  }
}

TEST(Concat, FermiSwapSign) {
  const int q = 6;
  const Basis b2 = enumerate_basis(q, 2, Statistics::Fermi);
  const Basis b3 = enumerate_basis(q, 3, Statistics::Fermi);
  for (const auto& I : b2.sets()) {
    for (const auto& K : b3.sets()) {
      const double ik = concat_index(I, K, q, Statistics::Fermi).coefficient;
      const double ki = concat_index(K, I, q, Statistics::Fermi).coefficient;
      if (ik != 0.0) {
        EXPECT_EQ(ik, std::pow(-1.0, I.size() * K.size()) * ki);
      }
    }
  }
}

TEST(Concat, RejectsInvalidInput) {
  EXPECT_THROW((void)concat_index(IndexSet{2, 1}, IndexSet{3}, 3, Statistics::Fermi), InvalidArgument);
  EXPECT_THROW((void)concat_index(IndexSet{1}, IndexSet{4}, 3, Statistics::Bose), InvalidArgument);
}

TEST(Sigma, WorkedExamples) {
  EXPECT_NEAR(sigma(IndexSet{1}, IndexSet{1}, 2, Statistics::Bose), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(sigma(IndexSet{1}, IndexSet{2}, 2, Statistics::Bose), 1.0);
  EXPECT_EQ(sigma(IndexSet{2}, IndexSet{1, 3}, 3, Statistics::Fermi), -1.0);
}

TEST(Sigma, SquaredBoseFactorIsBinomialProduct) {
  const int q = 3;
  const Basis bk = enumerate_basis(q, 2, Statistics::Bose);
  for (int m = 1; m <= 3; ++m) {
    const Basis bi = enumerate_basis(q, m, Statistics::Bose);
    for (const auto& I : bi.sets()) {
      for (const auto& K : bk.sets()) {
        const auto nI = I.occupations(q);
        const auto nK = K.occupations(q);
        double expected = 1.0;
        for (int a = 0; a < q; ++a) expected *= oracle::binomial(nI[a] + nK[a], nI[a]);
        const double s = sigma(I, K, q, Statistics::Bose);
        EXPECT_NEAR(s * s, expected, 1e-12);
        const double reciprocal = sigma(I, K, q, Statistics::Bose, SigmaConvention::Reciprocal);
        EXPECT_NEAR(reciprocal * s, 1.0, 1e-12);
      }
    }
  }
}

// sum over I in I_m with I inside alpha of prod_a C(n^alpha_a, n^I_a) equals C(n, m).
TEST(Sigma, VandermondeIdentity) {
  for (int q = 1; q <= 4; ++q) {
    for (int n = 1; n <= 5; ++n) {
      const Basis bn = enumerate_basis(q, n, Statistics::Bose);
      for (const auto& alpha : bn.sets()) {
        const auto na = alpha.occupations(q);
        for (int m = 0; m <= n; ++m) {
          double total = 0.0;
          const Basis bm = enumerate_basis(q, m, Statistics::Bose);
          for (const auto& I : bm.sets()) {
            if (!alpha.contains(I)) continue;
            const auto ni = I.occupations(q);
            double term = 1.0;
            for (int a = 0; a < q; ++a) term *= oracle::binomial(na[a], ni[a]);
            total += term;
          }
          EXPECT_EQ(total, static_cast<double>(binomial(n, m)));
        }
      }
    }
  }
}

TEST(Binomial, ExactAndOverflow) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(4, 7), 0u);
  EXPECT_EQ(binomial(62, 31), 465428353255261088ull);
  EXPECT_THROW((void)binomial(200, 100), InvalidArgument);
}

TEST(Statistics, Parse) {
  EXPECT_EQ(parse_statistics("Bose"), Statistics::Bose);
  EXPECT_EQ(parse_statistics("FERMI"), Statistics::Fermi);
  EXPECT_THROW((void)parse_statistics("anyon"), InvalidArgument);
}

}  // namespace
}  // namespace emod
