// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#include "eigenmoduli/fock_basis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "eigenmoduli/error.hpp"

namespace emod {

std::string_view to_string(Statistics s) noexcept {
  return s == Statistics::Bose ? "bose" : "fermi";
}

Statistics parse_statistics(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "bose" || lower == "boson" || lower == "bosons") return Statistics::Bose;
  if (lower == "fermi" || lower == "fermion" || lower == "fermions") return Statistics::Fermi;
  throw InvalidArgument("unknown statistics '" + std::string(text) + "' (expected bose|fermi)");
}

std::string_view to_string(SigmaConvention c) noexcept {
  return c == SigmaConvention::TraceNormalized ? "sqrt(prod n_(IK)! / (n_I! n_K!))"
                                               : "sqrt(n_I! n_K! / prod n_(IK)!)";
}

// ---------------------------------------------------------------------------
// IndexSet
// ---------------------------------------------------------------------------

std::vector<int> IndexSet::occupations(int q) const {
  std::vector<int> occ(static_cast<std::size_t>(q), 0);
  for (int label : labels_) {
    if (label < 1 || label > q) {
      throw InvalidArgument("label " + std::to_string(label) + " outside 1.." + std::to_string(q));
    }
    ++occ[static_cast<std::size_t>(label - 1)];
  }
  return occ;
}

bool IndexSet::is_valid(int q, Statistics s) const noexcept {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 1 || labels_[i] > q) return false;
    if (i == 0) continue;
    if (s == Statistics::Bose ? labels_[i] < labels_[i - 1] : labels_[i] <= labels_[i - 1]) {
      return false;
    }
  }
  return true;
}

bool IndexSet::contains(const IndexSet& sub) const {
  return std::includes(labels_.begin(), labels_.end(), sub.labels_.begin(), sub.labels_.end());
}

IndexSet IndexSet::minus(const IndexSet& sub) const {
  std::vector<int> out;
  out.reserve(labels_.size());
  std::set_difference(labels_.begin(), labels_.end(), sub.labels_.begin(), sub.labels_.end(),
                      std::back_inserter(out));
  return IndexSet(std::move(out));
}

std::string IndexSet::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (i) os << ',';
    os << labels_[i];
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Basis
// ---------------------------------------------------------------------------

std::optional<int> Basis::find(const IndexSet& set) const {
  auto it = lookup_.find(set);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int Basis::position(const IndexSet& set) const {
  if (auto p = find(set)) return *p;
  throw InvalidArgument("index set " + set.str() + " is not in the " +
                        std::string(to_string(statistics_)) + " basis (q=" + std::to_string(q_) +
                        ", k=" + std::to_string(k_) + ")");
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    // c * (n-k+i) is divisible by i; split the division so nothing overflows early.
    const std::uint64_t g = std::gcd(c, static_cast<std::uint64_t>(i));
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i) / (static_cast<std::uint64_t>(i) / g);
    if (__builtin_mul_overflow(c / g, factor, &c)) {
      throw InvalidArgument("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                            ") overflows 64 bits");
    }
  }
  return c;
}

std::uint64_t space_dimension(int q, int k, Statistics s) {
  if (s == Statistics::Bose) return k == 0 ? 1 : binomial(q + k - 1, k);
  return binomial(q, k);
}

namespace {

void enumerate_rec(int q, int k, Statistics s, std::vector<int>& prefix,
                   std::vector<IndexSet>& out) {
  if (static_cast<int>(prefix.size()) == k) {
    out.emplace_back(prefix);
    return;
  }
  int first = 1;
  if (!prefix.empty()) first = s == Statistics::Bose ? prefix.back() : prefix.back() + 1;
  const int remaining = k - static_cast<int>(prefix.size());
  // fermions need room for the remaining strictly increasing labels
  const int last = s == Statistics::Bose ? q : q - remaining + 1;
  for (int label = first; label <= last; ++label) {
    prefix.push_back(label);
    enumerate_rec(q, k, s, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Basis enumerate_basis(int q, int k, Statistics statistics) {
  if (q < 1) throw InvalidArgument("single-particle dimension q must be >= 1");
  if (k < 0) throw InvalidArgument("particle number must be non-negative");
  if (statistics == Statistics::Fermi && k > q) {
    throw InvalidArgument("empty basis: " + std::to_string(k) + " fermions cannot occupy " +
                          std::to_string(q) + " states");
  }
  Basis b;
  b.q_ = q;
  b.k_ = k;
  b.statistics_ = statistics;
  b.sets_.reserve(space_dimension(q, k, statistics));
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(k));
  enumerate_rec(q, k, statistics, prefix, b.sets_);
  for (int p = 0; p < b.size(); ++p) b.lookup_.emplace(b.sets_[static_cast<std::size_t>(p)], p);
  return b;
}

// ---------------------------------------------------------------------------
// Concatenation and symmetry factors
// ---------------------------------------------------------------------------

namespace {

void require_valid(const IndexSet& s, int q, Statistics st, const char* name) {
  if (!s.is_valid(q, st)) {
    throw InvalidArgument(std::string(name) + " = " + s.str() + " is not a valid " +
                          std::string(to_string(st)) + " index set for q=" + std::to_string(q));
  }
}

}  // namespace

ConcatResult concat_index(const IndexSet& I, const IndexSet& K, int q, Statistics statistics) {
  require_valid(I, q, statistics, "I");
  require_valid(K, q, statistics, "K");

  std::vector<int> merged;
  merged.reserve(static_cast<std::size_t>(I.size() + K.size()));
  std::merge(I.labels().begin(), I.labels().end(), K.labels().begin(), K.labels().end(),
             std::back_inserter(merged));

  ConcatResult r;
  r.sorted = IndexSet(std::move(merged));
  if (statistics == Statistics::Bose) {
    r.coefficient = 1.0;
    return r;
  }
  // Sign of the sort: one transposition per pair (i in I, k in K) with i > k.
  long inversions = 0;
  std::size_t kpos = 0;
  for (int i : I.labels()) {
    while (kpos < K.labels().size() && K.labels()[kpos] < i) ++kpos;
    if (kpos < K.labels().size() && K.labels()[kpos] == i) {
      r.coefficient = 0.0;
      return r;
    }
    inversions += static_cast<long>(kpos);
  }
  r.coefficient = (inversions % 2 == 0) ? 1.0 : -1.0;
  return r;
}

double sigma(const IndexSet& I, const IndexSet& K, int q, Statistics statistics,
             SigmaConvention convention) {
  const ConcatResult c = concat_index(I, K, q, statistics);
  if (statistics == Statistics::Fermi) return c.coefficient;

  const auto occ_i = I.occupations(q);
  const auto occ_k = K.occupations(q);
  // prod_a n_(IK)! / (n_I! n_K!) = prod_a C(n_I + n_K, n_I)
  double ratio = 1.0;
  for (std::size_t a = 0; a < occ_i.size(); ++a) {
    ratio *= static_cast<double>(binomial(occ_i[a] + occ_k[a], occ_i[a]));
  }
  return convention == SigmaConvention::TraceNormalized ? std::sqrt(ratio)
                                                        : 1.0 / std::sqrt(ratio);
}

}  // namespace emod
