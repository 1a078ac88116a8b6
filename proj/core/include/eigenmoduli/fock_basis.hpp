// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock_basis.hpp
 * @brief Occupation-number bases of symmetrized many-particle spaces.
 *
 * An index set lists 1-based single-particle labels in non-decreasing
 * (bosons) or strictly increasing (fermions) order. Bases enumerate all
 * such sets lexicographically; that order is the canonical row/column
 * order of every matrix and file produced by the library.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emod {

enum class Statistics { Bose, Fermi };

[[nodiscard]] std::string_view to_string(Statistics s) noexcept;
/// Accepts "bose"/"fermi" (case-insensitive); throws InvalidArgument otherwise.
[[nodiscard]] Statistics parse_statistics(std::string_view text);

/**
 * Normalization of the boson symmetry factor.
 *
 * `TraceNormalized` uses sqrt(prod n^(IK)! / (n^I! n^K!)), for which the
 * diagonal projectors sum to C(n,m) times the identity. `Reciprocal` is the
 * reciprocal form; it breaks the trace identity and exists only as a
 * negative control for the self-test.
 */
enum class SigmaConvention { TraceNormalized, Reciprocal };

[[nodiscard]] std::string_view to_string(SigmaConvention c) noexcept;

/// Ordered multiset (Bose) or set (Fermi) of 1-based labels.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> labels) : labels_(std::move(labels)) {}
  IndexSet(std::initializer_list<int> labels) : labels_(labels) {}

  [[nodiscard]] const std::vector<int>& labels() const noexcept { return labels_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(labels_.size()); }
  [[nodiscard]] bool empty() const noexcept { return labels_.empty(); }
  [[nodiscard]] int operator[](int i) const { return labels_[static_cast<std::size_t>(i)]; }

  /// Occupation count of each label 1..q, returned 0-based by label-1.
  [[nodiscard]] std::vector<int> occupations(int q) const;

  /// True when ordering and label range satisfy the invariants for `s`.
  [[nodiscard]] bool is_valid(int q, Statistics s) const noexcept;

  /// Multiset inclusion: every label of `sub` appears here at least as often.
  [[nodiscard]] bool contains(const IndexSet& sub) const;

  /// Multiset difference this ∖ sub; requires contains(sub).
  [[nodiscard]] IndexSet minus(const IndexSet& sub) const;

  [[nodiscard]] std::string str() const;

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> labels_;
};

/// All k-particle index sets over q labels in lexicographic order.
class Basis {
 public:
  [[nodiscard]] int q() const noexcept { return q_; }
  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] Statistics statistics() const noexcept { return statistics_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(sets_.size()); }
  [[nodiscard]] const std::vector<IndexSet>& sets() const noexcept { return sets_; }
  [[nodiscard]] const IndexSet& at(int position) const { return sets_.at(static_cast<std::size_t>(position)); }

  /// Position of `set`, or std::nullopt when it is not a member.
  [[nodiscard]] std::optional<int> find(const IndexSet& set) const;
  /// Position of `set`; throws InvalidArgument when absent.
  [[nodiscard]] int position(const IndexSet& set) const;

  friend Basis enumerate_basis(int q, int k, Statistics statistics);

 private:
  int q_ = 0;
  int k_ = 0;
  Statistics statistics_ = Statistics::Bose;
  std::vector<IndexSet> sets_;
  std::map<IndexSet, int> lookup_;
};

struct ConcatResult {
  IndexSet sorted;
  /// Fermi: permutation sign or 0 on overlap. Bose: always 1.
  double coefficient = 0.0;
};

/// Binomial coefficient as an exact 64-bit integer (throws on overflow).
[[nodiscard]] std::uint64_t binomial(int n, int k);

/// Dimension of the k-particle space over q single-particle states.
[[nodiscard]] std::uint64_t space_dimension(int q, int k, Statistics s);

/**
 * Lexicographic enumeration of all k-particle index sets.
 * Throws InvalidArgument for q < 1, k < 0, or fermions with k > q.
 */
[[nodiscard]] Basis enumerate_basis(int q, int k, Statistics statistics);

/// Ordered concatenation (I K) together with its fermionic sign.
[[nodiscard]] ConcatResult concat_index(const IndexSet& I, const IndexSet& K, int q,
                                        Statistics statistics);

/// Symmetry factor weighting the concatenation (I K).
[[nodiscard]] double sigma(const IndexSet& I, const IndexSet& K, int q, Statistics statistics,
                           SigmaConvention convention = SigmaConvention::TraceNormalized);

}  // namespace emod
