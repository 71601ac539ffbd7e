#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plumb/growth.hpp"

namespace plumb {

/// Union of integer intervals [start, start+length-1], sorted and disjoint.
/// Models the set of single-child trunk positions.
class SparseSet {
 public:
  struct Interval {
    long start;
    long length;
  };

  SparseSet() = default;
  explicit SparseSet(std::vector<Interval> intervals);  // validates order/disjointness

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool contains(long n) const;
  /// |S ∩ {0,...,n}|.
  long count_upto(long n) const;
  bool empty() const { return intervals_.empty(); }

 private:
  std::vector<Interval> intervals_;
};

/// s(n)/n at each checkpoint, exact.
std::vector<Rat> lower_density(const SparseSet& S, const std::vector<long>& checkpoints);

/// 2^(n - s_n - k - 1); throws NegativeExponent if the exponent is negative.
Int binary_blowup_lower_bound(long k, long n, long s_n);

/// A level where the construction rule could not bind as stated: the first
/// vertex wanted `wanted` children but the level budget forced `got`.
struct RuleSlip {
  long level;
  int wanted;
  int got;
};

/// Rooted tree, <= 2 children per vertex, trunk = index 0 at every level.
/// Stored as per-level child counts; children are assigned to parents in
/// order, so vertex (n+1, i) hangs off the parent whose cumulative child
/// count first exceeds i. Lexicographic order is (level, index).
class AdmissibleTree {
 public:
  AdmissibleTree() = default;
  /// Explicit construction (used by tests for handcrafted trees); level 0
  /// must have exactly one vertex and level sizes must match the counts.
  explicit AdmissibleTree(std::vector<std::vector<uint8_t>> child_counts);

  long depth() const { return static_cast<long>(counts_.size()) - 1; }
  long level_size(long n) const { return static_cast<long>(counts_[static_cast<size_t>(n)].size()); }
  int child_count(long level, long index) const {
    return counts_[static_cast<size_t>(level)][static_cast<size_t>(index)];
  }
  const std::vector<uint8_t>& level_counts(long n) const { return counts_[static_cast<size_t>(n)]; }
  long parent_index(long level, long index) const;  // level >= 1

  Int total_vertices() const;

  const std::vector<RuleSlip>& slips() const { return slips_; }
  const SparseSet& sparse_set() const { return S_; }

  friend AdmissibleTree build_tree(const GrowthFunction& v, const SparseSet& S);

 private:
  std::vector<std::vector<uint8_t>> counts_;
  std::vector<RuleSlip> slips_;
  SparseSet S_;
};

/// Deterministic construction of a tree with growth exactly v: level n+1 has
/// v(n+1)-v(n) vertices; the trunk vertex takes 1 child if n is in S else 2
/// (capped by the budget, recorded as a RuleSlip); the rest fill greedily
/// from the front, two each, leaving the back childless.
AdmissibleTree build_tree(const GrowthFunction& v, const SparseSet& S);

/// Breadth-first count of vertices within distance n of the root; the
/// exactness oracle for build_tree.
GrowthFunction root_growth(const AdmissibleTree& t);

struct AdmissibilityViolation {
  std::string what;
  long level;
  long index;
};

/// Pass iff child counts are in {0,1,2}, the trunk is a ray of lex-smallest
/// vertices, and every side subtree hung off trunk[k] with k <= depth-guard
/// dies out before the final level.
std::optional<AdmissibilityViolation> verify_admissible(const AdmissibleTree& t, long guard);

void write_dot(const AdmissibleTree& t, std::ostream& os);
void write_jsonl(const AdmissibleTree& t, std::ostream& os);

}  // namespace plumb
