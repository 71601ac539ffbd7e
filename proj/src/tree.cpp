#include "plumb/tree.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace plumb {

SparseSet::SparseSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  long prev_end = 0;
  for (size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (iv.start < 0 || iv.length < 1)
      throw std::invalid_argument("SparseSet: bad interval at position " + std::to_string(i));
    if (i > 0 && iv.start < prev_end)
      throw std::invalid_argument("SparseSet: overlapping or unsorted interval at position " +
                                  std::to_string(i));
    prev_end = iv.start + iv.length;
  }
}

bool SparseSet::contains(long n) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), n,
                             [](long x, const Interval& iv) { return x < iv.start; });
  if (it == intervals_.begin()) return false;
  --it;
  return n < it->start + it->length;
}

long SparseSet::count_upto(long n) const {
  long total = 0;
  for (const auto& iv : intervals_) {
    if (iv.start > n) break;
    total += std::min(iv.length, n - iv.start + 1);
  }
  return total;
}

std::vector<Rat> lower_density(const SparseSet& S, const std::vector<long>& checkpoints) {
  std::vector<Rat> out;
  out.reserve(checkpoints.size());
  long prev = 0;
  for (long n : checkpoints) {
    if (n <= prev) throw std::invalid_argument("lower_density: checkpoints must be positive and increasing");
    prev = n;
    Rat q(S.count_upto(n), n);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

Int binary_blowup_lower_bound(long k, long n, long s_n) {
  long e = n - s_n - k - 1;
  if (e < 0)
    throw NegativeExponent("binary_blowup_lower_bound: exponent " + std::to_string(e));
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

AdmissibleTree::AdmissibleTree(std::vector<std::vector<uint8_t>> child_counts)
    : counts_(std::move(child_counts)) {
  if (counts_.empty() || counts_[0].size() != 1)
    throw std::invalid_argument("AdmissibleTree: level 0 must hold exactly the root");
  for (size_t n = 0; n + 1 < counts_.size(); ++n) {
    long sum = 0;
    for (uint8_t c : counts_[n]) sum += c;
    if (sum != static_cast<long>(counts_[n + 1].size()))
      throw std::invalid_argument("AdmissibleTree: child counts at level " + std::to_string(n) +
                                  " do not match level " + std::to_string(n + 1));
  }
  long last = static_cast<long>(counts_.size()) - 1;
  for (uint8_t c : counts_[static_cast<size_t>(last)])
    if (c != 0)
      throw std::invalid_argument("AdmissibleTree: final level must be childless");
}

long AdmissibleTree::parent_index(long level, long index) const {
  if (level < 1) throw std::invalid_argument("parent_index: root has no parent");
  const auto& prev = counts_[static_cast<size_t>(level - 1)];
  long acc = 0;
  for (size_t i = 0; i < prev.size(); ++i) {
    acc += prev[i];
    if (index < acc) return static_cast<long>(i);
  }
  throw std::logic_error("parent_index: orphaned vertex");
}

Int AdmissibleTree::total_vertices() const {
  Int total = 0;
  for (const auto& lvl : counts_) total += static_cast<long>(lvl.size());
  return total;
}

AdmissibleTree build_tree(const GrowthFunction& v, const SparseSet& S) {
  if (v.at(0) != 1) throw std::invalid_argument("build_tree: v(0) must be 1");
  const long N = v.horizon();

  AdmissibleTree t;
  t.S_ = S;
  t.counts_.resize(static_cast<size_t>(N) + 1);
  t.counts_[0].resize(1, 0);

  for (long n = 0; n < N; ++n) {
    auto& level = t.counts_[static_cast<size_t>(n)];
    const long sz = static_cast<long>(level.size());
    Int budget_z = v.diff(n + 1);
    if (budget_z > 2 * sz)
      throw BudgetOverflow("build_tree: level " + std::to_string(n + 1) + " needs " +
                           budget_z.get_str() + " edges from " + std::to_string(sz) + " parents");
    long budget = budget_z.get_si();
    if (budget < 1)
      throw BudgetOverflow("build_tree: zero budget at level " + std::to_string(n + 1));

    int wanted = S.contains(n) ? 1 : 2;
    long c1 = std::min<long>(wanted, budget);
    long forced = budget - 2 * (sz - 1);  // the rest absorb at most 2 each
    if (c1 < forced) c1 = forced;
    if (c1 != wanted) t.slips_.push_back(RuleSlip{n, wanted, static_cast<int>(c1)});

    level[0] = static_cast<uint8_t>(c1);
    long rem = budget - c1;
    long idx = 1;
    while (rem >= 2) {
      level[static_cast<size_t>(idx++)] = 2;
      rem -= 2;
    }
    if (rem == 1) level[static_cast<size_t>(idx)] = 1;
    t.counts_[static_cast<size_t>(n + 1)].resize(static_cast<size_t>(budget), 0);
  }
  return t;
}

GrowthFunction root_growth(const AdmissibleTree& t) {
  // Walk child links breadth-first rather than trusting the level tables.
  std::vector<Int> cumulative;
  Int seen = 1;
  cumulative.push_back(seen);
  std::vector<long> frontier{0};  // vertex indices at the current distance
  for (long dist = 0; dist < t.depth(); ++dist) {
    const auto& counts = t.level_counts(dist);
    std::vector<long> offsets(counts.size() + 1, 0);
    for (size_t i = 0; i < counts.size(); ++i) offsets[i + 1] = offsets[i] + counts[i];
    std::vector<long> next;
    for (long i : frontier) {
      for (long c = offsets[static_cast<size_t>(i)]; c < offsets[static_cast<size_t>(i) + 1]; ++c)
        next.push_back(c);
    }
    if (next.empty()) break;
    seen += static_cast<long>(next.size());
    cumulative.push_back(seen);
    frontier = std::move(next);
  }
  return GrowthFunction(std::move(cumulative));
}

std::optional<AdmissibilityViolation> verify_admissible(const AdmissibleTree& t, long guard) {
  const long depth = t.depth();
  if (guard > depth) throw GuardTooLarge("verify_admissible: guard exceeds tree depth");

  for (long n = 0; n <= depth; ++n) {
    const auto& counts = t.level_counts(n);
    for (size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] > 2)
        return AdmissibilityViolation{"child count exceeds 2", n, static_cast<long>(i)};
    }
    if (n < depth && counts[0] == 0)
      return AdmissibilityViolation{"trunk does not reach the next level", n, 0};
  }

  // Tag every vertex with the trunk level its side branch hangs off (-1 for
  // the trunk itself) and look for tagged vertices surviving to the end.
  std::vector<long> label{-1};
  for (long n = 0; n < depth; ++n) {
    const auto& counts = t.level_counts(n);
    std::vector<long> next;
    for (size_t i = 0; i < counts.size(); ++i) {
      for (int c = 0; c < counts[i]; ++c) {
        if (i == 0 && label[0] == -1)
          next.push_back(c == 0 ? -1 : n);
        else
          next.push_back(label[i]);
      }
    }
    label = std::move(next);
  }
  for (size_t i = 0; i < label.size(); ++i) {
    if (label[i] >= 0 && label[i] <= depth - guard)
      return AdmissibilityViolation{"side subtree hung off trunk level " +
                                        std::to_string(label[i]) + " reaches the final level",
                                    depth, static_cast<long>(i)};
  }
  return std::nullopt;
}

void write_dot(const AdmissibleTree& t, std::ostream& os) {
  os << "digraph tree {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
  for (long n = 0; n < t.depth(); ++n) {
    const auto& counts = t.level_counts(n);
    long child = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
      for (int c = 0; c < counts[i]; ++c, ++child) {
        bool trunk_edge = (i == 0 && child == 0);
        os << "  L" << n << "I" << i << " -> L" << (n + 1) << "I" << child;
        if (trunk_edge) os << " [style=bold, color=black]";
        os << ";\n";
      }
    }
  }
  os << "}\n";
}

void write_jsonl(const AdmissibleTree& t, std::ostream& os) {
  for (long n = 0; n <= t.depth(); ++n) {
    const auto& counts = t.level_counts(n);
    // Running parent pointer: children were assigned to parents in order.
    std::vector<long> parent(counts.size(), -1);
    if (n >= 1) {
      const auto& prev = t.level_counts(n - 1);
      long child = 0;
      for (size_t i = 0; i < prev.size(); ++i)
        for (int c = 0; c < prev[i]; ++c) parent[static_cast<size_t>(child++)] = static_cast<long>(i);
    }
    for (size_t i = 0; i < counts.size(); ++i) {
      bool on_trunk = (i == 0);
      os << "{\"level\":" << n << ",\"index\":" << i << ",\"parent\":" << parent[i]
         << ",\"child_count\":" << static_cast<int>(counts[i])
         << ",\"on_trunk\":" << (on_trunk ? "true" : "false")
         << ",\"in_S\":" << ((on_trunk && t.sparse_set().contains(n)) ? "true" : "false") << "}\n";
    }
  }
}

}  // namespace plumb
