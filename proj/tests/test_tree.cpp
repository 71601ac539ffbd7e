#include <doctest.h>

#include <random>
#include <sstream>

#include "corpus.hpp"
#include "plumb/tree.hpp"

using namespace plumb;

TEST_CASE("sparse set membership and counting") {
  SparseSet s({{2, 3}, {10, 1}});
  CHECK(s.contains(2));
  CHECK(s.contains(4));
  CHECK_FALSE(s.contains(5));
  CHECK(s.contains(10));
  CHECK(s.count_upto(1) == 0);
  CHECK(s.count_upto(4) == 3);
  CHECK(s.count_upto(100) == 4);
  CHECK_THROWS_AS(SparseSet({{2, 3}, {4, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseSet({{0, 0}}), std::invalid_argument);
}

TEST_CASE("lower density values") {
  SparseSet empty;
  auto zeros = lower_density(empty, {1, 10, 100});
  for (const Rat& q : zeros) CHECK(q == 0);
  SparseSet s({{0, 5}});
  CHECK(lower_density(s, {10})[0] == Rat(1, 2));
  CHECK_THROWS_AS(lower_density(s, {5, 5}), std::invalid_argument);
}

TEST_CASE("binary blowup bound") {
  CHECK(binary_blowup_lower_bound(0, 5, 0) == 16);
  CHECK(binary_blowup_lower_bound(2, 10, 3) == 16);
  CHECK_THROWS_AS(binary_blowup_lower_bound(5, 5, 0), NegativeExponent);
  // Near-binary growth overruns any sub-2 exponential bound: the rejection
  // branch is forced once 2^{n-s-k-1} > C*lambda^n.
  Int lhs = binary_blowup_lower_bound(0, 40, 4);  // 2^35
  Int rhs_num = Int(4) * 243;                     // 4 * 3^5...
  Int num = 1, den = 1;
  for (int i = 0; i < 40; ++i) { num *= 3; den *= 2; }
  CHECK(lhs * den > Int(4) * num);
  (void)rhs_num;
}

TEST_CASE("build_tree growth matches the BFS oracle exactly") {
  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 25; ++trial) {
    GrowthFunction v = corpus::tree_ready(rng, corpus::draw(rng, 10, 80));
    SparseSet S = corpus::sparse(rng, v.horizon());
    AdmissibleTree t = build_tree(v, S);
    CHECK(root_growth(t) == v);
    CHECK(t.total_vertices() == v.at(v.horizon()));
  }
}

TEST_CASE("built trees are admissible and respect the trunk rule") {
  std::mt19937_64 rng(313);
  for (int trial = 0; trial < 15; ++trial) {
    GrowthFunction v = corpus::tree_ready(rng, 60, 16);
    SparseSet S = corpus::sparse(rng, v.horizon());
    AdmissibleTree t = build_tree(v, S);
    CHECK_FALSE(verify_admissible(t, t.depth() / 4));

    std::vector<bool> slipped(static_cast<size_t>(t.depth()) + 1, false);
    for (const auto& s : t.slips()) slipped[static_cast<size_t>(s.level)] = true;
    for (long n = 0; n < t.depth(); ++n) {
      if (slipped[static_cast<size_t>(n)]) continue;
      CHECK(t.child_count(n, 0) == (S.contains(n) ? 1 : 2));
    }
  }
}

TEST_CASE("budget boundary forces a recorded slip") {
  // v(1)-v(0) = 1 with 0 not in S: the trunk wants 2 children, gets 1.
  GrowthFunction v({Int(1), Int(2), Int(4), Int(8)});
  AdmissibleTree t = build_tree(v, SparseSet{});
  REQUIRE(t.slips().size() == 1);
  CHECK(t.slips()[0].level == 0);
  CHECK(t.slips()[0].wanted == 2);
  CHECK(t.slips()[0].got == 1);

  // Budget 2*size with the level in S: the single-child rule is infeasible.
  GrowthFunction w({Int(1), Int(3), Int(7)});
  AdmissibleTree t2 = build_tree(w, SparseSet({{1, 1}}));
  REQUIRE(t2.slips().size() == 1);
  CHECK(t2.slips()[0].level == 1);
  CHECK(t2.slips()[0].wanted == 1);
  CHECK(t2.slips()[0].got == 2);
}

TEST_CASE("build_tree rejects infeasible budgets") {
  CHECK_THROWS_AS(build_tree(GrowthFunction({Int(1), Int(4)}), SparseSet{}), BudgetOverflow);
  CHECK_THROWS_AS(build_tree(GrowthFunction({Int(1), Int(1), Int(2)}), SparseSet{}),
                  BudgetOverflow);
  CHECK_THROWS_AS(build_tree(GrowthFunction({Int(2), Int(4)}), SparseSet{}),
                  std::invalid_argument);
}

TEST_CASE("admissibility violations are reported") {
  // Full binary tree: every side subtree reaches the final level.
  std::vector<std::vector<uint8_t>> full{{2}, {2, 2}, {2, 2, 2, 2}, {0, 0, 0, 0, 0, 0, 0, 0}};
  AdmissibleTree t(std::move(full));
  auto bad = verify_admissible(t, 1);
  REQUIRE(bad);
  CHECK(bad->level == t.depth());

  // Path graph: nothing to flag.
  std::vector<std::vector<uint8_t>> path{{1}, {1}, {1}, {0}};
  CHECK_FALSE(verify_admissible(AdmissibleTree(std::move(path)), 2));

  CHECK_THROWS_AS(verify_admissible(t, 99), GuardTooLarge);
}

TEST_CASE("2n+1 tree has only leaf side branches") {
  GrowthFunction v = GrowthFunction::affine(Int(2), Int(1), 40);
  AdmissibleTree t = build_tree(v, SparseSet{});
  CHECK_FALSE(verify_admissible(t, 10));
  for (long n = 1; n < t.depth(); ++n) {
    CHECK(t.level_size(n) == 2);
    CHECK(t.child_count(n, 1) == 0);  // the side child never continues
  }
}

TEST_CASE("exports are stable and well-formed") {
  GrowthFunction v({Int(1), Int(3), Int(7)});
  AdmissibleTree t = build_tree(v, SparseSet({{1, 1}}));
  std::ostringstream dot1, dot2, jl;
  write_dot(t, dot1);
  write_dot(t, dot2);
  CHECK(dot1.str() == dot2.str());
  CHECK(dot1.str().find("L0I0 -> L1I0 [style=bold") != std::string::npos);
  write_jsonl(t, jl);
  std::string line;
  std::istringstream in(jl.str());
  long lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(line.front() == '{');
    CHECK(line.find("\"level\":") != std::string::npos);
  }
  CHECK(lines == 7);  // one per vertex
}

TEST_CASE("parent indices are consistent with child counts") {
  std::mt19937_64 rng(331);
  GrowthFunction v = corpus::tree_ready(rng, 30, 8);
  AdmissibleTree t = build_tree(v, corpus::sparse(rng, 30));
  for (long n = 1; n <= t.depth(); ++n) {
    std::vector<long> from_counts;
    const auto& prev = t.level_counts(n - 1);
    for (size_t i = 0; i < prev.size(); ++i)
      for (int c = 0; c < prev[i]; ++c) from_counts.push_back(static_cast<long>(i));
    REQUIRE(static_cast<long>(from_counts.size()) == t.level_size(n));
    for (long i = 0; i < t.level_size(n); ++i)
      CHECK(t.parent_index(n, i) == from_counts[static_cast<size_t>(i)]);
  }
}
