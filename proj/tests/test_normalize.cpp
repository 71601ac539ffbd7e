#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "plumb/normalize.hpp"

using namespace plumb;

TEST_CASE("normalize with L=1 stays exact") {
  GrowthFunction v = GrowthFunction::affine(Int(1), Int(1), 50);  // n+1
  NormalizationReport rep = normalize_bgd(v, Int(1));
  CHECK(rep.ell == 1);
  CHECK(rep.C == 2);
  CHECK(rep.shift == 1);
  CHECK(rep.precision_bits == 0);
  CHECK(rep.output == GrowthFunction::affine(Int(2), Int(1), 50));  // 2n+1
  CHECK_FALSE(check_tree_hypotheses(rep.output, rep.lambda_num, rep.lambda_den, rep.growth_C));
}

TEST_CASE("normalize rejects an understated witness") {
  GrowthFunction v = GrowthFunction::polynomial({Int(1), Int(0), Int(1)}, 30);  // minimal L = 3
  CHECK_THROWS_AS(normalize_bgd(v, Int(2)), InvalidWitness);
}

TEST_CASE("normalize output satisfies the tree hypotheses and keeps the growth type") {
  std::mt19937_64 rng(101);
  for (long L = 1; L <= 5; ++L) {
    for (int trial = 0; trial < 3; ++trial) {
      GrowthFunction v = corpus::bgd_sequence(rng, 200, L);
      Int Lmin = check_bgd(v).witness->L;
      NormalizationReport rep = normalize_bgd(v, Lmin);
      CHECK(rep.output.at(0) == 1);
      CHECK(rep.ell == static_cast<long>(mpz_sizeinbase(Lmin.get_mpz_t(), 2)));
      CHECK(rep.output.horizon() == rep.ell * v.horizon());
      CHECK_FALSE(check_tree_hypotheses(rep.output, rep.lambda_num, rep.lambda_den, rep.growth_C));
      CHECK(growth_type_equivalent(v, rep.output, Int(1000)).ok());
    }
  }
}

TEST_CASE("normalize handles huge values via precision escalation") {
  GrowthFunction v = GrowthFunction::geometric(Int(3), Int(1), 120);  // 3^n, ~190 bits
  NormalizationReport rep = normalize_bgd(v, Int(3));
  CHECK(rep.ell == 2);
  CHECK_FALSE(check_tree_hypotheses(rep.output, rep.lambda_num, rep.lambda_den, rep.growth_C));
  CHECK(rep.precision_bits >= 190);
}

namespace {

// O(N^2) chord-minimum oracle: u(n) = min over i <= n <= j of the chord
// through (i, v(i)) and (j, v(j)).
std::vector<Rat> minorant_oracle(const GrowthFunction& v) {
  const long N = v.horizon();
  std::vector<Rat> out;
  for (long n = 0; n <= N; ++n) {
    Rat best(v.at(n));
    for (long i = 0; i <= n; ++i) {
      for (long j = n; j <= N; ++j) {
        if (i == j) continue;
        Rat val = Rat(v.at(i)) + Rat(v.at(j) - v.at(i)) * Rat(n - i) / Rat(j - i);
        if (val < best) best = val;
      }
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace

TEST_CASE("convex minorant equals the chord oracle") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 25; ++trial) {
    GrowthFunction v = corpus::nondecreasing(rng, corpus::draw(rng, 5, 60));
    ConvexMinorant u = convex_minorant(v);
    std::vector<Rat> oracle = minorant_oracle(v);
    REQUIRE(u.evaluated.size() == oracle.size());
    for (size_t n = 0; n < oracle.size(); ++n) CHECK(u.evaluated[n] == oracle[n]);
  }
}

TEST_CASE("convex minorant is a convex lower bound pinned at the ends") {
  std::mt19937_64 rng(223);
  for (int trial = 0; trial < 25; ++trial) {
    GrowthFunction v = corpus::nondecreasing(rng, 100);
    ConvexMinorant u = convex_minorant(v);
    const long N = v.horizon();
    CHECK(u.evaluated.front() == Rat(v.at(0)));
    CHECK(u.evaluated.back() == Rat(v.at(N)));
    for (long n = 0; n <= N; ++n) CHECK(u.evaluated[static_cast<size_t>(n)] <= Rat(v.at(n)));
    for (long n = 1; n < N; ++n) {
      const auto& a = u.evaluated[static_cast<size_t>(n - 1)];
      const auto& b = u.evaluated[static_cast<size_t>(n)];
      const auto& c = u.evaluated[static_cast<size_t>(n + 1)];
      CHECK(c - b >= b - a);
    }
  }
}

TEST_CASE("suplinear representative for a superlinear input") {
  GrowthFunction v = GrowthFunction::polynomial({Int(1), Int(0), Int(1)}, 80);
  const Int L = check_bgd(v).witness->L;
  GrowthFunction w = suplinear_representative(v, L);
  for (long n = 1; n <= w.horizon(); ++n) {
    CHECK(w.diff(n) >= 2);
    if (n >= 2) CHECK(w.diff(n) <= L * w.diff(n - 1));
  }
  CHECK(growth_type_equivalent(v, w, Int(100)).ok());
}

TEST_CASE("suplinear rejects linear growth") {
  GrowthFunction v = GrowthFunction::affine(Int(1), Int(1), 50);
  CHECK_THROWS_AS(suplinear_representative(v, Int(1)), NotSuperlinear);
  // Linear with noise: the minorant's final slope still stays at the floor.
  GrowthFunction noisy({Int(1), Int(3), Int(5), Int(7), Int(9), Int(11), Int(13)});
  CHECK_THROWS_AS(suplinear_representative(noisy, Int(1), Rat(2)), NotSuperlinear);
}
