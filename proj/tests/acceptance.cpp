// Acceptance harness: one pass/fail line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "plumb/assembly.hpp"
#include "plumb/catalog.hpp"
#include "plumb/growth.hpp"
#include "plumb/normalize.hpp"
#include "plumb/tree.hpp"

using namespace plumb;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CatalogParams standard_params(long J) {
  CatalogParams p;
  p.ell = 3;
  p.h = 1;
  p.H = 2;
  for (long j = 0; j < J; ++j) p.qs.push_back({1, 2, 3, 1});
  return p;
}

// Shared corpus for criteria 1 and 2.
struct TreeCase {
  GrowthFunction v;
  SparseSet S;
  AdmissibleTree t;
};
std::vector<TreeCase> g_trees;

// Independent hull oracle: gift wrapping by minimum chord slope, farthest
// point on ties, evaluated by linear interpolation.
std::vector<Rat> wrap_minorant(const GrowthFunction& v) {
  const long N = v.horizon();
  std::vector<Rat> out(static_cast<size_t>(N) + 1);
  long cur = 0;
  out[0] = Rat(v.at(0));
  while (cur < N) {
    long next = cur + 1;
    Rat best = Rat(v.at(next) - v.at(cur));
    for (long k = cur + 2; k <= N; ++k) {
      Rat slope = Rat(v.at(k) - v.at(cur), k - cur);
      slope.canonicalize();
      if (slope <= best) {
        best = slope;
        next = k;
      }
    }
    for (long n = cur; n <= next; ++n)
      out[static_cast<size_t>(n)] = Rat(v.at(cur)) + Rat(n - cur) * best;
    cur = next;
  }
  return out;
}

Rat interp(const GrowthFunction& v, const Rat& x) {
  Int fl = x.get_num() / x.get_den();
  long i = fl.get_si();
  Rat fr = x - Rat(fl);
  if (sgn(fr) == 0) return Rat(v.at(i));
  return Rat(v.at(i)) + fr * Rat(v.at(i + 1) - v.at(i));
}

void criterion_tree_exactness() {
  std::mt19937_64 rng(1001);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t0 = std::chrono::steady_clock::now();
    GrowthFunction v = corpus::tree_ready(rng, 500);
    SparseSet S = corpus::sparse(rng, 500);
    AdmissibleTree t = build_tree(v, S);
    require(root_growth(t) == v, "root growth mismatch at trial " + std::to_string(trial));
    require(seconds_since(t0) < 1.0, "build+verify exceeded 1 s");
    g_trees.push_back({std::move(v), std::move(S), std::move(t)});
  }
}

void criterion_admissibility() {
  require(!g_trees.empty(), "criterion 1 corpus missing");
  for (const TreeCase& tc : g_trees) {
    const AdmissibleTree& t = tc.t;
    require(!verify_admissible(t, t.depth() / 4), "admissibility check failed");
    for (long n = 0; n <= t.depth(); ++n)
      for (long i = 0; i < t.level_size(n); ++i)
        require(t.child_count(n, i) <= 2, "valency above 3");
    for (long n = 0; n < t.depth(); ++n) {
      const int wanted = tc.S.contains(n) ? 1 : 2;
      const int got = t.child_count(n, 0);
      if (got == wanted) continue;
      bool recorded = false;
      for (const RuleSlip& s : t.slips())
        recorded = recorded || (s.level == n && s.wanted == wanted && s.got == got);
      require(recorded, "unrecorded trunk rule deviation at level " + std::to_string(n));
      const long budget = t.level_size(n + 1);
      const long sz = t.level_size(n);
      if (got < wanted) require(budget < wanted, "slip without a tight budget");
      if (got > wanted)
        require(got == budget - 2 * (sz - 1), "raised slip off the budget boundary");
    }
  }
}

void criterion_normalization() {
  std::mt19937_64 rng(1003);
  for (int trial = 0; trial < 20; ++trial) {
    GrowthFunction v = corpus::bgd_sequence(rng, 10000, 1 + trial % 5);
    BgdCheck chk = check_bgd(v);
    require(chk.ok(), "corpus sequence not bgd");
    NormalizationReport rep = normalize_bgd(v, chk.witness->L);
    require(rep.output.at(0) == 1, "output root value");
    require(!check_tree_hypotheses(rep.output, rep.lambda_num, rep.lambda_den, rep.growth_C),
            "output fails the tree hypotheses");
    require(growth_type_equivalent(v, rep.output, Int(1000)).ok(),
            "no equivalence witness below 1000");
  }
}

void criterion_minorant() {
  std::mt19937_64 rng(1004);
  for (int trial = 0; trial < 200; ++trial) {
    GrowthFunction v = corpus::nondecreasing(rng, corpus::draw(rng, 5, 500));
    ConvexMinorant u = convex_minorant(v);
    std::vector<Rat> oracle = wrap_minorant(v);
    require(u.evaluated == oracle, "hull disagrees with the wrapping oracle");
  }
}

void criterion_lemma_z() {
  std::mt19937_64 rng(1005);
  for (int trial = 0; trial < 100; ++trial) {
    CatalogParams p;
    p.ell = corpus::draw(rng, 3, 5);
    p.h = 1;
    p.H = corpus::draw(rng, 1, 3);
    const long J = corpus::draw(rng, 1, 2);
    for (long j = 0; j < J; ++j)
      p.qs.push_back({corpus::draw(rng, 1, 2), corpus::draw(rng, 1, 2), 2,
                      corpus::draw(rng, 0, 1)});
    GrowthFunction v = corpus::tree_ready(rng, corpus::draw(rng, 18, 30), 16);
    ParameterSelection sel = select_parameters(v, p, ParameterSelection::Mode::Infinite);
    AdmissibleTree t = build_tree(v, sel.sparse_set());
    PlumbedComplex c = assign_pieces(t, sel, make_catalog(p, rng(), false), p);
    DiscreteGrowth clean = discrete_growth(c);
    require(!check_lemma_z(c, clean, cumulative_slices(clean)), "clean sandwich violated");

    const long target = c.trunk[1].slice_start;
    long U_max = 0;
    for (const auto& q : p.qs) U_max = std::max(U_max, q.U);
    const long delta = p.H * clean.slice_count[static_cast<size_t>(target)] + U_max + 1;
    for (auto& prof : c.catalog)
      if (prof.kind == c.trunk[1].kind && prof.j == c.trunk[1].j) prof.slice_volumes[0] += delta;
    DiscreteGrowth d = discrete_growth(c);
    auto bad = check_lemma_z(c, d, cumulative_slices(d));
    require(bad.has_value() && bad->upper, "corruption went undetected");
  }
}

void criterion_stretch() {
  GrowthFunction id = GrowthFunction::identity(100);
  require(stretch_R({Rat(1), Rat(1), Rat(3), Rat(2), Rat(3) / 2}, id) == 13,
          "worked instance R");

  std::mt19937_64 rng(1006);
  GrowthFunction v = GrowthFunction::polynomial({Int(0), Int(0), Int(1)}, 2000);
  for (int inst = 0; inst < 20; ++inst) {
    const long a = corpus::draw(rng, 1, 3);
    const long b = corpus::draw(rng, 1, 2);
    const Rat C = corpus::draw(rng, 0, 1) ? Rat(3, 2) : Rat(4, 3);
    const long B = corpus::draw(rng, 2, 3);
    const long A = B + corpus::draw(rng, 1, 2);
    StretchParams p{Rat(a), Rat(b), Rat(A), Rat(B), C};
    const long R = stretch_R(p, v);
    const long top = a + R + b;
    require(2 * B * top <= v.horizon(), "instance outran the tabulation");
    auto frac = [&](const Rat& lo, const Rat& hi) -> Rat {
      return lo + Rat(corpus::draw(rng, 0, 1000), 1000) * (hi - lo);
    };
    for (int sample = 0; sample < 1000; ++sample) {
      std::vector<Rat> zs;
      Rat z(-1);
      for (long x = 0; x <= top; ++x) {
        if (x <= a) {
          Rat lo = interp(v, Rat(x, B)) / B;
          lo.canonicalize();
          if (z > lo) lo = z;
          z = frac(lo, Rat(B) * Rat(v.at(B * x)));
        } else {
          const Rat dv = Rat(v.at(x) - v.at(x - 1));
          const Rat cap = x <= a + R ? p.C : p.A;
          z = z + frac(Rat(1) / cap, cap) * dv;
        }
        zs.push_back(z);
      }
      for (long x = 0; x <= top; ++x) {
        Rat q(x, B);
        q.canonicalize();
        require(interp(v, q) / B <= zs[static_cast<size_t>(x)], "lower conclusion violated");
        require(zs[static_cast<size_t>(x)] <= Rat(B) * Rat(v.at(B * x)),
                "upper conclusion violated");
      }
    }
  }
}

void criterion_finite_type_bound() {
  for (long u : {2L, 3L}) {
    GrowthFunction v = GrowthFunction::affine(Int(2), Int(1), 1000);
    CatalogParams p = standard_params(0);
    for (long j = 0; j < 2; ++j) p.qs.push_back({1, u, u, 1});
    p.finite_type = true;
    auto cat = make_catalog(p, 70 + static_cast<uint64_t>(u), false);
    ParameterSelection sel = select_parameters(v, p, ParameterSelection::Mode::FiniteType, &cat);
    SparseSet S = sel.sparse_set();
    AdmissibleTree t = build_tree(v, S);
    PlumbedComplex c = assign_pieces(t, sel, cat, p);
    DiscreteGrowth d = discrete_growth(c);
    AdmissibleTree t0 = build_tree(depth1_branch_growth(S, t.depth()), S);
    PlumbedComplex c0 = assign_pieces(t0, sel, cat, p);
    DiscreteGrowth d0 = discrete_growth(c0);
    require(d0.z.horizon() >= 1000, "depth-1 assembly too short");
    for (long n = 1; n <= 1000; ++n)
      require(d0.z.at(n) <= Int(4 * u * u) * n, "linear bound broken at n=" + std::to_string(n));
    require(!check_prall_integration(d.z, d0.z, cumulative_slices(d), cumulative_slices(d0), p.h,
                                     p.H),
            "integration bound violated");
  }
}

void criterion_metric_audit() {
  GrowthFunction v = GrowthFunction::polynomial({Int(1), Int(0), Int(1)}, 200);
  SynthesisConfig cfg;
  cfg.seed = 8;
  SynthesisResult res = synthesize(v, standard_params(2), cfg);
  require(!metric_audit(res.complex), "audit violation");
  const long rmax = res.growth.z.horizon();
  std::vector<ContainmentSample> samples;
  require(check_containment(res.complex, res.growth, {3, res.complex.ell + 1, rmax / 2, rmax},
                            &samples),
          "containment violated");
  require(!samples.empty(), "no containment samples");
}

void criterion_end_to_end() {
  struct Case {
    std::string name;
    GrowthFunction v;
    CatalogParams p;
    SynthesisConfig cfg;
  };
  std::vector<Case> cases;
  cases.push_back({"quadratic", GrowthFunction::polynomial({Int(1), Int(0), Int(1)}, 1000),
                   standard_params(2), {}});
  std::vector<Int> pow32{1};
  for (long n = 1; n <= 1000; ++n) {
    Int cube = Int(n) * n * n;
    pow32.push_back(std::max(Int(pow32.back() + 1), Int(sqrt(cube) + 1)));
  }
  cases.push_back({"power-3/2", GrowthFunction(std::move(pow32)), standard_params(2), {}});
  CatalogParams pf = standard_params(0);
  for (long j = 0; j < 2; ++j) pf.qs.push_back({1, 2, 3, 1});
  pf.finite_type = true;
  SynthesisConfig cfgf;
  cfgf.mode = ParameterSelection::Mode::FiniteType;
  cases.push_back({"affine", GrowthFunction::affine(Int(2), Int(1), 1000), pf, cfgf});

  for (auto& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    c.cfg.seed = 17;
    SynthesisResult res = synthesize(c.v, c.p, c.cfg);
    require(res.witness.A <= 1000, c.name + ": witness above 1000");
    require(seconds_since(t0) < 30.0, c.name + ": exceeded 30 s");
  }
}

void criterion_density() {
  CatalogParams p = standard_params(5);
  GrowthFunction v = GrowthFunction::polynomial({Int(1), Int(0), Int(1)}, 2000);
  ParameterSelection sel = select_parameters(v, p, ParameterSelection::Mode::Infinite);
  CatalogParams pf = standard_params(0);
  for (long j = 0; j < 3; ++j) pf.qs.push_back({1, 2, 3, 1});
  pf.finite_type = true;
  GrowthFunction vf = GrowthFunction::affine(Int(2), Int(1), 1200);
  ParameterSelection relf = select_parameters(vf, pf, ParameterSelection::Mode::FiniteType);
  for (const ParameterSelection& s : {sel, relf}) {
    SparseSet S = s.sparse_set();
    for (size_t idx = 1; idx < s.n.size(); ++idx) {
      const long j = static_cast<long>(idx) + 1;
      const long n = s.n[idx];
      require(n >= 2, "schedule too early for a density check");
      Rat dens(S.count_upto(n - 1), n - 1);
      dens.canonicalize();
      require(dens <= Rat(1, j), "density above 1/" + std::to_string(j));
    }
  }
}

struct Criterion {
  const char* label;
  void (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"tree growth exactness", criterion_tree_exactness},
      {"admissibility and trunk rule", criterion_admissibility},
      {"normalization post-conditions", criterion_normalization},
      {"convex minorant oracle", criterion_minorant},
      {"slice-count sandwich", criterion_lemma_z},
      {"stretch lemma", criterion_stretch},
      {"finite-type linear bound", criterion_finite_type_bound},
      {"metric audit and containment", criterion_metric_audit},
      {"end-to-end equivalence", criterion_end_to_end},
      {"schedule density", criterion_density},
  };
  int failures = 0;
  int idx = 0;
  for (const Criterion& c : criteria) {
    ++idx;
    std::string detail;
    try {
      c.run();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    std::printf("criterion %2d %-32s %s\n", idx, c.label, detail.empty() ? "PASS" : "FAIL");
    if (!detail.empty()) {
      std::printf("             %s\n", detail.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
