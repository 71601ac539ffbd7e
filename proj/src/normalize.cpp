#include "plumb/normalize.hpp"

#include <algorithm>
#include <stdexcept>

#include "plumb/realball.hpp"

namespace plumb {

namespace {

Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

Int ceil_div(const Int& a, const Int& b) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Smallest integer ell with 2^ell > L.
long smoothing_granularity(const Int& L) {
  return static_cast<long>(mpz_sizeinbase(L.get_mpz_t(), 2));
}

// Smallest D >= 1 with lambda = (2D-1)/D strictly above alpha_hi; alpha < 2
// guarantees termination.
long lambda_denominator(const Rat& alpha_hi) {
  for (long D = 1;; ++D) {
    if (Rat(2 * D - 1, D) > alpha_hi) return D;
  }
}

Int dominator_constant(const std::vector<Int>& w, const Int& lambda_num, const Int& lambda_den) {
  Int best = 1, num_pow = 1, den_pow = 1;
  for (const Int& wn : w) {
    Int c = ceil_div(wn * den_pow, num_pow);
    if (c > best) best = c;
    num_pow *= lambda_num;
    den_pow *= lambda_den;
  }
  return best;
}

// Validates the two increment bullets on candidate values; -1 if fine,
// else the first bad index n (bullet at positions n+1, n+2).
long first_bullet_violation(const std::vector<Int>& w) {
  for (size_t n = 0; n + 2 < w.size(); ++n) {
    Int d2 = w[n + 2] - w[n + 1];
    Int d1 = w[n + 1] - w[n];
    if (d2 < 2 || d2 > 2 * d1) return static_cast<long>(n);
  }
  return -1;
}

struct Candidate {
  std::vector<Int> w;
  Int shift;
  bool patched = false;
};

// Shift to w(0)=1 and clamp the increments to the tree budget: the root
// emits at most 2 edges and each level at most doubles, so the first
// increment is pinned to 2 and later ones capped at twice the previous.
Candidate finalize_candidate(std::vector<Int> w) {
  Candidate c;
  c.shift = w[0] - 1;
  for (Int& x : w) x -= c.shift;
  if (w.size() >= 2) {
    std::vector<Int> d;
    d.reserve(w.size() - 1);
    for (size_t i = 1; i < w.size(); ++i) d.push_back(w[i] - w[i - 1]);
    if (d[0] != 2) {
      d[0] = 2;
      c.patched = true;
    }
    for (size_t i = 1; i < d.size(); ++i)
      if (d[i] > 2 * d[i - 1]) {
        d[i] = 2 * d[i - 1];
        c.patched = true;
      }
    for (size_t i = 1; i < w.size(); ++i) w[i] = w[i - 1] + d[i - 1];
  }
  c.w = std::move(w);
  return c;
}

NormalizationReport normalize_exact_l1(const GrowthFunction& v) {
  // L = 1: the recursion coefficient degenerates; z = v with ell = 1.
  Int dmin = v.diff(1);
  for (long n = 2; n <= v.horizon(); ++n) dmin = std::min(dmin, v.diff(n));
  Int C = ceil_div(Int(2), dmin);
  if (C < 1) C = 1;
  for (;; ++C) {
    std::vector<Int> w;
    w.reserve(v.values().size());
    for (const Int& x : v.values()) w.push_back(C * x);
    Candidate cand = finalize_candidate(std::move(w));
    if (first_bullet_violation(cand.w) < 0) {
      NormalizationReport rep;
      rep.input = v;
      rep.output = GrowthFunction(cand.w);
      rep.ell = 1;
      rep.C = C;
      rep.shift = cand.shift;
      rep.precision_bits = 0;
      rep.prefix_patched = cand.patched;
      rep.lambda_num = 3;
      rep.lambda_den = 2;
      rep.growth_C = dominator_constant(cand.w, rep.lambda_num, rep.lambda_den);
      return rep;
    }
  }
}

}  // namespace

NormalizationReport normalize_bgd(const GrowthFunction& v, const Int& L) {
  if (v.horizon() < 2) throw std::invalid_argument("normalize_bgd: horizon must be >= 2");
  BgdCheck chk = check_bgd(v);
  if (!chk.ok() || chk.witness->L > L)
    throw InvalidWitness("normalize_bgd: L=" + L.get_str() + " is not a bgd witness for v");

  if (L == 1) return normalize_exact_l1(v);

  const long ell = smoothing_granularity(L);
  const long N = v.horizon();
  const long M = ell * N;

  Int dmin = v.diff(1);
  for (long n = 2; n <= N; ++n) dmin = std::min(dmin, v.diff(n));
  // dmin >= 1: the bgd check rejects any zero increment, including the first.

  mpfr_prec_t prec =
      std::max<mpfr_prec_t>(128, static_cast<mpfr_prec_t>(mpz_sizeinbase(v.at(N).get_mpz_t(), 2)) + 64);
  const mpfr_prec_t prec_cap = prec * 64;

  for (; prec <= prec_cap; prec *= 2) {
    Ball alpha = Ball::root_of_int(L, static_cast<unsigned long>(ell), prec);
    Ball one = Ball::exact_int(1, prec);
    Int Lm1 = L - 1;

    // gamma_s = (alpha^s - 1)/(L - 1); gamma_ell telescopes to exactly 1.
    std::vector<Ball> gamma;
    gamma.reserve(static_cast<size_t>(ell) + 1);
    Ball pw = one;
    for (long s = 0; s <= ell; ++s) {
      gamma.push_back(pw.sub(one).div_int(Lm1));
      pw = pw.mul(alpha);
    }
    if (!gamma.back().contains_int(1)) continue;  // enclosure too loose

    // z(k*ell + s) = v(k) + gamma_s * (v(k+1) - v(k)); exact at multiples.
    std::vector<Ball> z;
    z.reserve(static_cast<size_t>(M) + 1);
    for (long k = 0; k < N; ++k) {
      Int dv = v.diff(k + 1);
      for (long s = 0; s < ell; ++s) z.push_back(gamma[static_cast<size_t>(s)].mul_int(dv).add_int(v.at(k)));
    }
    z.push_back(Ball::exact_int(v.at(N), prec));

    // Scan C upward from ceil(2 / ((2 - alpha) * min increment of z)).
    Rat two_minus_alpha = Rat(2) - alpha.hi_rat();
    Rat beta_lo = gamma[1].lo_rat();
    if (two_minus_alpha <= 0 || beta_lo <= 0) continue;
    Rat denom = two_minus_alpha * beta_lo * Rat(dmin);
    Rat c0 = Rat(2) / denom;
    Int C = ceil_div(c0.get_num(), c0.get_den());
    if (C < 1) C = 1;

    // Theory puts a working C within a factor 3/2 of the starting point; the
    // extra slack keeps the scan finite if flooring is unlucky.
    Int C_limit = C * 2 + 16;
    bool precision_ok = true;
    for (; C <= C_limit && precision_ok; ++C) {
      std::vector<Int> w;
      w.reserve(z.size());
      for (const Ball& b : z) {
        Int f;
        if (!b.mul_int(C).floor_certified(f)) {
          precision_ok = false;
          break;
        }
        w.push_back(f);
      }
      if (!precision_ok) break;  // escalate precision
      Candidate cand = finalize_candidate(std::move(w));
      if (first_bullet_violation(cand.w) >= 0) continue;

      NormalizationReport rep;
      rep.input = v;
      rep.output = GrowthFunction(cand.w);
      rep.ell = ell;
      rep.C = C;
      rep.shift = cand.shift;
      rep.precision_bits = static_cast<long>(prec);
      rep.prefix_patched = cand.patched;
      rep.lambda_den = lambda_denominator(alpha.hi_rat());
      rep.lambda_num = 2 * rep.lambda_den - 1;
      rep.growth_C = dominator_constant(cand.w, rep.lambda_num, rep.lambda_den);
      return rep;
    }
    if (precision_ok)
      throw PrecisionExhausted("normalize_bgd: no C up to " + C_limit.get_str() +
                               " validates at precision " + std::to_string(prec));
  }
  throw PrecisionExhausted("normalize_bgd: certified floors unreachable below precision cap");
}

ConvexMinorant convex_minorant(const GrowthFunction& v) {
  const long N = v.horizon();
  if (N < 1) throw std::invalid_argument("convex_minorant: horizon must be >= 1");

  // Monotone-chain lower hull; collinear points stay, so affine stretches of
  // v keep all their breakpoints.
  std::vector<std::pair<long, Int>> hull;
  for (long n = 0; n <= N; ++n) {
    while (hull.size() >= 2) {
      const auto& [x1, y1] = hull[hull.size() - 2];
      const auto& [x2, y2] = hull[hull.size() - 1];
      Int cross = Int(x2 - x1) * (v.at(n) - y1) - (y2 - y1) * Int(n - x1);
      if (cross < 0)
        hull.pop_back();  // middle point strictly above the chord
      else
        break;
    }
    hull.emplace_back(n, v.at(n));
  }

  ConvexMinorant out;
  out.evaluated.reserve(static_cast<size_t>(N) + 1);
  size_t seg = 0;
  for (long n = 0; n <= N; ++n) {
    while (seg + 1 < hull.size() && hull[seg + 1].first < n) ++seg;
    const auto& [x1, y1] = hull[seg];
    if (n == x1) {
      out.evaluated.emplace_back(y1);
    } else {
      const auto& [x2, y2] = hull[seg + 1];
      Rat val = Rat(y1) + Rat(y2 - y1, x2 - x1) * Rat(n - x1);
      val.canonicalize();
      out.evaluated.push_back(val);
    }
  }
  out.breakpoints = std::move(hull);
  return out;
}

GrowthFunction suplinear_representative(const GrowthFunction& v, const Int& L,
                                        const Rat& min_final_increment) {
  const long N = v.horizon();
  if (N < 2) throw std::invalid_argument("suplinear_representative: horizon must be >= 2");
  if (L < 1) throw std::invalid_argument("suplinear_representative: L must be >= 1");
  for (long n = 1; n + 1 <= N; ++n) {
    if (v.diff(n + 1) > L * v.diff(n))
      throw std::invalid_argument("suplinear_representative: one-sided bgd bound fails at n=" +
                                  std::to_string(n));
  }

  ConvexMinorant u = convex_minorant(v);
  Rat final_inc = u.evaluated.back() - u.evaluated[u.evaluated.size() - 2];
  if (!(final_inc > min_final_increment))
    throw NotSuperlinear("suplinear_representative: final minorant increment " +
                         final_inc.get_str() + " does not exceed threshold");

  std::vector<Int> w0;
  w0.reserve(static_cast<size_t>(N) + 1);
  for (long n = 0; n <= N; ++n) w0.push_back(v.at(n) + floor_rat(u.evaluated[static_cast<size_t>(n)]));

  std::vector<Int> inc(static_cast<size_t>(N) + 1);
  for (long n = 1; n <= N; ++n) inc[static_cast<size_t>(n)] = std::max(Int(w0[n] - w0[n - 1]), Int(2));
  // Backward repair: flooring can leave w'(n) a hair above L*w'(n-1); lift
  // the earlier increment instead of the later one so divergence survives.
  for (long n = N; n >= 2; --n) {
    Int need = ceil_div(inc[static_cast<size_t>(n)], L);
    if (inc[static_cast<size_t>(n - 1)] < need) inc[static_cast<size_t>(n - 1)] = need;
  }

  std::vector<Int> w;
  w.reserve(static_cast<size_t>(N) + 1);
  w.push_back(w0[0]);
  for (long n = 1; n <= N; ++n) w.push_back(w.back() + inc[static_cast<size_t>(n)]);
  return GrowthFunction(std::move(w));
}

}  // namespace plumb
