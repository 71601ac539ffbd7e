#include "plumb/growth.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace plumb {

GrowthFunction::GrowthFunction(std::vector<Int> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("GrowthFunction: empty value table");
  if (values_.front() < 0) throw std::invalid_argument("GrowthFunction: negative value");
  for (size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] < values_[i - 1])
      throw std::invalid_argument("GrowthFunction: not nondecreasing at index " +
                                  std::to_string(i));
  }
}

const Int& GrowthFunction::at(long n) const {
  if (n < 0 || n > horizon())
    throw IndexOutOfHorizon("GrowthFunction::at(" + std::to_string(n) + "), horizon " +
                            std::to_string(horizon()));
  return values_[static_cast<size_t>(n)];
}

Int GrowthFunction::diff(long n) const {
  if (n < 1 || n > horizon())
    throw IndexOutOfHorizon("diff(" + std::to_string(n) + ") outside [1," +
                            std::to_string(horizon()) + "]");
  return values_[static_cast<size_t>(n)] - values_[static_cast<size_t>(n - 1)];
}

GrowthFunction GrowthFunction::affine(const Int& a, const Int& b, long horizon) {
  std::vector<Int> vals;
  vals.reserve(static_cast<size_t>(horizon) + 1);
  for (long n = 0; n <= horizon; ++n) vals.push_back(a * n + b);
  return GrowthFunction(std::move(vals));
}

GrowthFunction GrowthFunction::geometric(const Int& base, const Int& scale, long horizon) {
  std::vector<Int> vals;
  vals.reserve(static_cast<size_t>(horizon) + 1);
  Int p = scale;
  for (long n = 0; n <= horizon; ++n) {
    vals.push_back(p);
    p *= base;
  }
  return GrowthFunction(std::move(vals));
}

GrowthFunction GrowthFunction::polynomial(const std::vector<Int>& coeffs, long horizon) {
  std::vector<Int> vals;
  vals.reserve(static_cast<size_t>(horizon) + 1);
  for (long n = 0; n <= horizon; ++n) {
    Int acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * n + coeffs[i];
    vals.push_back(acc);
  }
  return GrowthFunction(std::move(vals));
}

GrowthFunction GrowthFunction::identity(long horizon) {
  std::vector<Int> vals;
  vals.reserve(static_cast<size_t>(horizon) + 1);
  for (long n = 0; n <= horizon; ++n) vals.push_back(n);
  return GrowthFunction(std::move(vals));
}

BgdCheck check_bgd(const GrowthFunction& v) {
  if (v.horizon() < 2) throw std::invalid_argument("check_bgd: horizon must be >= 2");
  Int L = 1;
  for (long n = 0; n + 2 <= v.horizon(); ++n) {
    Int upper = v.diff(n + 2);
    Int lower = v.diff(n + 1);
    if (upper == 0) {
      return {std::nullopt, NotBgd{n, "v(n+2)-v(n+1) = 0"}};
    }
    if (lower == 0) {
      // upper > 0 over a zero previous increment: no L works.
      return {std::nullopt, NotBgd{n, "positive increment after a zero increment"}};
    }
    Int needed;  // ceil(upper / lower)
    mpz_cdiv_q(needed.get_mpz_t(), upper.get_mpz_t(), lower.get_mpz_t());
    if (needed > L) L = needed;
  }
  return {BgdWitness{L}, std::nullopt};
}

namespace {

// Converts an mpfr value to the exact rational it represents.
Rat mpfr_to_rat(mpfr_srcptr x) {
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  Rat r(mant);
  if (e >= 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
    r *= Rat(p);
  } else {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    r /= Rat(p);
  }
  return r;
}

}  // namespace

Rat bgd_constant_from_curvature(const CurvatureParams& p) {
  if (p.m < 2) throw std::invalid_argument("bgd_constant_from_curvature: m must be >= 2");
  if (p.kappa <= 0) throw std::invalid_argument("bgd_constant_from_curvature: kappa must be > 0");

  for (mpfr_prec_t prec = 128;; prec *= 2) {
    if (prec > 1 << 20) throw PrecisionExhausted("bgd_constant_from_curvature");
    mpfr_t k, num, den, lo, hi;
    mpfr_inits2(prec, k, num, den, lo, hi, static_cast<mpfr_ptr>(nullptr));

    // Upper endpoint: e^k up, (1 - e^{-2k}) down, quotient up, power up.
    mpfr_set_q(k, p.kappa.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(num, k, MPFR_RNDU);
    mpfr_set_q(k, p.kappa.get_mpq_t(), MPFR_RNDU);
    mpfr_mul_si(den, k, -2, MPFR_RNDD);
    mpfr_exp(den, den, MPFR_RNDU);
    mpfr_ui_sub(den, 1, den, MPFR_RNDD);
    mpfr_div(hi, num, den, MPFR_RNDU);
    mpfr_pow_ui(hi, hi, static_cast<unsigned long>(p.m - 1), MPFR_RNDU);

    // Lower endpoint, rounded the other way.
    mpfr_set_q(k, p.kappa.get_mpq_t(), MPFR_RNDD);
    mpfr_exp(num, k, MPFR_RNDD);
    mpfr_set_q(k, p.kappa.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_si(den, k, -2, MPFR_RNDU);
    mpfr_exp(den, den, MPFR_RNDD);
    mpfr_ui_sub(den, 1, den, MPFR_RNDU);
    mpfr_div(lo, num, den, MPFR_RNDD);
    mpfr_pow_ui(lo, lo, static_cast<unsigned long>(p.m - 1), MPFR_RNDD);

    // Accept once the enclosure is tighter than 1e-13 relative.
    mpfr_t width;
    mpfr_init2(width, prec);
    mpfr_sub(width, hi, lo, MPFR_RNDU);
    mpfr_div(width, width, lo, MPFR_RNDU);
    bool tight = mpfr_cmp_d(width, 1e-13) < 0;
    Rat result = mpfr_to_rat(hi);
    mpfr_clears(k, num, den, lo, hi, width, static_cast<mpfr_ptr>(nullptr));
    if (tight) return result;
  }
}

EquivalenceResult growth_type_equivalent(const GrowthFunction& v, const GrowthFunction& w,
                                         const Int& A_max) {
  if (v.horizon() < 2 || w.horizon() < 2)
    throw std::invalid_argument("growth_type_equivalent: horizons must be >= 2");
  if (A_max < 1) throw std::invalid_argument("growth_type_equivalent: A_max must be >= 1");
  long min_h = std::min(v.horizon(), w.horizon());
  if (min_h < 1) throw DegenerateRange("growth_type_equivalent: empty check range at A=1");

  for (Int A = 1; A <= A_max; ++A) {
    long a = A.get_si();
    long n_max = min_h / a - 1;  // largest n with A*n + A <= min_h
    if (n_max < 0) break;        // range only shrinks as A grows
    bool ok = true;
    for (long n = 0; n <= n_max && ok; ++n) {
      long arg = a * n + a;
      if (w.at(n) > A * v.at(arg) + A) ok = false;
      if (ok && v.at(n) > A * w.at(arg) + A) ok = false;
    }
    if (ok) return {EquivalenceWitness{A, n_max}};
  }
  return {std::nullopt};
}

const char* bullet_name(HypothesisViolation::Bullet b) {
  switch (b) {
    case HypothesisViolation::Bullet::RootValue: return "v(0)=1";
    case HypothesisViolation::Bullet::IncrementLower: return "increment >= 2";
    case HypothesisViolation::Bullet::IncrementUpper: return "increment <= 2x previous";
    case HypothesisViolation::Bullet::GrowthBound: return "growth bound";
  }
  return "?";
}

std::optional<HypothesisViolation> check_tree_hypotheses(const GrowthFunction& v,
                                                         const Int& lambda_num,
                                                         const Int& lambda_den, const Int& C) {
  if (lambda_num <= 0 || lambda_den <= 0 || lambda_num >= 2 * lambda_den)
    throw std::invalid_argument("check_tree_hypotheses: need 0 < lambda < 2");
  if (C < 1) throw std::invalid_argument("check_tree_hypotheses: need C >= 1");

  using Bullet = HypothesisViolation::Bullet;
  if (v.at(0) != 1) return HypothesisViolation{Bullet::RootValue, 0};
  for (long n = 0; n + 2 <= v.horizon(); ++n) {
    Int d2 = v.diff(n + 2);
    if (d2 < 2) return HypothesisViolation{Bullet::IncrementLower, n};
    if (d2 > 2 * v.diff(n + 1)) return HypothesisViolation{Bullet::IncrementUpper, n};
  }
  Int num_pow = 1, den_pow = 1;
  for (long n = 0; n <= v.horizon(); ++n) {
    if (v[n] * den_pow > C * num_pow) return HypothesisViolation{Bullet::GrowthBound, n};
    num_pow *= lambda_num;
    den_pow *= lambda_den;
  }
  return std::nullopt;
}

}  // namespace plumb
