#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "plumb/errors.hpp"

namespace plumb {

using Int = mpz_class;
using Rat = mpq_class;

/// Tabulated nondecreasing sequence of nonnegative integers over a finite
/// horizon. Index 0..horizon(); values are arbitrary precision.
class GrowthFunction {
 public:
  GrowthFunction() = default;
  explicit GrowthFunction(std::vector<Int> values);

  long horizon() const { return static_cast<long>(values_.size()) - 1; }
  const Int& at(long n) const;
  const Int& operator[](long n) const { return values_[static_cast<size_t>(n)]; }
  const std::vector<Int>& values() const { return values_; }

  /// First difference v(n) - v(n-1), defined for 1 <= n <= horizon.
  Int diff(long n) const;

  bool operator==(const GrowthFunction& other) const { return values_ == other.values_; }

  // Closed-form generators, tabulated on construction.
  static GrowthFunction affine(const Int& a, const Int& b, long horizon);        // a*n + b
  static GrowthFunction geometric(const Int& base, const Int& scale, long horizon);  // scale*base^n
  static GrowthFunction polynomial(const std::vector<Int>& coeffs, long horizon);    // sum c_i n^i
  static GrowthFunction identity(long horizon);  // v(n) = n

 private:
  std::vector<Int> values_;
};

struct BgdWitness {
  Int L;  // minimal constant, >= 1
};

struct NotBgd {
  long index;  // first n with a violated inequality
  std::string reason;
};

struct BgdCheck {
  std::optional<BgdWitness> witness;
  std::optional<NotBgd> failure;
  bool ok() const { return witness.has_value(); }
};

/// Minimal L >= 1 with 1 <= v(n+2)-v(n+1) <= L*(v(n+1)-v(n)) over the horizon.
BgdCheck check_bgd(const GrowthFunction& v);

struct CurvatureParams {
  int m;      // dimension, >= 2
  Rat kappa;  // Ricci lower bound scale, > 0
};

/// Upper-bound evaluation of (e^kappa / (1 - e^{-2 kappa}))^{m-1} with at
/// least 12 significant digits; the returned rational is >= the true value.
Rat bgd_constant_from_curvature(const CurvatureParams& p);

struct EquivalenceWitness {
  Int A;
  long horizon_checked;  // largest n with A*n + A inside both horizons
};

struct EquivalenceResult {
  std::optional<EquivalenceWitness> witness;
  bool ok() const { return witness.has_value(); }
};

/// Minimal A <= A_max with w(n) <= A v(An+A) + A and v(n) <= A w(An+A) + A
/// over the shrinking index range; empty result if no A works.
EquivalenceResult growth_type_equivalent(const GrowthFunction& v, const GrowthFunction& w,
                                         const Int& A_max);

struct HypothesisViolation {
  enum class Bullet { RootValue, IncrementLower, IncrementUpper, GrowthBound };
  Bullet bullet;
  long index;
};

const char* bullet_name(HypothesisViolation::Bullet b);

/// Checks v(0)=1, 2 <= v(n+2)-v(n+1) <= 2(v(n+1)-v(n)), and
/// v(n) <= C*(lambda_num/lambda_den)^n, exactly in integers.
/// Empty optional means Pass.
std::optional<HypothesisViolation> check_tree_hypotheses(const GrowthFunction& v,
                                                         const Int& lambda_num,
                                                         const Int& lambda_den, const Int& C);

}  // namespace plumb
