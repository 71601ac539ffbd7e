#pragma once

#include <mpfr.h>

#include "plumb/growth.hpp"

namespace plumb {

/// Closed interval [lo, hi] with MPFR endpoints and directed rounding.
/// Enough arithmetic for the certified-floor computations in normalize_bgd;
/// multiplication assumes nonnegative operands (all quantities there are).
class Ball {
 public:
  explicit Ball(mpfr_prec_t prec);
  Ball(const Ball& other);
  Ball(Ball&& other) noexcept;
  Ball& operator=(Ball other);
  ~Ball();

  mpfr_prec_t precision() const { return prec_; }

  static Ball exact_int(const Int& x, mpfr_prec_t prec);
  /// Enclosure of the k-th root of a positive integer.
  static Ball root_of_int(const Int& x, unsigned long k, mpfr_prec_t prec);

  Ball add(const Ball& o) const;
  Ball sub(const Ball& o) const;  // general; endpoints cross over
  Ball mul(const Ball& o) const;  // requires lo >= 0 on both sides
  Ball mul_int(const Int& x) const;  // x >= 0
  Ball div_int(const Int& x) const;  // x > 0
  Ball add_int(const Int& x) const;

  /// True iff floor is the same at both endpoints; sets out to it.
  bool floor_certified(Int& out) const;

  bool contains_int(const Int& x) const;
  Rat lo_rat() const;
  Rat hi_rat() const;
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

}  // namespace plumb
