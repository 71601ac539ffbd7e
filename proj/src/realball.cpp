#include "plumb/realball.hpp"

#include <cassert>
#include <utility>

namespace plumb {

namespace {

Rat mpfr_to_rat(mpfr_srcptr x) {
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  Rat r(mant);
  mpz_class p;
  if (e >= 0) {
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
    r *= Rat(p);
  } else {
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    r /= Rat(p);
  }
  return r;
}

}  // namespace

Ball::Ball(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Ball::Ball(const Ball& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Ball::Ball(Ball&& other) noexcept : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Ball& Ball::operator=(Ball other) {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Ball::~Ball() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Ball Ball::exact_int(const Int& x, mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_set_z(b.lo_, x.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(b.hi_, x.get_mpz_t(), MPFR_RNDU);
  return b;
}

Ball Ball::root_of_int(const Int& x, unsigned long k, mpfr_prec_t prec) {
  assert(x > 0 && k >= 1);
  Ball b(prec);
  mpfr_set_z(b.lo_, x.get_mpz_t(), MPFR_RNDD);
  mpfr_rootn_ui(b.lo_, b.lo_, k, MPFR_RNDD);
  mpfr_set_z(b.hi_, x.get_mpz_t(), MPFR_RNDU);
  mpfr_rootn_ui(b.hi_, b.hi_, k, MPFR_RNDU);
  return b;
}

Ball Ball::add(const Ball& o) const {
  Ball r(prec_);
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Ball Ball::sub(const Ball& o) const {
  Ball r(prec_);
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Ball Ball::mul(const Ball& o) const {
  assert(mpfr_sgn(lo_) >= 0 && mpfr_sgn(o.lo_) >= 0);
  Ball r(prec_);
  mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Ball Ball::mul_int(const Int& x) const {
  assert(x >= 0);
  Ball r(prec_);
  mpfr_mul_z(r.lo_, lo_, x.get_mpz_t(), MPFR_RNDD);
  mpfr_mul_z(r.hi_, hi_, x.get_mpz_t(), MPFR_RNDU);
  return r;
}

Ball Ball::div_int(const Int& x) const {
  assert(x > 0);
  Ball r(prec_);
  mpfr_div_z(r.lo_, lo_, x.get_mpz_t(), MPFR_RNDD);
  mpfr_div_z(r.hi_, hi_, x.get_mpz_t(), MPFR_RNDU);
  return r;
}

Ball Ball::add_int(const Int& x) const {
  Ball r(prec_);
  mpfr_add_z(r.lo_, lo_, x.get_mpz_t(), MPFR_RNDD);
  mpfr_add_z(r.hi_, hi_, x.get_mpz_t(), MPFR_RNDU);
  return r;
}

bool Ball::floor_certified(Int& out) const {
  Int flo, fhi;
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_floor(t, lo_);
  mpfr_get_z(flo.get_mpz_t(), t, MPFR_RNDN);
  mpfr_floor(t, hi_);
  mpfr_get_z(fhi.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  if (flo != fhi) return false;
  out = flo;
  return true;
}

bool Ball::contains_int(const Int& x) const {
  return mpfr_cmp_z(lo_, x.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_, x.get_mpz_t()) >= 0;
}

Rat Ball::lo_rat() const { return mpfr_to_rat(lo_); }
Rat Ball::hi_rat() const { return mpfr_to_rat(hi_); }

}  // namespace plumb
