// SPDX-License-Identifier: MIT
/**
 * @file interval.cpp
 * @brief MPFR interval arithmetic with directed rounding.
 */
#include "tamagawa/interval.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

#include "tamagawa/errors.hpp"

namespace tamagawa {

namespace {

void set_rational(mpfr_t out, const Rational& x, mpfr_rnd_t rnd) { mpfr_set_q(out, x.get_mpq_t(), rnd); }

Rational to_rational(const mpfr_t x) {
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational r(m);
  if (e >= 0) {
    mpz_class s;
    mpz_mul_2exp(s.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    r *= s;
  } else {
    mpz_class s;
    mpz_mul_2exp(s.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    r /= s;
  }
  r.canonicalize();
  return r;
}

std::string render(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits) + "R" + (rnd == MPFR_RNDD ? "D" : "U") + "g";
  if (mpfr_asprintf(&buf, fmt.c_str(), x) < 0) throw Error(ErrorCode::InvalidArgument, "mpfr_asprintf failed");
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

Interval::Interval() {
  mpfr_init2(lo_, kIntervalBits);
  mpfr_init2(hi_, kIntervalBits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& exact) : Interval(exact, exact) {}

Interval::Interval(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw Error(ErrorCode::InvalidArgument, "interval with lo > hi");
  mpfr_init2(lo_, kIntervalBits);
  mpfr_init2(hi_, kIntervalBits);
  set_rational(lo_, lo, MPFR_RNDD);
  set_rational(hi_, hi, MPFR_RNDU);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, kIntervalBits);
  mpfr_init2(hi_, kIntervalBits);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::exp_range(const Rational& lo_arg, const Rational& hi_arg) {
  Interval r(lo_arg, hi_arg);
  mpfr_exp(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pi() {
  Interval r;
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r;
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r;
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  Interval r;
  if (mpfr_sgn(lo_) >= 0 && mpfr_sgn(o.lo_) >= 0) {
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
  }
  mpfr_t t;
  mpfr_init2(t, kIntervalBits);
  const __mpfr_struct* a[2] = {lo_, hi_};
  const __mpfr_struct* b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a)
    for (auto y : b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval Interval::pow(unsigned n) const {
  Interval r = point(1);
  Interval base = *this;
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

Interval Interval::hull(const Interval& o) const {
  Interval r;
  mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double Interval::mid_double() const { return 0.5 * (lo_double() + hi_double()); }
double Interval::width_double() const {
  mpfr_t w;
  mpfr_init2(w, kIntervalBits);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}
Rational Interval::lo_rational() const { return to_rational(lo_); }
Rational Interval::hi_rational() const { return to_rational(hi_); }

bool Interval::contains(const Rational& x) const { return lo_rational() <= x && x <= hi_rational(); }

bool Interval::strictly_below(const Interval& o) const { return mpfr_less_p(hi_, o.lo_) != 0; }

std::string Interval::lo_string(int digits) const { return render(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_string(int digits) const { return render(hi_, digits, MPFR_RNDU); }
std::string Interval::to_string(int digits) const { return "[" + lo_string(digits) + ", " + hi_string(digits) + "]"; }

}  // namespace tamagawa
