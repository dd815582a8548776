// SPDX-License-Identifier: MIT
/**
 * @file interval.hpp
 * @brief Closed real intervals with MPFR endpoints and outward rounding.
 */
#pragma once

#include <mpfr.h>

#include <string>

#include "tamagawa/rational.hpp"

namespace tamagawa {

constexpr mpfr_prec_t kIntervalBits = 256;

class Interval {
 public:
  Interval();
  explicit Interval(const Rational& exact);
  Interval(const Rational& lo, const Rational& hi);
  Interval(const Interval& other);
  Interval& operator=(const Interval& other);
  ~Interval();

  static Interval point(long n) { return Interval(Rational(n)); }
  /// [0, hi] for a rational upper bound.
  static Interval up_to(const Rational& hi) { return Interval(Rational(0), hi); }
  /// [exp(lo_arg), exp(hi_arg)] with outward rounding.
  static Interval exp_range(const Rational& lo_arg, const Rational& hi_arg);
  /// Enclosure of pi.
  static Interval pi();

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  /// Integer power n >= 0.
  Interval pow(unsigned n) const;
  /// Convex hull.
  Interval hull(const Interval& o) const;

  double lo_double() const;
  double hi_double() const;
  double mid_double() const;
  double width_double() const;
  /// Exact midpoint and width as rationals (MPFR values are dyadic).
  Rational lo_rational() const;
  Rational hi_rational() const;

  bool contains(const Rational& x) const;
  bool strictly_below(const Interval& o) const;

  /// Decimal renderings of the endpoints, rounded outward, with `digits` significant digits.
  std::string lo_string(int digits = 12) const;
  std::string hi_string(int digits = 12) const;
  std::string to_string(int digits = 12) const;

  const __mpfr_struct* lo_raw() const { return lo_; }
  const __mpfr_struct* hi_raw() const { return hi_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace tamagawa
