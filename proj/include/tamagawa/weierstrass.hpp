// SPDX-License-Identifier: MIT
/**
 * @file weierstrass.hpp
 * @brief Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a LocalRing.
 */
#pragma once

#include "tamagawa/local_ring.hpp"

namespace tamagawa {

struct WeierstrassModel {
  LocalElem a1, a2, a3, a4, a6;

  /// Short form y^2 = x^3 + a4 x + a6.
  static WeierstrassModel short_form(const LocalElem& a4, const LocalElem& a6);
  /// Model from integer coefficients, exact in the ring.
  static WeierstrassModel from_ints(const LocalRing& ring, int64_t a1, int64_t a2, int64_t a3, int64_t a4,
                                    int64_t a6);
  /// Lowest precision among the five coefficients.
  int precision() const;
};

struct Invariants {
  LocalElem b2, b4, b6, b8, c4, c6, delta;
};

Invariants invariants(const WeierstrassModel& m);
LocalElem discriminant(const WeierstrassModel& m);

/// Substitution x = x' + r, y = y' + s x' + t.
WeierstrassModel rst_transform(const WeierstrassModel& m, const LocalElem& r, const LocalElem& s,
                               const LocalElem& t);

/// (x, y) -> (u^2 x, u^3 y) for a unit u: a_i -> a_i u^i.
WeierstrassModel scale_by_unit(const WeierstrassModel& m, const LocalElem& u);

/// The Step-11 rescaling a_i -> a_i / pi^i, applied k times.
WeierstrassModel rescale(const WeierstrassModel& m, int k = 1);

/// x -> x - a2/3; requires 3 to be a unit.
WeierstrassModel shift_eliminate_a2(const WeierstrassModel& m);

}  // namespace tamagawa
