// SPDX-License-Identifier: MIT
#include "tamagawa/weierstrass.hpp"

#include <algorithm>

namespace tamagawa {

WeierstrassModel WeierstrassModel::short_form(const LocalElem& a4, const LocalElem& a6) {
  LocalElem zero = a4.make_int(0);
  return WeierstrassModel{zero, zero, zero, a4, a6};
}

WeierstrassModel WeierstrassModel::from_ints(const LocalRing& ring, int64_t a1, int64_t a2, int64_t a3, int64_t a4,
                                             int64_t a6) {
  return WeierstrassModel{ring.from_int(a1), ring.from_int(a2), ring.from_int(a3), ring.from_int(a4),
                          ring.from_int(a6)};
}

int WeierstrassModel::precision() const {
  return std::min({a1.precision(), a2.precision(), a3.precision(), a4.precision(), a6.precision()});
}

Invariants invariants(const WeierstrassModel& m) {
  Invariants v;
  v.b2 = m.a1 * m.a1 + m.a2 * 4;
  v.b4 = m.a4 * 2 + m.a1 * m.a3;
  v.b6 = m.a3 * m.a3 + m.a6 * 4;
  v.b8 = m.a1 * m.a1 * m.a6 + m.a2 * m.a6 * 4 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
  v.c4 = v.b2 * v.b2 - v.b4 * 24;
  v.c6 = -(v.b2 * v.b2 * v.b2) + v.b2 * v.b4 * 36 - v.b6 * 216;
  v.delta = -(v.b2 * v.b2 * v.b8) - v.b4 * v.b4 * v.b4 * 8 - v.b6 * v.b6 * 27 + v.b2 * v.b4 * v.b6 * 9;
  return v;
}

LocalElem discriminant(const WeierstrassModel& m) { return invariants(m).delta; }

WeierstrassModel rst_transform(const WeierstrassModel& m, const LocalElem& r, const LocalElem& s,
                               const LocalElem& t) {
  WeierstrassModel n;
  n.a1 = m.a1 + s * 2;
  n.a2 = m.a2 - s * m.a1 + r * 3 - s * s;
  n.a3 = m.a3 + r * m.a1 + t * 2;
  n.a4 = m.a4 - s * m.a3 + r * m.a2 * 2 - (t + r * s) * m.a1 + r * r * 3 - s * t * 2;
  n.a6 = m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1;
  return n;
}

WeierstrassModel scale_by_unit(const WeierstrassModel& m, const LocalElem& u) {
  LocalElem u2 = u * u;
  LocalElem u3 = u2 * u;
  return WeierstrassModel{m.a1 * u, m.a2 * u2, m.a3 * u3, m.a4 * (u2 * u2), m.a6 * (u3 * u3)};
}

WeierstrassModel rescale(const WeierstrassModel& m, int k) {
  return WeierstrassModel{m.a1.divide_by_pi(k), m.a2.divide_by_pi(2 * k), m.a3.divide_by_pi(3 * k),
                          m.a4.divide_by_pi(4 * k), m.a6.divide_by_pi(6 * k)};
}

WeierstrassModel shift_eliminate_a2(const WeierstrassModel& m) {
  if (m.a2.residue_characteristic() == 3) throw Error(ErrorCode::ThreeNotInvertible, "x -> x - a2/3 needs 3 invertible");
  LocalElem r = -(m.a2 * m.a2.make_int(3).inverse());
  LocalElem zero = m.a2.make_int(0);
  WeierstrassModel n = rst_transform(m, r, zero, zero);
  n.a2 = zero.truncated(n.a2.precision());
  return n;
}

}  // namespace tamagawa
