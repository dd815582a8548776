// SPDX-License-Identifier: MIT
#include "tamagawa/reference_forms.hpp"

#include <functional>

#include "tamagawa/errors.hpp"

namespace tamagawa {

namespace {

struct Poly {
  Rational Q;
  explicit Poly(uint64_t q) : Q(static_cast<unsigned long>(q)) {}
  Rational operator()(long k) const { return rpow(Q, k); }
};

Error no_formula(const std::string& what) { return Error(ErrorCode::NoExactFormula, what); }

Rational sum_range(int lo, int hi, const std::function<Rational(int)>& f) {
  Rational s(0);
  for (int i = lo; i <= hi; ++i) s += f(i);
  return s;
}

Rational away_from_six(uint64_t q, int c) {
  Poly P(q);
  Rational Q = P.Q;
  Rational S = P(8) + P(6) + P(4) + P(2) + 1;
  switch (c) {
    case 1:
      return 1 - Q * (6 * P(7) + 9 * P(6) + 9 * P(5) + 7 * P(4) + 8 * P(3) + 7 * P(2) + 9 * Q + 6) /
                     (6 * (Q + 1) * (Q + 1) * S);
    case 2: return Q * (2 * P(7) + 2 * P(6) + P(5) + P(4) + 2 * P(3) + P(2) + 2 * Q + 2) / (2 * (Q + 1) * (Q + 1) * S);
    case 3: return P(2) * (P(4) + 1) / (2 * (Q + 1) * S);
    case 4: return P(3) * (3 * P(2) - 2 * Q + 1) / (6 * (Q + 1) * S);
    default: return (P(10) - 2 * P(9) + P(8)) / (2 * P(c) * (P(10) - 1));
  }
}

// Shared polynomials of the e = 1 forms at p | 3 and p | 2; `s` shifts the q-power
// in each denominator (s = 1 at p | 3, s = 0 at p | 2).
Rational unramified_wild(uint64_t q, int c, int s) {
  Poly P(q);
  Rational Q = P.Q;
  Rational D = P(10) - 1;
  switch (c) {
    case 1:
      return 1 - (Q - 1) * (6 * P(10) + 9 * P(9) + 7 * P(8) + 8 * P(7) + 7 * P(6) + 9 * P(5) + 6 * P(4) + 6 * Q + 3) /
                     (6 * P(1 + s) * (Q + 1) * D);
    case 2:
      return (Q - 1) * (2 * P(11) + 2 * P(10) + P(9) + 2 * P(8) + P(7) + 2 * P(6) + 2 * P(5) + 2 * P(2) - 1) /
             (2 * P(2 + s) * (Q + 1) * D);
    case 3: return (Q - 1) * (P(10) + P(7) + Q - 1) / (2 * P(3 + s) * D);
    case 4: return (Q - 1) * (P(10) + P(9) + 3 * Q - 3) / (6 * P(4 + s) * D);
    default: return (Q - 1) * (Q - 1) / (2 * P(c + s) * D);
  }
}

Rational above2_e2(uint64_t q, int c) {
  Poly P(q);
  Rational Q = P.Q;
  Rational D = P(10) - 1;
  switch (c) {
    case 1:
      return 1 - (Q - 1) *
                     (6 * P(18) + 10 * P(17) + 8 * P(16) + 7 * P(15) + 9 * P(14) + 6 * P(13) + 6 * P(10) + 9 * P(9) +
                      (P(8) - 2 * P(7) - P(6) + 2 * P(5) - 3 * P(4) - 6 * P(3) + 6 * Q + 3)) /
                     (6 * P(9) * (Q + 1) * D);
    case 2:
      return (Q - 1) *
             (2 * P(19) + 3 * P(18) + 2 * P(17) + P(16) + 2 * P(15) + 2 * P(14) + 2 * P(11) + 2 * P(10) -
              (P(9) + P(8) + P(7) - P(6) + 2 * P(4) - 2 * P(2) + 1)) /
             (2 * P(10) * (Q + 1) * D);
    case 3: return (Q - 1) * (P(2) + 1) * (P(4) - P(2) + 1) * (P(10) + Q - 1) / (2 * P(11) * D);
    case 4: return (Q - 1) * (P(19) + P(18) + P(10) - P(8) + 3 * Q - 3) / (6 * P(12) * D);
    default: return (Q - 1) * (Q - 1) / (2 * P(8 + c) * D);
  }
}

Rational above3_high(uint64_t q, int e, int c) {
  Poly P(q);
  Rational Q = P.Q;
  Rational D = P(10) - 1;
  int E = 4 * e;
  if (c >= 5) return (Q - 1) * (Q - 1) / (2 * P(e % 2 == 0 ? E + c - 8 : E + c - 3) * D);
  if (c == 3 && e % 2 == 0)
    return (Q - 1) * (P(E + 8) + P(E + 6) + P(E + 4) + P(E + 2) + P(E) - P(6) + P(4) - P(2)) /
           (2 * P(E - 2) * (P(4) + 1) * D);
  throw no_formula("p|3, e>=2: only c=3 (even e) and c>=5 are stated exactly");
}

}  // namespace

Rational delta_reference(const PrimeLocalProfile& profile, int c) {
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "c must be >= 1");
  uint64_t q = profile.q();
  switch (profile.prime_class()) {
    case PrimeClass::NotAbove6: return away_from_six(q, c);
    case PrimeClass::Above3:
      if (profile.e == 1) return unramified_wild(q, c, 1);
      return above3_high(q, profile.e, c);
    case PrimeClass::Above2:
      if (profile.e == 1) return unramified_wild(q, c, 0);
      if (profile.e == 2) return above2_e2(q, c);
      throw no_formula("p|2, e>=3: no closed form for delta(c)");
  }
  throw no_formula("unknown prime class");
}

TruncatedReference delta_reference_truncated(const PrimeLocalProfile& profile, int c) {
  if (profile.prime_class() != PrimeClass::Above3 || profile.e < 2)
    throw no_formula("leading-order forms exist only for p|3, e>=2");
  int e = profile.e;
  bool even = e % 2 == 0;
  Poly P(profile.q());
  Rational Q = P.Q;
  Rational D = P(10) - 1;
  Rational den24 = (P(2) + 1) * (P(4) + 1) * D;
  switch (c) {
    case 1: {
      Rational X = (6 * P(14) + 9 * P(13) + 13 * P(12) + 16 * P(11) + 22 * (P(10) + P(9) + P(8))) /
                   (6 * (Q + 1) * den24);
      return {1 - (Q - 1) * X, 9};
    }
    case 2: {
      // The 2q term is present for both parities of e.
      Rational v = (Q - 1) * (2 * P(13) + 3 * P(11) + 5 * P(9) + 5 * P(7) + 5 * P(5) + 3 * P(3) + 2 * Q) / (2 * den24);
      return {v, even ? 4 * e + 3 : 4 * e - 2};
    }
    case 3:
      if (even) return {above3_high(profile.q(), e, 3), 0, true};
      return {(Q - 1) * (P(10) + P(8) + P(6) + P(4) + P(2)) / (2 * (P(4) + 1) * D), 4 * e - 1};
    case 4:
      return {(Q - 1) * (P(11) + P(9) + P(7) + P(5) + P(3)) / (6 * den24), even ? 4 * e + 4 : 4 * e + 1};
    default: return {above3_high(profile.q(), e, c), 0, true};
  }
}

}  // namespace tamagawa

namespace tamagawa {

namespace {

using K = Kodaira;

struct TableBuilder {
  PerTypeTotals t;
  void set(K type, int c, const Rational& v) { t.fixed[{type, c}] = v; }
  void pair(K type, int c1, int c2, const Rational& v) {
    set(type, c1, v);
    set(type, c2, v);
  }
  void low(const Rational& i1, const Rational& i2, const Rational& coeff) {
    t.in_low[1] = i1;
    t.in_low[2] = i2;
    t.in_coeff = coeff;
  }
  void instar(const Rational& a2, const Rational& a4) {
    t.instar_coeff[2] = a2;
    t.instar_coeff[4] = a4;
  }
};

PerTypeTotals table_away_from_six(uint64_t q) {
  Poly P(q);
  Rational Q = P.Q;
  Rational V = P(10) / (P(10) - 1);
  TableBuilder b;
  b.set(K::I0, 1, V * (Q - 1) / Q);
  b.low(V * (Q - 1) * (Q - 1) / P(3), V * (Q - 1) * (Q - 1) / P(4), V * (Q - 1) * (Q - 1) / (2 * P(2)));
  b.set(K::II, 1, V * (Q - 1) / P(3));
  b.set(K::III, 2, V * (Q - 1) / P(4));
  b.pair(K::IV, 1, 3, V * (Q - 1) / (2 * P(5)));
  b.set(K::I0star, 1, V * (Q * Q - 1) / (3 * P(7)));
  b.set(K::I0star, 2, V * (Q - 1) / (2 * P(6)));
  b.set(K::I0star, 4, V * (Q - 1) * (Q - 2) / (6 * P(7)));
  b.instar(V * (Q - 1) * (Q - 1) / (2 * P(7)), V * (Q - 1) * (Q - 1) / (2 * P(7)));
  b.pair(K::IVstar, 1, 3, V * (Q - 1) / (2 * P(8)));
  b.set(K::IIIstar, 2, V * (Q - 1) / P(9));
  b.set(K::IIstar, 1, V * (Q - 1) / P(10));
  return b.t;
}

PerTypeTotals table_above3_e1(uint64_t q) {
  Poly P(q);
  Rational Q = P.Q;
  Rational D = P(10) - 1;
  Rational q1 = Q - 1;
  TableBuilder b;
  b.set(K::I0, 1, (P(10) + Q - 1) * q1 / (Q * D));
  b.low(q1 * q1 / (P(2) * D), q1 * q1 / (P(3) * D), q1 * q1 / (2 * Q * D));
  b.set(K::II, 1, P(8) * q1 / D);
  b.set(K::III, 2, P(7) * q1 / D);
  b.pair(K::IV, 1, 3, P(6) * q1 / (2 * D));
  b.set(K::I0star, 1, P(4) * (Q * Q - 1) / (3 * D));
  b.set(K::I0star, 2, P(5) * q1 / (2 * D));
  b.set(K::I0star, 4, P(4) * q1 * (Q - 2) / (6 * D));
  b.instar(q1 * q1 * P(4) / (2 * D), q1 * q1 * P(4) / (2 * D));
  b.pair(K::IVstar, 1, 3, P(3) * q1 / (2 * D));
  b.set(K::IIIstar, 2, P(2) * q1 / D);
  b.set(K::IIstar, 1, Q * q1 / D);
  return b.t;
}

PerTypeTotals table_above3_high(uint64_t q, int e) {
  Poly P(q);
  Rational Q = P.Q;
  Rational q1 = Q - 1;
  Rational V = P(10) / (P(10) - 1);
  Rational a, b, W;
  if (e % 2 == 0) {
    a = q1 / P(4 * e + 1);
    b = q1 / P(4 * e + 2);
    W = 1 + (Q * Q - 1) * (P(8) - P(16 - 4 * e)) / (P(10) * (P(8) - 1));
  } else {
    a = q1 / P(4 * e + 6);
    b = q1 / P(4 * e - 3);
    Rational r8 = 1 - P(-8);
    W = 1 + q1 / P(9) * (1 - P(12 - 4 * e)) / r8 + q1 / P(10) * (1 - P(4 - 4 * e)) / r8;
  }
  Rational c1 = 1 / (3 * P(4)), c2 = q1 / (2 * P(5)), c4 = (Q - 3) / (6 * P(5));
  TableBuilder t;
  t.set(K::I0, 1, V * (a + b + W) * q1 / Q);
  t.low(V * a * q1 / P(2), V * a * q1 / P(3), V * a * q1 / (2 * Q));
  t.set(K::II, 1, V * (b + W) * q1 / P(2));
  t.set(K::III, 2, V * (b + W) * q1 / P(3));
  t.pair(K::IV, 1, 3, V * (b + W) * q1 / (2 * P(4)));
  t.set(K::I0star, 1, V * (b * c1 + W * q1 / (3 * P(5))));
  t.set(K::I0star, 2, V * (b * c2 + W * q1 / (2 * P(5))));
  t.set(K::I0star, 4, V * (b * c4 + W * q1 / (6 * P(5))));
  t.instar(V * b * q1 / (2 * P(5)), V * b * q1 / (2 * P(5)));
  t.pair(K::IVstar, 1, 3, V * W * q1 / (2 * P(6)));
  t.set(K::IIIstar, 2, V * W * q1 / P(7));
  t.set(K::IIstar, 1, V * W * q1 / P(8));
  return t.t;
}

PerTypeTotals table_above2(uint64_t q, int e) {
  Poly P(q);
  Rational Q = P.Q;
  Rational D = P(10) - 1;
  Rational q1 = Q - 1;
  TableBuilder b;
  if (e == 1) {
    b.set(K::I0, 1, Q * q1 / D);
    b.low(q1 * q1 / (Q * D), q1 * q1 / (P(2) * D), q1 * q1 / (2 * D));
    b.set(K::II, 1, P(9) * q1 / D);
    b.set(K::III, 2, P(8) * q1 / D);
    b.pair(K::IV, 1, 3, P(7) * q1 / (2 * D));
    b.set(K::I0star, 1, P(5) * (Q * Q - 1) / (3 * D));
    b.set(K::I0star, 2, P(6) * q1 / (2 * D));
    b.set(K::I0star, 4, P(5) * q1 * (Q - 2) / (6 * D));
    b.instar(q1 * q1 * P(5) / (2 * D), q1 * q1 * P(5) / (2 * D));
    b.pair(K::IVstar, 1, 3, P(4) * q1 / (2 * D));
    b.set(K::IIIstar, 2, P(3) * q1 / D);
    b.set(K::IIstar, 1, P(2) * q1 / D);
    return b.t;
  }
  Rational W = P(10) + Q - 1;
  b.set(K::I0, 1, q1 * W / (P(8) * D));
  b.low(q1 * q1 / (P(9) * D), q1 * q1 / (P(10) * D), q1 * q1 / (2 * P(8) * D));
  b.set(K::II, 1, q1 * (P(10) + P(2) - 1) / (Q * D));
  b.set(K::III, 2, q1 * (P(10) + P(2) - 1) / (P(2) * D));
  b.pair(K::IV, 1, 3, q1 / (2 * Q * D));
  b.set(K::I0star, 1, (Q * Q - 1) * W / (3 * P(4) * D));
  b.set(K::I0star, 2, q1 * W / (2 * P(3) * D));
  b.set(K::I0star, 4, q1 * (Q - 2) * W / (6 * P(4) * D));
  b.instar(q1 * q1 * W / (2 * P(4) * D), q1 * q1 * W / (2 * P(4) * D));
  b.pair(K::IVstar, 1, 3, q1 * W / (2 * P(5) * D));
  b.set(K::IIIstar, 2, q1 * W / (P(6) * D));
  b.set(K::IIstar, 1, q1 * W / (P(7) * D));
  return b.t;
}

}  // namespace

PerTypeTotals per_type_reference(uint64_t q, int e, PrimeClass pc) {
  switch (pc) {
    case PrimeClass::NotAbove6: return table_away_from_six(q);
    case PrimeClass::Above3: return e == 1 ? table_above3_e1(q) : table_above3_high(q, e);
    case PrimeClass::Above2:
      if (e <= 2) return table_above2(q, e);
      throw no_formula("p|2, e>=3: per-type totals are tabulated only through column weights");
  }
  throw no_formula("unknown prime class");
}

std::map<char, Rational> above2_column_visits(uint64_t q, int e) {
  if (e < 3) throw Error(ErrorCode::InvalidArgument, "column letters apply to e >= 3");
  FamilyChain ch = build_chain(q, e, PrimeClass::Above2);
  auto vis = visit_probabilities(ch);
  auto cols = column_families(PrimeClass::Above2, e);
  std::map<char, Rational> out;
  for (char c = 'A'; c <= 'G'; ++c) out[c] = 0;
  for (const auto& n : ch.nodes) {
    FamilyClass col = column_family_of(n);
    for (size_t i = 0; i < cols.size(); ++i)
      if (cols[i] == col) out[static_cast<char>('A' + i)] += vis[n];
  }
  return out;
}

std::map<char, Rational> above2_exact_weights(uint64_t q, int e) {
  Poly P(q);
  Rational Q = P.Q;
  Rational V0 = P(10) / (P(10) - 1);
  return {{'A', V0 * (Q - 1) / P(8 * e + 1)},
          {'C', V0 * (Q - 1) / P(8 * e - 7)},
          {'E', V0 * (Q - 1) / P(8 * e - 15)}};
}

Rational above2_printed_table_total(uint64_t q, int e) {
  if (e < 3) throw Error(ErrorCode::InvalidArgument, "the accumulation table covers e >= 3");
  Poly P(q);
  Rational Q = P.Q;
  Rational q1 = Q - 1;
  Rational V0 = P(10) / (P(10) - 1);
  int k = e / 3, r = e % 3;
  Rational A = V0 * q1 / P(8 * e + 1);
  Rational C = P(2) * (P(8) - 1) / (P(10) - 1) * q1 / P(8 * e - 7);
  Rational E = P(3) * (P(7) - 1) / (P(10) - 1) * q1 / P(8 * e - 15);
  Rational B, Dv, F;
  auto S = sum_range;
  if (r == 0) {
    B = V0 * (q1 * (P(17 * k + 1) + P(18 * k + 1) - P(18 * k) + P(10) - P(9)) / P(24 * k + 2) +
              S(0, k - 2, [&](int i) {
                return Rational(q1 * q1 * (P(17 * i + 17) + P(9) + 1) / P(6 * k + 18 * i + 20));
              }));
    Dv = V0 * (q1 * (P(k + 1) - P(k) + Q) / P(7 * k + 3) + S(0, k - 2, [&](int i) {
                 return Rational(q1 * (P(17 * i + 18) - P(17 * i + 17) + P(10) - P(9) + 1) / P(6 * k + 18 * i + 21));
               }));
    F = V0 * (1 / P(7 * k + 2) + S(0, k - 2, [&](int i) {
                return Rational(q1 * (P(17 * i + 9) + P(10) - P(9) + Q - 1) / P(6 * k + 18 * i + 13));
              }));
  } else if (r == 1) {
    B = V0 * ((P(17 * k + 6) + P(23 * k + 1) - P(23 * k) + P(25) - 2 * P(24) + P(23) + P(16) - 2 * P(15) + P(14)) /
                  P(24 * k + 15) +
              S(0, k - 2, [&](int i) {
                return Rational(q1 * (P(17 * i + 9) + P(10) - P(9) + Q - 1) / P(6 * k + 18 * i + 19));
              }));
    Dv = V0 * (q1 * (P(17 * k + 1) + P(18 * k + 1) - P(18 * k) + P(10) - P(9)) / P(24 * k + 2) +
               S(0, k - 2, [&](int i) {
                 return Rational(q1 * (P(17 * i + 18) - P(17 * i + 17) + P(10) - P(9) + 1) / P(6 * k + 18 * i + 20));
               }));
    F = V0 * (q1 * (P(k + 1) - P(k) + Q) / P(7 * k + 3) + S(0, k - 2, [&](int i) {
                return Rational(q1 * (P(17 * i + 18) - P(17 * i + 17) + P(10) - P(9) + 1) / P(6 * k + 18 * i + 21));
              }));
  } else {
    B = V0 * (q1 * (P(17 * k + 1) + P(18 * k + 1) - P(18 * k) + P(10) - P(9) + Q - 1) / P(24 * k + 9) +
              S(0, k - 2, [&](int i) {
                return Rational(q1 * (P(17 * i + 18) - P(17 * i + 17) + P(10) - P(9) + 1) / P(6 * k + 18 * i + 27));
              }));
    Dv = V0 * (1 / P(7 * k + 9) + S(0, k - 1, [&](int i) {
                 return Rational(q1 * (P(17 * i + 10) - P(17 * i + 9) + P(10) - P(9) + 1) / P(6 * k + 18 * i + 19));
               }));
    F = V0 * (q1 * (P(17 * k + 1) + P(18 * k + 1) - P(18 * k) + P(10) - P(9)) / P(24 * k + 2) +
              S(0, k - 2, [&](int i) {
                return Rational(q1 * (P(17 * i + 10) - P(17 * i + 9) + P(10) - P(9) + 1) / P(6 * k + 18 * i + 13));
              }));
  }
  // Column G.
  Rational pre = P(4) * (P(6) - 1) / (P(10) - 1);
  Rational t1 = q1 * (P(8) - P(32 - 24 * k)) / (P(17) - P(9));
  auto poly = [&](int i) {
    return Rational((P(i + 3) - P(i + 2) - P(i + 1) + P(i) + P(3) - P(2) + Q) / P(7 * i + 9));
  };
  auto g6 = [&](int n) { return S(0, n, [&](int j) { return Rational(1 / P(6 * j)); }); };
  auto inner = [&](int i) {
    return S(1, i, [&](int j) { return Rational(rpow(1 / P(6), j - 1) * rpow(1 / P(7), k - 2 - i)); });
  };
  Rational s = t1 + S(0, k - 2, poly) +
               S(1, k - 2, [&](int i) { return Rational((P(3) - 2 * Q + 1) / P(17) * inner(i)); });
  auto chain67 = [&](int lo, int hi) {
    return S(lo, hi, [&](int j) { return Rational(rpow(1 / P(6), j - 1) * rpow(1 / P(7), k - 2 - j)); });
  };
  if (r == 0) {
    s += S(1, k - 1, [&](int i) { return Rational(q1 * q1 / P(24 * i - 7) * g6(k - i - 1)); });
    s += S(1, k - 3, [&](int i) { return Rational(q1 * q1 / P(24 * i + 16) * g6(k - i - 3)); });
    s += S(1, k - 2, [&](int i) {
      return Rational(q1 * q1 * (P(9) + P(8) + Q + 1) / P(24 * i + 9) * g6(k - i - 2));
    });
  } else if (r == 1) {
    s += (P(k + 2) - 2 * P(k + 1) + P(k) + Q) / P(7 * k + 3) + q1 / P(16) * chain67(1, k - 1);
    s += S(1, k - 1, [&](int i) { return Rational(q1 * q1 * (P(8) + 1) / P(24 * i + 1) * g6(k - 1 - i)); });
    s += S(1, k - 2, [&](int i) {
      return Rational(q1 * q1 * (P(16) + P(8) + P(7) + 1) / P(24 * i + 16) * g6(k - 2 - i));
    });
  } else {
    s += (P(k + 3) - P(k + 2) - P(k + 1) + P(k) + P(2)) / P(7 * k + 3) + q1 / P(15) * chain67(1, k - 1);
    s += S(1, k - 1, [&](int i) {
      return Rational(q1 * q1 * (P(16) + P(8) + 1) / P(24 * i + 9) * g6(k - 1 - i));
    });
    s += S(1, k - 2, [&](int i) {
      return Rational(q1 * q1 * (P(16) + P(8) + 1) / P(24 * i + 16) * g6(k - 2 - i));
    });
  }
  Rational G = pre * s + V0;

  Rational tot = q1 / Q * A + B + q1 / P(2) * A + q1 / P(3) * A + 2 * q1 / (2 * Q) * A * (1 / P(3)) / (1 - 1 / Q);
  tot += (q1 / Q + q1 / P(2)) * (C + Dv + E + F + G);
  tot += 2 * (q1 / (2 * P(3)) * C + Dv / (2 * P(2)));
  Rational X = C / Q + E + F + G;
  tot += ((Q * Q - 1) / (3 * P(4)) + q1 / (2 * P(3)) + q1 * (Q - 2) / (6 * P(4))) * X +
         2 * q1 * q1 / (2 * P(4)) * X * (1 / Q) / (1 - 1 / Q);
  tot += 2 * (q1 / (2 * P(6)) * C + q1 / (2 * P(5)) * E + F / P(4));
  tot += (q1 / P(5) + q1 / P(6)) * (C / P(2) + E / Q + G);
  return tot;
}

}  // namespace tamagawa
