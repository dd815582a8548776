// SPDX-License-Identifier: MIT
#include "tamagawa/step_tables.hpp"

#include <algorithm>

#include "tamagawa/errors.hpp"

namespace tamagawa {

const char* prime_class_name(PrimeClass pc) {
  switch (pc) {
    case PrimeClass::NotAbove6: return "not_above_6";
    case PrimeClass::Above3: return "above_3";
    case PrimeClass::Above2: return "above_2";
  }
  return "?";
}

PrimeClass prime_class_of(uint64_t p) {
  if (p == 2) return PrimeClass::Above2;
  if (p == 3) return PrimeClass::Above3;
  return PrimeClass::NotAbove6;
}

std::string ValClass::to_string() const { return (at_least ? ">=" : "=") + std::to_string(value); }

std::string FamilyClass::to_string() const {
  switch (prime_class) {
    case PrimeClass::NotAbove6: return "short";
    case PrimeClass::Above3: return "alpha2" + alpha.to_string();
    case PrimeClass::Above2: return "alpha1" + alpha.to_string() + ",alpha3" + alpha3.to_string();
  }
  return "?";
}

namespace {

using K = Kodaira;

struct Builder {
  Rational Q;
  std::vector<StepEntry> out;

  explicit Builder(uint64_t q) : Q(static_cast<unsigned long>(q)) {}

  Rational qp(int k) const { return rpow(Q, -k); }  // q^{-k}
  void fixed(K t, int c, const Rational& v) { out.push_back({StepEntry::Kind::Fixed, t, c, v}); }
  void in_family(const Rational& A) { out.push_back({StepEntry::Kind::InFamily, K::In, 0, A}); }
  void instar(int c, const Rational& A) { out.push_back({StepEntry::Kind::InstarFamily, K::Instar, c, A}); }
  void both(K t, int c1, int c2, const Rational& v) {
    fixed(t, c1, v);
    fixed(t, c2, v);
  }

  // I0^* rows and the I_n^* family with exponent base s.
  void star_rows(int s) {
    fixed(K::I0star, 1, (Q * Q - 1) * qp(s + 1) / 3);
    fixed(K::I0star, 2, (Q - 1) * qp(s) / 2);
    fixed(K::I0star, 4, (Q - 1) * (Q - 2) * qp(s + 1) / 6);
    instar(2, (Q - 1) * (Q - 1) * qp(s + 1) / 2);
    instar(4, (Q - 1) * (Q - 1) * qp(s + 1) / 2);
  }
};

void require_q(uint64_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "q must be at least 2");
}

Column phi_column(uint64_t q, int e) {
  Builder b(q);
  Rational Q = b.Q;
  b.fixed(K::I0, 1, (Q - 1) / Q);
  b.in_family((Q - 1) * (Q - 1) * b.qp(2) / 2);
  b.fixed(K::II, 1, (Q - 1) * b.qp(3));
  b.fixed(K::III, 2, (Q - 1) * b.qp(4));
  b.both(K::IV, 1, 3, (Q - 1) * b.qp(5) / 2);
  b.star_rows(6);
  b.both(K::IVstar, 1, 3, (Q - 1) * b.qp(8) / 2);
  b.fixed(K::IIIstar, 2, (Q - 1) * b.qp(9));
  b.fixed(K::IIstar, 1, (Q - 1) * b.qp(10));
  return Column{FamilyClass::not_above6(e), std::move(b.out), b.qp(10)};
}

// Column for alpha = 0 at p | 3 (a2 a unit) and p | 2 (a1 a unit): only I0 and I_n occur.
std::vector<StepEntry> zero_entries(uint64_t q) {
  Builder b(q);
  Rational Q = b.Q;
  b.fixed(K::I0, 1, (Q - 1) / Q);
  b.in_family((Q - 1) / (2 * Q));
  return std::move(b.out);
}

Column chi_column(uint64_t q, int e, ValClass a2) {
  FamilyClass fam = FamilyClass::above3(e, a2);
  if (a2 == ValClass::eq(0)) return Column{fam, zero_entries(q), Rational(0)};
  Builder b(q);
  Rational Q = b.Q;
  b.fixed(K::I0, 1, (Q - 1) / Q);
  b.fixed(K::II, 1, (Q - 1) * b.qp(2));
  b.fixed(K::III, 2, (Q - 1) * b.qp(3));
  b.both(K::IV, 1, 3, (Q - 1) * b.qp(4) / 2);
  if (e == 1 && a2 == ValClass::ge(1)) {
    b.star_rows(5);
    b.both(K::IVstar, 1, 3, (Q - 1) * b.qp(7) / 2);
    b.fixed(K::IIIstar, 2, (Q - 1) * b.qp(8));
    b.fixed(K::IIstar, 1, (Q - 1) * b.qp(9));
    return Column{fam, std::move(b.out), b.qp(9)};
  }
  if (e >= 2 && a2 == ValClass::ge(2)) {
    b.fixed(K::I0star, 1, (Q - 1) * b.qp(5) / 3);
    b.fixed(K::I0star, 2, (Q - 1) * b.qp(5) / 2);
    b.fixed(K::I0star, 4, (Q - 1) * b.qp(5) / 6);
    b.both(K::IVstar, 1, 3, (Q - 1) * b.qp(6) / 2);
    b.fixed(K::IIIstar, 2, (Q - 1) * b.qp(7));
    b.fixed(K::IIstar, 1, (Q - 1) * b.qp(8));
    return Column{fam, std::move(b.out), b.qp(8)};
  }
  if (e >= 2 && a2 == ValClass::eq(1)) {
    b.fixed(K::I0star, 1, b.qp(4) / 3);
    b.fixed(K::I0star, 2, (Q - 1) * b.qp(5) / 2);
    b.fixed(K::I0star, 4, (Q - 3) * b.qp(5) / 6);
    b.instar(2, (Q - 1) * b.qp(5) / 2);
    b.instar(4, (Q - 1) * b.qp(5) / 2);
    return Column{fam, std::move(b.out), Rational(0)};
  }
  throw Error(ErrorCode::InconsistentFamily, "no p|3 column " + fam.to_string() + " for e=" + std::to_string(e));
}

Column psi_column(uint64_t q, int e, ValClass a1, ValClass a3) {
  FamilyClass fam = FamilyClass::above2(e, a1, a3);
  auto bad = [&]() {
    return Error(ErrorCode::InconsistentFamily, "no p|2 column " + fam.to_string() + " for e=" + std::to_string(e));
  };
  if (a1 == ValClass::eq(0)) {
    if (a3 != ValClass::ge(0)) throw bad();
    return Column{fam, zero_entries(q), Rational(0)};
  }
  Builder b(q);
  Rational Q = b.Q;
  if (a1 == ValClass::ge(1) && a3 == ValClass::eq(0)) {
    b.fixed(K::I0, 1, Rational(1));
    return Column{fam, std::move(b.out), Rational(0)};
  }
  b.fixed(K::II, 1, (Q - 1) / Q);
  b.fixed(K::III, 2, (Q - 1) * b.qp(2));
  bool type_a = (e == 1 && a1 == ValClass::ge(1) && a3 == ValClass::ge(1)) ||
                (e >= 2 && a1 == ValClass::eq(1) && a3 == ValClass::ge(1));
  bool type_b = (e == 2 && a1 == ValClass::ge(2) && a3 == ValClass::ge(2)) ||
                (e >= 3 && a1 == ValClass::eq(2) && a3 == ValClass::ge(2));
  if (type_a) {
    b.both(K::IV, 1, 3, (Q - 1) * b.qp(3) / 2);
    b.star_rows(4);
    b.both(K::IVstar, 1, 3, (Q - 1) * b.qp(6) / 2);
    b.fixed(K::IIIstar, 2, (Q - 1) * b.qp(7));
    b.fixed(K::IIstar, 1, (Q - 1) * b.qp(8));
    return Column{fam, std::move(b.out), b.qp(8)};
  }
  if (e >= 2 && a1 == ValClass::ge(2) && a3 == ValClass::eq(1)) {
    b.both(K::IV, 1, 3, b.qp(2) / 2);
    return Column{fam, std::move(b.out), Rational(0)};
  }
  if (type_b) {
    b.star_rows(3);
    b.both(K::IVstar, 1, 3, (Q - 1) * b.qp(5) / 2);
    b.fixed(K::IIIstar, 2, (Q - 1) * b.qp(6));
    b.fixed(K::IIstar, 1, (Q - 1) * b.qp(7));
    return Column{fam, std::move(b.out), b.qp(7)};
  }
  if (e >= 3 && a1 == ValClass::ge(3) && a3 == ValClass::eq(2)) {
    b.star_rows(3);
    b.both(K::IVstar, 1, 3, b.qp(4) / 2);
    return Column{fam, std::move(b.out), Rational(0)};
  }
  if (e >= 3 && a1 == ValClass::ge(3) && a3 == ValClass::ge(3)) {
    b.star_rows(3);
    b.fixed(K::IIIstar, 2, (Q - 1) * b.qp(5));
    b.fixed(K::IIstar, 1, (Q - 1) * b.qp(6));
    return Column{fam, std::move(b.out), b.qp(6)};
  }
  throw bad();
}

}  // namespace

std::vector<FamilyClass> column_families(PrimeClass pc, int e) {
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "e must be >= 1");
  using V = ValClass;
  switch (pc) {
    case PrimeClass::NotAbove6: return {FamilyClass::not_above6(e)};
    case PrimeClass::Above3:
      if (e == 1) return {FamilyClass::above3(e, V::eq(0)), FamilyClass::above3(e, V::ge(1))};
      return {FamilyClass::above3(e, V::eq(0)), FamilyClass::above3(e, V::eq(1)), FamilyClass::above3(e, V::ge(2))};
    case PrimeClass::Above2: {
      std::vector<FamilyClass> v{FamilyClass::above2(e, V::eq(0), V::ge(0)), FamilyClass::above2(e, V::ge(1), V::eq(0))};
      if (e == 1) {
        v.push_back(FamilyClass::above2(e, V::ge(1), V::ge(1)));
        return v;
      }
      v.push_back(FamilyClass::above2(e, V::eq(1), V::ge(1)));
      v.push_back(FamilyClass::above2(e, V::ge(2), V::eq(1)));
      if (e == 2) {
        v.push_back(FamilyClass::above2(e, V::ge(2), V::ge(2)));
        return v;
      }
      v.push_back(FamilyClass::above2(e, V::eq(2), V::ge(2)));
      v.push_back(FamilyClass::above2(e, V::ge(3), V::eq(2)));
      v.push_back(FamilyClass::above2(e, V::ge(3), V::ge(3)));
      return v;
    }
  }
  return {};
}

FamilyClass column_family_of(const FamilyClass& node) {
  using V = ValClass;
  int e = node.e;
  switch (node.prime_class) {
    case PrimeClass::NotAbove6: return node;
    case PrimeClass::Above3:
      if (node.alpha == V::eq(0)) return FamilyClass::above3(e, V::eq(0));
      if (e == 1) return FamilyClass::above3(e, V::ge(1));
      if (node.alpha == V::eq(1)) return FamilyClass::above3(e, V::eq(1));
      return FamilyClass::above3(e, V::ge(2));
    case PrimeClass::Above2: {
      const V& a1 = node.alpha;
      const V& a3 = node.alpha3;
      if (a1 == V::eq(0)) return FamilyClass::above2(e, V::eq(0), V::ge(0));
      if (a3 == V::eq(0)) return FamilyClass::above2(e, V::ge(1), V::eq(0));
      if (e == 1) return FamilyClass::above2(e, V::ge(1), V::ge(1));
      if (a1 == V::eq(1)) return FamilyClass::above2(e, V::eq(1), V::ge(1));
      if (a3 == V::eq(1)) return FamilyClass::above2(e, V::ge(2), V::eq(1));
      if (e == 2) return FamilyClass::above2(e, V::ge(2), V::ge(2));
      if (a1 == V::eq(2)) return FamilyClass::above2(e, V::eq(2), V::ge(2));
      if (a3 == V::eq(2)) return FamilyClass::above2(e, V::ge(3), V::eq(2));
      return FamilyClass::above2(e, V::ge(3), V::ge(3));
    }
  }
  return node;
}

Column step_column(uint64_t q, const FamilyClass& family) {
  require_q(q);
  auto fams = column_families(family.prime_class, family.e);
  if (std::find(fams.begin(), fams.end(), family) == fams.end())
    throw Error(ErrorCode::InconsistentFamily, family.to_string() + " is not a column for e=" + std::to_string(family.e));
  switch (family.prime_class) {
    case PrimeClass::NotAbove6: return phi_column(q, family.e);
    case PrimeClass::Above3: return chi_column(q, family.e, family.alpha);
    case PrimeClass::Above2: return psi_column(q, family.e, family.alpha, family.alpha3);
  }
  throw Error(ErrorCode::InconsistentFamily, "unknown prime class");
}

Column column_for_node(uint64_t q, const FamilyClass& node) {
  Column c = step_column(q, column_family_of(node));
  c.family = node;
  return c;
}

Rational column_value(const Column& col, uint64_t q, Kodaira type, int n, int c) {
  if ((type == Kodaira::In || type == Kodaira::Instar) && n < 1)
    throw Error(ErrorCode::InvalidType, "I_n and I_n^* need n >= 1");
  Rational Q(static_cast<unsigned long>(q));
  Rational s(0);
  for (const auto& en : col.entries) {
    switch (en.kind) {
      case StepEntry::Kind::Fixed:
        if (en.type == type && en.c == c) s += en.value;
        break;
      case StepEntry::Kind::InFamily:
        if (type == Kodaira::In) {
          Rational v = en.value * rpow(Q, -n);
          if (c == n) s += v;
          if (c == epsilon(n)) s += v;
        }
        break;
      case StepEntry::Kind::InstarFamily:
        if (type == Kodaira::Instar && en.c == c) s += en.value * rpow(Q, -n);
        break;
    }
  }
  return s;
}

Rational column_total(const Column& col, uint64_t q) {
  Rational Q(static_cast<unsigned long>(q));
  Rational geo = 1 / (Q - 1);  // sum_{n>=1} q^{-n}
  Rational s = col.nonminimal;
  for (const auto& en : col.entries) {
    switch (en.kind) {
      case StepEntry::Kind::Fixed: s += en.value; break;
      case StepEntry::Kind::InFamily: s += 2 * en.value * geo; break;
      case StepEntry::Kind::InstarFamily: s += en.value * geo; break;
    }
  }
  return s;
}

Rational phi(uint64_t q, Kodaira type, int n, int c) {
  return column_value(step_column(q, FamilyClass::not_above6(1)), q, type, n, c);
}

Rational chi(uint64_t q, int e, ValClass alpha2, Kodaira type, int n, int c) {
  return column_value(step_column(q, FamilyClass::above3(e, alpha2)), q, type, n, c);
}

Rational psi(uint64_t q, int e, ValClass alpha1, ValClass alpha3, Kodaira type, int n, int c) {
  return column_value(step_column(q, FamilyClass::above2(e, alpha1, alpha3)), q, type, n, c);
}

Rational nonminimal_mass(uint64_t q, const FamilyClass& family) { return step_column(q, family).nonminimal; }

}  // namespace tamagawa
