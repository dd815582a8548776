// SPDX-License-Identifier: MIT
#include "tamagawa/markov.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "tamagawa/errors.hpp"

namespace tamagawa {

namespace {

Rational qq(uint64_t q) { return Rational(static_cast<unsigned long>(q)); }

// Splits "alpha >= a" into exact classes a..cap-1 and the open class >= max(a, cap).
std::vector<std::pair<ValClass, Rational>> split_class(uint64_t q, ValClass c, int cap) {
  if (!c.at_least) return {{c, Rational(1)}};
  Rational Q = qq(q);
  std::vector<std::pair<ValClass, Rational>> out;
  int i = 0;
  for (int b = c.value; b < cap; ++b, ++i) out.push_back({ValClass::eq(b), (Q - 1) * rpow(Q, -(i + 1))});
  out.push_back({ValClass::ge(std::max(c.value, cap)), rpow(Q, -std::max(cap - c.value, 0))});
  return out;
}

ValClass shift_down(ValClass c, int k) {
  if (c.at_least) return ValClass::ge(std::max(c.value - k, 0));
  if (c.value < k) throw Error(ErrorCode::UnsupportedClass, "exact class below the rescaling shift");
  return ValClass::eq(c.value - k);
}

std::vector<std::pair<FamilyClass, Rational>> image_classes(uint64_t q, const FamilyClass& n) {
  std::vector<std::pair<FamilyClass, Rational>> out;
  int e = n.e;
  switch (n.prime_class) {
    case PrimeClass::NotAbove6: out.push_back({n, Rational(1)}); break;
    case PrimeClass::Above3:
      for (auto& [c, w] : split_class(q, shift_down(n.alpha, 2), e)) out.push_back({FamilyClass::above3(e, c), w});
      break;
    case PrimeClass::Above2:
      for (auto& [c1, w1] : split_class(q, shift_down(n.alpha, 1), e)) {
        int cap = c1.at_least ? e : c1.value;
        for (auto& [c3, w3] : split_class(q, shift_down(n.alpha3, 3), cap))
          out.push_back({FamilyClass::above2(e, c1, c3), w1 * w3});
      }
      break;
  }
  return out;
}

FamilyClass start_node(int e, PrimeClass pc) {
  switch (pc) {
    case PrimeClass::NotAbove6: return FamilyClass::not_above6(e);
    case PrimeClass::Above3: return FamilyClass::above3(e, ValClass::ge(e));
    case PrimeClass::Above2: return FamilyClass::above2(e, ValClass::ge(e), ValClass::ge(e));
  }
  throw Error(ErrorCode::UnsupportedClass, "unknown prime class");
}

}  // namespace

FamilyChain build_chain(uint64_t q, int e, PrimeClass pc) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "q must be at least 2");
  if (e < 1) throw Error(ErrorCode::UnsupportedClass, "e must be >= 1");
  FamilyChain ch;
  ch.q = q;
  ch.e = e;
  ch.prime_class = pc;
  ch.start = start_node(e, pc);
  std::set<FamilyClass> seen{ch.start};
  std::vector<FamilyClass> stack{ch.start};
  ch.nodes.push_back(ch.start);
  while (!stack.empty()) {
    FamilyClass n = stack.back();
    stack.pop_back();
    Rational nm = column_for_node(q, n).nonminimal;
    ch.terminate[n] = 1 - nm;
    auto& out = ch.edges[n];
    if (nm == 0) continue;
    for (auto& [m, w] : image_classes(q, n)) {
      out.push_back({m, nm * w});
      if (seen.insert(m).second) {
        ch.nodes.push_back(m);
        stack.push_back(m);
      }
    }
  }
  return ch;
}

std::map<FamilyClass, Rational> visit_probabilities(const FamilyChain& chain) {
  std::map<FamilyClass, std::vector<std::pair<FamilyClass, Rational>>> preds;
  for (const auto& [from, es] : chain.edges)
    for (const auto& ed : es) preds[ed.to].push_back({from, ed.weight});
  std::map<FamilyClass, Rational> memo;
  std::function<Rational(const FamilyClass&)> visits = [&](const FamilyClass& n) -> Rational {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Rational r(0);
    if (n == chain.start) {
      Rational loop(0);
      for (const auto& [m, w] : preds[n]) {
        if (!(m == chain.start)) throw Error(ErrorCode::UnsupportedClass, "edge into the start node from elsewhere");
        loop += w;
      }
      r = 1 / (1 - loop);
    } else {
      for (const auto& [m, w] : preds[n]) {
        if (m == n) throw Error(ErrorCode::UnsupportedClass, "self-loop away from the start node");
        r += visits(m) * w;
      }
    }
    memo[n] = r;
    return r;
  };
  std::map<FamilyClass, Rational> out;
  for (const auto& n : chain.nodes) out[n] = visits(n);
  return out;
}

Rational DensitySpectrum::at(int c) const {
  if (c < 1) return Rational(0);
  if (c <= c_cut) {
    auto it = finite.find(c);
    return it == finite.end() ? Rational(0) : it->second;
  }
  return tail * rpow(qq(q), -c);
}

Rational DensitySpectrum::total() const {
  Rational s(0);
  for (const auto& [c, v] : finite) s += v;
  Rational Q = qq(q);
  return s + tail * rpow(Q, -c_cut) / (Q - 1);
}

namespace {

void accumulate(DensitySpectrum& sp, const Column& col, const Rational& w) {
  Rational Q = qq(sp.q);
  Rational odd = (1 / Q) / (1 - 1 / (Q * Q));
  Rational even = odd / Q;
  for (const auto& en : col.entries) {
    switch (en.kind) {
      case StepEntry::Kind::Fixed: sp.finite[en.c] += w * en.value; break;
      case StepEntry::Kind::InFamily: {
        Rational A = w * en.value;
        for (int c = 1; c <= sp.c_cut; ++c) sp.finite[c] += A * rpow(Q, -c);
        sp.tail += A;
        sp.finite[1] += A * odd;
        sp.finite[2] += A * even;
        break;
      }
      case StepEntry::Kind::InstarFamily: sp.finite[en.c] += w * en.value / (Q - 1); break;
    }
  }
}

}  // namespace

DensitySpectrum delta_spectrum(uint64_t q, int e, PrimeClass pc, int m_max) {
  FamilyChain ch = build_chain(q, e, pc);
  auto vis = visit_probabilities(ch);
  DensitySpectrum sp;
  sp.q = q;
  sp.c_cut = std::max(m_max, 4);
  sp.tail = 0;
  for (const auto& n : ch.nodes) accumulate(sp, column_for_node(q, n), vis[n]);
  return sp;
}

DensitySpectrum pure_column_spectrum(uint64_t q, const FamilyClass& family, int m_max) {
  DensitySpectrum sp;
  sp.q = q;
  sp.c_cut = std::max(m_max, 4);
  sp.tail = 0;
  accumulate(sp, step_column(q, family), Rational(1));
  return sp;
}

PerTypeTotals per_type_totals(uint64_t q, int e, PrimeClass pc) {
  FamilyChain ch = build_chain(q, e, pc);
  auto vis = visit_probabilities(ch);
  PerTypeTotals t;
  t.in_coeff = 0;
  for (const auto& n : ch.nodes) {
    const Rational& w = vis[n];
    for (const auto& en : column_for_node(q, n).entries) {
      switch (en.kind) {
        case StepEntry::Kind::Fixed: t.fixed[{en.type, en.c}] += w * en.value; break;
        case StepEntry::Kind::InFamily: t.in_coeff += w * en.value; break;
        case StepEntry::Kind::InstarFamily: t.instar_coeff[en.c] += w * en.value; break;
      }
    }
  }
  return t;
}

Rational PerTypeTotals::value(uint64_t q, Kodaira type, int n, int c) const {
  Rational Q = qq(q);
  if (type == Kodaira::In) {
    auto it = in_low.find(n);
    if (it != in_low.end()) return c == n ? it->second : Rational(0);
    Rational v = in_coeff * rpow(Q, -n);
    Rational s(0);
    if (c == n) s += v;
    if (c == epsilon(n)) s += v;
    return s;
  }
  if (type == Kodaira::Instar) {
    auto it = instar_coeff.find(c);
    return it == instar_coeff.end() ? Rational(0) : it->second * rpow(Q, -n);
  }
  auto it = fixed.find({type, c});
  return it == fixed.end() ? Rational(0) : it->second;
}

}  // namespace tamagawa
