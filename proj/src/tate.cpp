// SPDX-License-Identifier: MIT
#include "tamagawa/tate.hpp"

#include <array>

#include "tamagawa/local_ring.hpp"

namespace tamagawa {

namespace {

constexpr std::array<const char*, kKodairaCount> kNames = {"I0", "In", "II", "III", "IV",
                                                          "I0*", "In*", "IV*", "III*", "II*"};
constexpr std::array<const char*, kKodairaCount> kAltNames = {"I0", "In", "II", "III", "IV",
                                                             "I0star", "Instar", "IVstar", "IIIstar", "IIstar"};

constexpr uint32_t bit(Kodaira k) { return 1u << static_cast<int>(k); }
constexpr uint32_t kAllKinds = (1u << kKodairaCount) - 1;
constexpr uint32_t kStarKinds =
    bit(Kodaira::I0star) | bit(Kodaira::Instar) | bit(Kodaira::IVstar) | bit(Kodaira::IIIstar) | bit(Kodaira::IIstar);

}  // namespace

const char* kodaira_name(Kodaira k) { return kNames[static_cast<int>(k)]; }

std::optional<Kodaira> parse_kodaira(const std::string& s) {
  for (int i = 0; i < kKodairaCount; ++i)
    if (s == kNames[i] || s == kAltNames[i]) return static_cast<Kodaira>(i);
  return std::nullopt;
}

std::string kodaira_label(Kodaira k, int n) {
  if (k == Kodaira::In) return "I" + std::to_string(n);
  if (k == Kodaira::Instar) return "I" + std::to_string(n) + "*";
  return kodaira_name(k);
}

bool Reachable::contains(Kodaira k, int n) const {
  if (!(kinds & bit(k))) return false;
  if (k == Kodaira::In) return n >= min_n_In;
  if (k == Kodaira::Instar) return n >= min_n_Instar;
  return true;
}

Reachable Reachable::everything() { return Reachable{kAllKinds, true, 1, 1}; }

namespace {

// One pass of the algorithm.  `cur` always describes the outcomes reachable from the
// node currently being decided, so a precision failure can report it.
class TatePass {
 public:
  explicit TatePass(const WeierstrassModel& model)
      : C_(model), F_(model.a1.field()), p_(model.a1.residue_characteristic()) {}

  std::optional<ReductionOutcome> run() {
    try {
      return body();
    } catch (const PrecisionLoss& e) {
      throw InsufficientPrecision(e.what(), cur_);
    }
  }

 private:
  WeierstrassModel C_;
  const FqField& F_;
  uint64_t p_;
  Reachable cur_ = Reachable::everything();
  std::optional<int> v_delta_;

  // Decides v(x) < k.
  bool lt(const LocalElem& x, int k) const {
    Valuation v = x.val();
    if (v.exact) return v.value < k;
    if (v.value >= k) return false;
    throw PrecisionLoss("valuation undecided at the known precision");
  }
  bool unit(const LocalElem& x) const { return lt(x, 1); }
  FqElem res(const LocalElem& x) const { return x.residue(); }
  LocalElem lift(FqElem r) const { return C_.a1.make_lift(r); }
  LocalElem pi_pow(int k) const { return C_.a1.make_pi_power(k); }
  LocalElem zero() const { return C_.a1.make_int(0); }
  FqElem fi(int64_t n) const { return F_.from_int(n); }
  FqElem sqrt2(FqElem a) const { return F_.pth_root(a); }

  void rst(const LocalElem& r, const LocalElem& s, const LocalElem& t) { C_ = rst_transform(C_, r, s, t); }

  ReductionOutcome done(Kodaira k, int c, int n = 0) const {
    ReductionOutcome o;
    o.kodaira = k;
    o.c = c;
    o.n = n;
    o.v_delta_minimal = v_delta_;
    return o;
  }

  void translate_singular_point() {
    Invariants I = invariants(C_);
    FqElem r, t;
    if (p_ == 2) {
      if (!unit(I.b2)) {
        r = sqrt2(res(C_.a4));
        FqElem a2 = res(C_.a2), a4 = res(C_.a4), a6 = res(C_.a6);
        t = sqrt2(F_.add(F_.mul(F_.add(F_.mul(F_.add(r, a2), r), a4), r), a6));
      } else {
        FqElem a1inv = F_.inv(res(C_.a1));
        r = F_.mul(a1inv, res(C_.a3));
        t = F_.mul(a1inv, F_.add(res(C_.a4), F_.mul(r, r)));
      }
    } else if (p_ == 3) {
      if (!unit(I.b2)) {
        r = F_.pth_root(F_.neg(res(I.b6)));
      } else {
        r = F_.neg(F_.div(res(I.b4), res(I.b2)));
      }
      t = F_.add(F_.mul(res(C_.a1), r), res(C_.a3));
    } else {
      FqElem inv12 = F_.inv(fi(12));
      if (!unit(I.c4)) {
        r = F_.neg(F_.mul(inv12, res(I.b2)));
      } else {
        FqElem c4 = res(I.c4);
        r = F_.neg(F_.div(F_.mul(inv12, F_.add(res(I.c6), F_.mul(res(I.b2), c4))), c4));
      }
      FqElem half = F_.inv(fi(2));
      t = F_.neg(F_.mul(half, F_.add(F_.mul(res(C_.a1), r), res(C_.a3))));
    }
    rst(lift(r), zero(), lift(t));
  }

  std::optional<ReductionOutcome> body() {
    LocalElem delta = discriminant(C_);
    Valuation vd = delta.val();
    if (vd.exact) v_delta_ = vd.value;

    if (unit(delta)) return done(Kodaira::I0, 1);
    cur_.kinds &= ~bit(Kodaira::I0);

    translate_singular_point();
    Invariants I = invariants(C_);

    if (unit(I.b2)) {
      cur_ = Reachable{bit(Kodaira::In), false, vd.value, 1};
      bool split = F_.quadratic_has_root(F_.one(), res(C_.a1), F_.neg(res(C_.a2)));
      if (!vd.exact) throw PrecisionLoss("multiplicative reduction with v(Delta) beyond the known digits");
      int n = vd.value;
      return done(Kodaira::In, split ? n : epsilon(n), n);
    }
    cur_.kinds &= ~bit(Kodaira::In);

    if (lt(C_.a6, 2)) return done(Kodaira::II, 1);
    cur_.kinds &= ~bit(Kodaira::II);
    if (lt(I.b8, 3)) return done(Kodaira::III, 2);
    cur_.kinds &= ~bit(Kodaira::III);
    if (lt(I.b6, 3)) {
      FqElem a3t = res(C_.a3.divide_by_pi(1));
      FqElem a6t = res(C_.a6.divide_by_pi(2));
      return done(Kodaira::IV, F_.quadratic_has_root(F_.one(), a3t, F_.neg(a6t)) ? 3 : 1);
    }
    cur_.kinds &= ~bit(Kodaira::IV);

    if (p_ == 2) {
      LocalElem s = lift(sqrt2(res(C_.a2)));
      LocalElem t = pi_pow(1) * lift(sqrt2(res(C_.a6.divide_by_pi(2))));
      rst(zero(), s, t);
    } else if (p_ == 3) {
      rst(zero(), C_.a1, C_.a3);
    } else {
      LocalElem half = C_.a1.make_int(2).inverse();
      rst(zero(), -(C_.a1 * half), -(C_.a3 * half));
    }

    FqElem b = res(C_.a2.divide_by_pi(1));
    FqElem c = res(C_.a4.divide_by_pi(2));
    FqElem d = res(C_.a6.divide_by_pi(3));
    FqElem bb = F_.mul(b, b), cc = F_.mul(c, c), bc = F_.mul(b, c);
    FqElem w = F_.add(F_.add(F_.add(F_.mul(fi(27), F_.mul(d, d)), F_.neg(F_.mul(bb, cc))),
                             F_.add(F_.mul(fi(4), F_.mul(F_.mul(bb, b), d)), F_.neg(F_.mul(fi(18), F_.mul(bc, d))))),
                      F_.mul(fi(4), F_.mul(cc, c)));
    FqElem x = F_.sub(F_.mul(fi(3), c), bb);

    if (w.code != 0) {
      uint64_t roots = F_.roots(FqPoly{d, c, b, F_.one()}).size();
      return done(Kodaira::I0star, static_cast<int>(1 + roots));
    }
    cur_.kinds &= ~bit(Kodaira::I0star);

    if (x.code != 0) return double_root(b, c, d, x);
    cur_.kinds &= ~bit(Kodaira::Instar);
    return triple_root(b, d);
  }

  std::optional<ReductionOutcome> double_root(FqElem b, FqElem c, FqElem d, FqElem x) {
    cur_ = Reachable{bit(Kodaira::Instar), false, 1, 1};
    FqElem r;
    if (p_ == 2) {
      r = sqrt2(c);
    } else if (p_ == 3) {
      r = F_.div(c, b);
    } else {
      r = F_.div(F_.sub(F_.mul(b, c), F_.mul(fi(9), d)), F_.mul(fi(2), x));
    }
    rst(pi_pow(1) * lift(r), zero(), zero());
    int ix = 3, iy = 3;
    FqElem a2t, a3t, a4t, a6t;
    auto refresh = [&]() {
      cur_.min_n_Instar = ix + iy - 5;
      a2t = res(C_.a2.divide_by_pi(1));
      a3t = res(C_.a3.divide_by_pi(iy - 1));
      a4t = res(C_.a4.divide_by_pi(ix));
      a6t = res(C_.a6.divide_by_pi(ix + iy - 2));
    };
    int cval = 0;
    for (;;) {
      refresh();
      FqElem disc3 = F_.add(F_.mul(a3t, a3t), F_.mul(fi(4), a6t));
      if (disc3.code != 0) {
        cval = F_.quadratic_has_root(F_.one(), a3t, F_.neg(a6t)) ? 4 : 2;
        break;
      }
      FqElem tt = p_ == 2 ? sqrt2(a6t) : F_.neg(F_.div(a3t, fi(2)));
      rst(zero(), zero(), pi_pow(iy - 1) * lift(tt));
      ++iy;
      refresh();
      FqElem disc4 = F_.sub(F_.mul(a4t, a4t), F_.mul(fi(4), F_.mul(a6t, a2t)));
      if (disc4.code != 0) {
        cval = F_.quadratic_has_root(a2t, a4t, a6t) ? 4 : 2;
        break;
      }
      FqElem rr = p_ == 2 ? sqrt2(F_.div(a6t, a2t)) : F_.neg(F_.div(a4t, F_.mul(fi(2), a2t)));
      rst(pi_pow(ix - 1) * lift(rr), zero(), zero());
      ++ix;
    }
    return done(Kodaira::Instar, cval, ix + iy - 5);
  }

  std::optional<ReductionOutcome> triple_root(FqElem b, FqElem d) {
    cur_ = Reachable{bit(Kodaira::IVstar) | bit(Kodaira::IIIstar) | bit(Kodaira::IIstar), true, 1, 1};
    FqElem r;
    if (p_ == 2) {
      r = b;
    } else if (p_ == 3) {
      r = F_.pth_root(F_.neg(d));
    } else {
      r = F_.neg(F_.div(b, fi(3)));
    }
    rst(pi_pow(1) * lift(r), zero(), zero());
    FqElem x3 = res(C_.a3.divide_by_pi(2));
    FqElem x6 = res(C_.a6.divide_by_pi(4));
    if (F_.add(F_.mul(x3, x3), F_.mul(fi(4), x6)).code != 0)
      return done(Kodaira::IVstar, F_.quadratic_has_root(F_.one(), x3, F_.neg(x6)) ? 3 : 1);
    cur_.kinds &= ~bit(Kodaira::IVstar);
    FqElem tt = p_ == 2 ? sqrt2(x6) : F_.neg(F_.div(x3, fi(2)));
    rst(zero(), zero(), pi_pow(2) * lift(tt));
    if (lt(C_.a4, 4)) return done(Kodaira::IIIstar, 2);
    cur_.kinds &= ~bit(Kodaira::IIIstar);
    if (lt(C_.a6, 6)) return done(Kodaira::IIstar, 1);
    return std::nullopt;
  }

 public:
  const WeierstrassModel& model() const { return C_; }
};

}  // namespace

std::optional<ReductionOutcome> tate_first_iteration(const WeierstrassModel& model) {
  TatePass pass(model);
  return pass.run();
}

ReductionOutcome tate_run(const WeierstrassModel& model) {
  WeierstrassModel C = model;
  for (int iterations = 0;; ++iterations) {
    TatePass pass(C);
    auto out = pass.run();
    if (out) {
      out->iterations = iterations;
      return *out;
    }
    try {
      C = rescale(pass.model(), 1);
    } catch (const PrecisionLoss& e) {
      throw InsufficientPrecision(e.what(), Reachable::everything());
    }
  }
}

bool is_minimal(const WeierstrassModel& model) { return tate_first_iteration(model).has_value(); }

}  // namespace tamagawa
