// SPDX-License-Identifier: MIT
#include "tamagawa/residue_field.hpp"

#include <algorithm>
#include <functional>

#include "tamagawa/errors.hpp"
#include "tamagawa/rational.hpp"

namespace tamagawa {

namespace {
constexpr uint64_t kTableLimit = 1u << 16;
constexpr uint64_t kExhaustiveRootLimit = 1u << 16;
}  // namespace

struct FqField::Data {
  uint64_t p = 0;
  int f = 0;
  uint64_t q = 0;
  std::vector<uint64_t> modulus;
  std::vector<uint64_t> pw;  // p^i, i <= f
  bool tables = false;
  std::vector<uint32_t> log;  // log[code], undefined for 0
  std::vector<uint32_t> exp;  // exp[i] for 0 <= i < 2(q-1)

  std::vector<uint64_t> decode(uint64_t code) const {
    std::vector<uint64_t> c(f);
    for (int i = 0; i < f; ++i) {
      c[i] = code % p;
      code /= p;
    }
    return c;
  }
  uint64_t encode(const std::vector<uint64_t>& c) const {
    uint64_t code = 0;
    for (int i = f - 1; i >= 0; --i) code = code * p + c[i];
    return code;
  }
  uint64_t add(uint64_t a, uint64_t b) const {
    if (p == 2) return a ^ b;
    if (f == 1) {
      uint64_t s = a + b;
      return s >= p ? s - p : s;
    }
    uint64_t out = 0;
    for (int i = 0; i < f; ++i) {
      uint64_t s = a % p + b % p;
      if (s >= p) s -= p;
      out += s * pw[i];
      a /= p;
      b /= p;
    }
    return out;
  }
  uint64_t neg(uint64_t a) const {
    if (p == 2) return a;
    if (f == 1) return a == 0 ? 0 : p - a;
    uint64_t out = 0;
    for (int i = 0; i < f; ++i) {
      uint64_t d = a % p;
      out += (d == 0 ? 0 : p - d) * pw[i];
      a /= p;
    }
    return out;
  }
  uint64_t mul_slow(uint64_t a, uint64_t b) const {
    if (f == 1) return mulmod_u64(a, b, p);
    std::vector<uint64_t> x = decode(a), y = decode(b);
    std::vector<uint64_t> z(2 * f - 1, 0);
    for (int i = 0; i < f; ++i) {
      if (!x[i]) continue;
      for (int j = 0; j < f; ++j) z[i + j] = (z[i + j] + mulmod_u64(x[i], y[j], p)) % p;
    }
    for (int k = 2 * f - 2; k >= f; --k) {
      uint64_t c = z[k];
      if (!c) continue;
      z[k] = 0;
      for (int i = 0; i < f; ++i) {
        uint64_t t = mulmod_u64(c, modulus[i], p);
        z[k - f + i] = (z[k - f + i] + p - t) % p;
      }
    }
    z.resize(f);
    return encode(z);
  }
  uint64_t mul(uint64_t a, uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (tables) return exp[log[a] + log[b]];
    return mul_slow(a, b);
  }
  uint64_t pow_slow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  }
};

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin irreducibility test for a monic polynomial over the prime field Fp.
bool rabin_irreducible(const FqField& Fp, const std::vector<uint64_t>& g) {
  int f = static_cast<int>(g.size()) - 1;
  if (f == 1) return true;
  FqPoly G;
  for (uint64_t c : g) G.push_back(Fp.from_int(static_cast<int64_t>(c)));
  FqPoly X{Fp.zero(), Fp.one()};
  uint64_t p = Fp.p();
  std::vector<FqPoly> frob(f + 1);
  frob[0] = fqpoly::mod(Fp, X, G);
  for (int i = 1; i <= f; ++i) frob[i] = fqpoly::powmod(Fp, frob[i - 1], p, G);
  FqPoly diff = fqpoly::sub(Fp, frob[f], fqpoly::mod(Fp, X, G));
  if (fqpoly::degree(diff) >= 0) return false;
  for (uint64_t r : prime_factors(static_cast<uint64_t>(f))) {
    FqPoly h = fqpoly::sub(Fp, frob[f / r], X);
    FqPoly d = fqpoly::gcd(Fp, G, h);
    if (fqpoly::degree(d) > 0) return false;
  }
  return true;
}

}  // namespace

FqField FqField::make(uint64_t p, int f, std::optional<std::vector<uint64_t>> modulus) {
  if (!is_prime_u64(p)) throw Error(ErrorCode::NonPrimeP, "p = " + std::to_string(p) + " is not prime");
  if (f < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  unsigned __int128 qq = 1;
  for (int i = 0; i < f; ++i) {
    qq *= p;
    if (qq > (static_cast<unsigned __int128>(1) << 62))
      throw Error(ErrorCode::InvalidArgument, "field size exceeds 2^62");
  }
  auto d = std::make_shared<Data>();
  d->p = p;
  d->f = f;
  d->q = static_cast<uint64_t>(qq);
  d->pw.resize(f + 1);
  d->pw[0] = 1;
  for (int i = 1; i <= f; ++i) d->pw[i] = d->pw[i - 1] * p;

  if (f == 1) {
    if (modulus && (modulus->size() != 2 || (*modulus)[1] % p != 1))
      throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree f");
    d->modulus = {modulus ? (*modulus)[0] % p : 0, 1};
  } else {
    FqField Fp = make(p, 1);
    if (modulus) {
      if (static_cast<int>(modulus->size()) != f + 1 || (*modulus)[f] % p != 1)
        throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree f");
      std::vector<uint64_t> g(*modulus);
      for (auto& c : g) c %= p;
      if (!rabin_irreducible(Fp, g)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_p");
      d->modulus = g;
    } else {
      // Counting upward with c_0 as the lowest digit visits (c_{f-1}, ..., c_0) in lexicographic order.
      std::vector<uint64_t> g(f + 1, 0);
      g[f] = 1;
      bool found = false;
      for (uint64_t counter = 0; counter < d->q && !found; ++counter) {
        uint64_t c = counter;
        for (int i = 0; i < f; ++i) {
          g[i] = c % p;
          c /= p;
        }
        if (g[0] == 0) continue;
        if (rabin_irreducible(Fp, g)) found = true;
      }
      d->modulus = g;
    }
  }

  if (d->q <= kTableLimit && d->q > 2) {
    uint64_t n = d->q - 1;
    auto factors = prime_factors(n);
    uint64_t gen = 0;
    for (uint64_t cand = 2; cand < d->q + 1 && !gen; ++cand) {
      uint64_t c = cand % d->q;
      if (c == 0) continue;
      bool ok = true;
      for (uint64_t r : factors) {
        if (d->pow_slow(c, n / r) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) gen = c;
    }
    d->log.assign(d->q, 0);
    d->exp.assign(2 * n, 0);
    uint64_t x = 1;
    for (uint64_t i = 0; i < n; ++i) {
      d->exp[i] = static_cast<uint32_t>(x);
      d->exp[i + n] = static_cast<uint32_t>(x);
      d->log[x] = static_cast<uint32_t>(i);
      x = d->mul_slow(x, gen);
    }
    d->tables = true;
  }
  return FqField(std::move(d));
}

uint64_t FqField::p() const { return d_->p; }
int FqField::f() const { return d_->f; }
uint64_t FqField::q() const { return d_->q; }
const std::vector<uint64_t>& FqField::modulus() const { return d_->modulus; }

bool FqField::operator==(const FqField& other) const {
  return d_->p == other.d_->p && d_->f == other.d_->f && d_->modulus == other.d_->modulus;
}

FqElem FqField::from_int(int64_t n) const {
  int64_t r = n % static_cast<int64_t>(d_->p);
  if (r < 0) r += static_cast<int64_t>(d_->p);
  return FqElem{static_cast<uint64_t>(r)};
}

FqElem FqField::from_coeffs(const std::vector<uint64_t>& coeffs) const {
  std::vector<uint64_t> c(d_->f, 0);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (static_cast<int>(i) < d_->f) {
      c[i] = coeffs[i] % d_->p;
    } else if (coeffs[i] % d_->p) {
      throw Error(ErrorCode::InvalidArgument, "coefficient vector longer than f");
    }
  }
  return FqElem{d_->encode(c)};
}

std::vector<uint64_t> FqField::coeffs(FqElem a) const { return d_->decode(a.code); }

FqElem FqField::element(uint64_t index) const { return FqElem{index}; }

FqElem FqField::add(FqElem a, FqElem b) const { return FqElem{d_->add(a.code, b.code)}; }
FqElem FqField::neg(FqElem a) const { return FqElem{d_->neg(a.code)}; }
FqElem FqField::sub(FqElem a, FqElem b) const { return FqElem{d_->add(a.code, d_->neg(b.code))}; }
FqElem FqField::mul(FqElem a, FqElem b) const { return FqElem{d_->mul(a.code, b.code)}; }

FqElem FqField::inv(FqElem a) const {
  if (a.code == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero in F_q");
  if (d_->tables) {
    uint64_t n = d_->q - 1;
    return FqElem{d_->exp[(n - d_->log[a.code]) % n]};
  }
  return pow(a, d_->q - 2);
}

FqElem FqField::pow(FqElem a, uint64_t e) const {
  if (a.code == 0) return FqElem{e == 0 ? 1u : 0u};
  if (d_->tables) {
    uint64_t n = d_->q - 1;
    unsigned __int128 l = static_cast<unsigned __int128>(d_->log[a.code]) * (e % n);
    return FqElem{d_->exp[static_cast<uint64_t>(l % n)]};
  }
  return FqElem{d_->pow_slow(a.code, e)};
}

bool FqField::is_square(FqElem a) const {
  if (a.code == 0 || d_->p == 2) return true;
  if (d_->tables) return (d_->log[a.code] & 1) == 0;
  return pow(a, (d_->q - 1) / 2).code == 1;
}

FqElem FqField::pth_root(FqElem a) const {
  if (d_->f == 1) return a;
  return pow(a, d_->q / d_->p);
}

uint64_t FqField::trace(FqElem a) const {
  FqElem s = zero();
  FqElem x = a;
  for (int i = 0; i < d_->f; ++i) {
    s = add(s, x);
    x = pow(x, d_->p);
  }
  return s.code;
}

bool FqField::quadratic_has_root(FqElem a, FqElem b, FqElem c) const {
  if (a.code == 0) return b.code != 0 || c.code == 0;
  if (d_->p != 2) return is_square(sub(mul(b, b), mul(from_int(4), mul(a, c))));
  if (b.code == 0) return true;
  // a T^2 + b T + c with T = (b/a) Z gives Z^2 + Z + ac/b^2.
  FqElem t = div(mul(a, c), mul(b, b));
  return trace(t) == 0;
}

namespace {

FqElem horner(const FqField& F, const FqPoly& poly, FqElem x) {
  FqElem r = F.zero();
  for (size_t i = poly.size(); i-- > 0;) r = F.add(F.mul(r, x), poly[i]);
  return r;
}

// Splits a squarefree product of distinct linear factors (monic) into its roots.
void split_linear(const FqField& F, const FqPoly& g, std::vector<FqElem>& out) {
  int deg = fqpoly::degree(g);
  if (deg <= 0) return;
  if (deg == 1) {
    out.push_back(F.neg(g[0]));
    return;
  }
  uint64_t q = F.q();
  for (uint64_t seed = 0;; ++seed) {
    FqPoly h;
    if (F.p() != 2) {
      FqPoly base{F.element(seed % q), F.one()};
      h = fqpoly::powmod(F, base, (q - 1) / 2, g);
      h = fqpoly::sub(F, h, FqPoly{F.one()});
    } else {
      FqElem beta = F.element(1 + (seed % (q - 1)));
      FqPoly term = fqpoly::mod(F, FqPoly{F.zero(), beta}, g);
      h = term;
      for (int i = 1; i < F.f(); ++i) {
        term = fqpoly::mod(F, fqpoly::mul(F, term, term), g);
        h = fqpoly::add(F, h, term);
      }
    }
    FqPoly d = fqpoly::gcd(F, g, h);
    int dd = fqpoly::degree(d);
    if (dd > 0 && dd < deg) {
      split_linear(F, d, out);
      split_linear(F, fqpoly::divexact(F, g, d), out);
      return;
    }
  }
}

}  // namespace

std::vector<FqElem> FqField::roots(const FqPoly& poly) const {
  FqPoly p = poly;
  fqpoly::trim(p);
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  std::vector<FqElem> out;
  if (fqpoly::degree(p) == 0) return out;
  if (d_->q <= kExhaustiveRootLimit) {
    for (uint64_t i = 0; i < d_->q; ++i) {
      if (horner(*this, p, FqElem{i}).code == 0) out.push_back(FqElem{i});
    }
    return out;
  }
  FqPoly m = fqpoly::make_monic(*this, p);
  FqPoly xq = fqpoly::powmod(*this, FqPoly{zero(), one()}, d_->q, m);
  FqPoly g = fqpoly::gcd(*this, m, fqpoly::sub(*this, xq, FqPoly{zero(), one()}));
  split_linear(*this, fqpoly::make_monic(*this, g), out);
  std::sort(out.begin(), out.end(), [](FqElem a, FqElem b) { return a.code < b.code; });
  return out;
}

uint64_t FqField::count_roots(const FqPoly& poly) const {
  FqPoly p = poly;
  fqpoly::trim(p);
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  if (fqpoly::degree(p) == 0) return 0;
  if (d_->q <= 64) return roots(p).size();
  FqPoly m = fqpoly::make_monic(*this, p);
  FqPoly xq = fqpoly::powmod(*this, FqPoly{zero(), one()}, d_->q, m);
  FqPoly g = fqpoly::gcd(*this, m, fqpoly::sub(*this, xq, FqPoly{zero(), one()}));
  return static_cast<uint64_t>(fqpoly::degree(g));
}

CubicProfile FqField::cubic_profile(const FqPoly& P) const {
  if (P.size() != 4 || P[3].code != 1) throw Error(ErrorCode::InvalidArgument, "cubic must be monic of degree 3");
  CubicProfile out{};
  FqPoly D = fqpoly::derivative(*this, P);
  if (fqpoly::degree(D) < 0) {
    out.kind = CubicProfileKind::TripleRoot;
    out.repeated_root = pth_root(neg(P[0]));
    out.rational_roots = {out.repeated_root};
    return out;
  }
  FqPoly g = fqpoly::make_monic(*this, fqpoly::gcd(*this, P, D));
  int dg = fqpoly::degree(g);
  if (dg == 0) {
    out.rational_roots = roots(P);
    switch (out.rational_roots.size()) {
      case 3: out.kind = CubicProfileKind::ThreeDistinctAllRational; break;
      case 1: out.kind = CubicProfileKind::ThreeDistinctOneRational; break;
      default: out.kind = CubicProfileKind::ThreeDistinctIrreducible; break;
    }
    return out;
  }
  if (dg == 1) {
    FqElem alpha = neg(g[0]);
    FqElem beta = sub(neg(P[2]), add(alpha, alpha));
    out.kind = CubicProfileKind::DoubleRoot;
    out.repeated_root = alpha;
    out.rational_roots = {alpha, beta};
    std::sort(out.rational_roots.begin(), out.rational_roots.end(),
              [](FqElem a, FqElem b) { return a.code < b.code; });
    return out;
  }
  // Triple root with nonzero derivative forces p != 3, so alpha = -c2/3.
  out.kind = CubicProfileKind::TripleRoot;
  out.repeated_root = div(neg(P[2]), from_int(3));
  out.rational_roots = {out.repeated_root};
  return out;
}

TracelessCubicCounts FqField::count_traceless_cubics() const {
  TracelessCubicCounts counts;
  for (uint64_t c = 0; c < d_->q; ++c) {
    for (uint64_t dd = 0; dd < d_->q; ++dd) {
      CubicProfile prof = cubic_profile(FqPoly{FqElem{dd}, FqElem{c}, zero(), one()});
      switch (prof.kind) {
        case CubicProfileKind::ThreeDistinctAllRational: ++counts.split; break;
        case CubicProfileKind::ThreeDistinctOneRational: ++counts.one_root; break;
        case CubicProfileKind::ThreeDistinctIrreducible: ++counts.irreducible; break;
        default: break;
      }
    }
  }
  return counts;
}

FqField fq_make(uint64_t p, int f, std::optional<std::vector<uint64_t>> modulus) {
  return FqField::make(p, f, std::move(modulus));
}
bool fq_is_square(const FqField& field, FqElem a) { return field.is_square(a); }
CubicProfile fq_cubic_profile(const FqField& field, const FqPoly& monic_cubic) {
  return field.cubic_profile(monic_cubic);
}
TracelessCubicCounts fq_count_traceless_cubics(const FqField& field) { return field.count_traceless_cubics(); }

namespace fqpoly {

void trim(FqPoly& a) {
  while (!a.empty() && a.back().code == 0) a.pop_back();
}

int degree(const FqPoly& a) {
  for (size_t i = a.size(); i-- > 0;)
    if (a[i].code) return static_cast<int>(i);
  return -1;
}

FqPoly add(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), F.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

FqPoly sub(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), F.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

FqPoly mul(const FqField& F, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].code) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

FqPoly mod(const FqField& F, const FqPoly& a, const FqPoly& m) {
  int dm = degree(m);
  if (dm < 0) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  FqPoly r = a;
  trim(r);
  FqElem lead_inv = F.inv(m[dm]);
  while (degree(r) >= dm) {
    int dr = degree(r);
    FqElem c = F.mul(r[dr], lead_inv);
    for (int i = 0; i <= dm; ++i) r[dr - dm + i] = F.sub(r[dr - dm + i], F.mul(c, m[i]));
    trim(r);
  }
  return r;
}

FqPoly divexact(const FqField& F, const FqPoly& a, const FqPoly& b) {
  int db = degree(b);
  FqPoly r = a;
  trim(r);
  int dr = degree(r);
  if (dr < db) return {};
  FqPoly quo(dr - db + 1, F.zero());
  FqElem lead_inv = F.inv(b[db]);
  while (degree(r) >= db) {
    int d = degree(r);
    FqElem c = F.mul(r[d], lead_inv);
    quo[d - db] = c;
    for (int i = 0; i <= db; ++i) r[d - db + i] = F.sub(r[d - db + i], F.mul(c, b[i]));
    trim(r);
  }
  trim(quo);
  return quo;
}

FqPoly make_monic(const FqField& F, const FqPoly& a) {
  FqPoly r = a;
  trim(r);
  if (r.empty()) return r;
  FqElem inv = F.inv(r.back());
  for (auto& c : r) c = F.mul(c, inv);
  return r;
}

FqPoly gcd(const FqField& F, FqPoly a, FqPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FqPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(F, a);
}

FqPoly derivative(const FqField& F, const FqPoly& a) {
  if (a.size() <= 1) return {};
  FqPoly r(a.size() - 1, F.zero());
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(F.from_int(static_cast<int64_t>(i % F.p())), a[i]);
  trim(r);
  return r;
}

FqPoly powmod(const FqField& F, const FqPoly& base, uint64_t e, const FqPoly& m) {
  FqPoly result = mod(F, FqPoly{F.one()}, m);
  FqPoly b = mod(F, base, m);
  while (e) {
    if (e & 1) result = mod(F, mul(F, result, b), m);
    e >>= 1;
    if (e) b = mod(F, mul(F, b, b), m);
  }
  return result;
}

}  // namespace fqpoly

}  // namespace tamagawa
