// SPDX-License-Identifier: MIT
#include "tamagawa/number_field.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "tamagawa/errors.hpp"

namespace tamagawa {

// ---------------------------------------------------------------------------
// Integer polynomials.

std::string IntPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs[i];
    if (c == 0) continue;
    BigInt a = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

IntPoly parse_int_poly(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s += ch;
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty polynomial");
  std::map<int, BigInt> terms;
  size_t i = 0;
  auto fail = [&]() { return Error(ErrorCode::InvalidArgument, "cannot parse polynomial '" + text + "'"); };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw fail();
    }
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    BigInt coeff = start == i ? BigInt(1) : BigInt(s.substr(start, i - start));
    bool has_digits = start != i;
    int exp = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t es = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (es == i) throw fail();
        exp = std::stoi(s.substr(es, i - es));
      }
    } else if (!has_digits) {
      throw fail();
    }
    terms[exp] += sign * coeff;
  }
  IntPoly p;
  int deg = terms.rbegin()->first;
  p.coeffs.assign(deg + 1, BigInt(0));
  for (auto& [e, c] : terms) p.coeffs[e] = c;
  while (p.coeffs.size() > 1 && p.coeffs.back() == 0) p.coeffs.pop_back();
  return p;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p with a small prime p.

namespace {

using Fp = std::vector<uint64_t>;

struct PrimeField {
  uint64_t p;
  uint64_t mul(uint64_t a, uint64_t b) const { return static_cast<uint64_t>((unsigned __int128)a * b % p); }
  uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b) % p; }
  uint64_t inv(uint64_t a) const { return powmod_u64(a, p - 2, p); }

  void trim(Fp& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  int deg(const Fp& a) const { return static_cast<int>(a.size()) - 1; }

  Fp reduce(const IntPoly& f) const {
    Fp out(f.coeffs.size());
    BigInt P(static_cast<unsigned long>(p));
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
      BigInt r = f.coeffs[i] % P;
      if (r < 0) r += P;
      out[i] = r.get_ui();
    }
    trim(out);
    return out;
  }

  Fp mulp(const Fp& a, const Fp& b) const {
    if (a.empty() || b.empty()) return {};
    Fp out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) out[i + j] = add(out[i + j], mul(a[i], b[j]));
    trim(out);
    return out;
  }

  Fp subp(Fp a, const Fp& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i]);
    trim(a);
    return a;
  }

  // Quotient and remainder.
  std::pair<Fp, Fp> divmod(Fp a, const Fp& b) const {
    if (b.empty()) throw Error(ErrorCode::InvalidArgument, "division by the zero polynomial");
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    Fp q(a.size() - b.size() + 1, 0);
    uint64_t lead_inv = inv(b.back());
    for (int i = deg(a); i >= deg(b); --i) {
      uint64_t c = mul(a[i], lead_inv);
      q[i - deg(b)] = c;
      if (c == 0) continue;
      for (int j = 0; j <= deg(b); ++j) a[i - deg(b) + j] = sub(a[i - deg(b) + j], mul(c, b[j]));
    }
    trim(a);
    trim(q);
    return {q, a};
  }

  Fp monic(Fp a) const {
    trim(a);
    if (a.empty()) return a;
    uint64_t li = inv(a.back());
    for (auto& c : a) c = mul(c, li);
    return a;
  }

  Fp gcd(Fp a, Fp b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Fp r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  Fp derivative(const Fp& a) const {
    Fp out;
    for (size_t i = 1; i < a.size(); ++i) out.push_back(mul(a[i], i % p));
    trim(out);
    return out;
  }

  Fp powmod(Fp base, uint64_t e, const Fp& m) const {
    Fp result{1};
    base = divmod(base, m).second;
    while (e) {
      if (e & 1) result = divmod(mulp(result, base), m).second;
      base = divmod(mulp(base, base), m).second;
      e >>= 1;
    }
    return result;
  }

  // Squarefree decomposition: f = prod_i s_i^i (f monic).
  void squarefree(const Fp& f, int mult, std::map<int, Fp>& out) const {
    if (deg(f) <= 0) return;
    Fp d = derivative(f);
    if (d.empty()) {
      // f = g(x^p) = g(x)^p over F_p.
      Fp g;
      for (size_t i = 0; i < f.size(); i += p) g.push_back(f[i]);
      squarefree(g, mult * static_cast<int>(p), out);
      return;
    }
    Fp c = gcd(f, d);
    Fp w = divmod(f, c).first;
    int i = 1;
    while (deg(w) > 0) {
      Fp y = gcd(w, c);
      Fp z = divmod(w, y).first;
      if (deg(z) > 0) {
        auto& slot = out[i * mult];
        slot = slot.empty() ? z : mulp(slot, z);
      }
      ++i;
      w = y;
      c = divmod(c, y).first;
    }
    if (deg(c) > 0) {
      Fp g;
      for (size_t k = 0; k < c.size(); k += p) g.push_back(c[k]);
      squarefree(g, mult * static_cast<int>(p), out);
    }
  }

  // Distinct-degree factorization of a squarefree monic polynomial: degree -> count.
  std::map<int, int> distinct_degree(Fp f) const {
    std::map<int, int> out;
    Fp x{0, 1};
    Fp h = x;
    for (int d = 1; 2 * d <= deg(f); ++d) {
      h = powmod(h, p, f);
      Fp g = gcd(f, subp(h, x));
      if (deg(g) > 0) {
        out[d] += deg(g) / d;
        f = divmod(f, g).first;
        h = divmod(h, f).second;
      }
    }
    if (deg(f) > 0) out[deg(f)] += 1;
    return out;
  }
};

IntPoly lift(const Fp& a) {
  IntPoly out;
  for (auto c : a) out.coeffs.push_back(BigInt(static_cast<unsigned long>(c)));
  if (out.coeffs.empty()) out.coeffs.push_back(0);
  return out;
}

IntPoly int_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return out;
}

bool is_monic(const IntPoly& f) { return f.degree() >= 1 && f.coeffs.back() == 1; }

}  // namespace

Splitting factor_prime(const NumberFieldSpec& field, uint64_t p) {
  if (!is_prime_u64(p)) throw Error(ErrorCode::NonPrimeP, std::to_string(p) + " is not prime");
  PrimeField F{p};
  Fp fbar = F.reduce(field.poly);
  std::map<int, Fp> parts;
  F.squarefree(fbar, 1, parts);

  // Dedekind criterion with g = rad(fbar), h = fbar / g.
  Fp g{1};
  for (auto& [m, s] : parts) g = F.mulp(g, s);
  Fp h = F.divmod(fbar, g).first;
  IntPoly gh = int_mul(lift(g), lift(h));
  IntPoly diff = field.poly;
  if (diff.coeffs.size() < gh.coeffs.size()) diff.coeffs.resize(gh.coeffs.size(), BigInt(0));
  for (size_t i = 0; i < gh.coeffs.size(); ++i) diff.coeffs[i] -= gh.coeffs[i];
  BigInt P(static_cast<unsigned long>(p));
  for (auto& c : diff.coeffs) {
    if (c % P != 0) throw Error(ErrorCode::InvalidArgument, "internal: f - gh not divisible by p");
    c /= P;
  }
  Fp common = F.gcd(F.gcd(F.reduce(diff), g), h);
  if (F.deg(common) > 0)
    throw Error(ErrorCode::IndexDivisor, "p = " + std::to_string(p) +
                                             " divides the index of Z[theta]; supply its splitting in an override file");

  Splitting out;
  for (auto& [m, s] : parts)
    for (auto& [d, count] : F.distinct_degree(s))
      for (int k = 0; k < count; ++k) out.push_back({m, d});
  std::sort(out.begin(), out.end());
  return out;
}

bool certify_irreducible(const IntPoly& f) {
  int d = f.degree();
  if (d < 1 || !is_monic(f)) return false;
  if (d == 1) return true;
  // Rational roots of a monic integer polynomial are integer divisors of f(0).
  BigInt c0 = abs(f.coeffs[0]);
  if (c0 == 0) return false;
  std::set<int> possible;
  for (int k = 1; k < d; ++k) possible.insert(k);
  for (uint64_t p : primes_up_to(400)) {
    PrimeField F{p};
    Fp fbar = F.reduce(f);
    if (F.deg(fbar) != d) continue;
    if (F.deg(F.gcd(fbar, F.derivative(fbar))) > 0) continue;
    std::vector<int> degs;
    for (auto& [deg, count] : F.distinct_degree(fbar))
      for (int k = 0; k < count; ++k) degs.push_back(deg);
    std::set<int> sums{0};
    for (int x : degs) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + x);
      sums = std::move(next);
    }
    std::set<int> keep;
    for (int k : possible)
      if (sums.count(k)) keep.insert(k);
    possible = std::move(keep);
    if (possible.empty()) return true;
  }
  return false;
}

NumberFieldSpec NumberFieldSpec::from_poly(IntPoly poly, std::string label) {
  if (!is_monic(poly)) throw Error(ErrorCode::InvalidArgument, "defining polynomial must be monic of degree >= 1");
  if (!certify_irreducible(poly))
    throw Error(ErrorCode::InvalidArgument, "could not certify irreducibility of " + poly.to_string());
  NumberFieldSpec s;
  s.degree = poly.degree();
  s.label = label.empty() ? "Q[x]/(" + poly.to_string() + ")" : std::move(label);
  s.poly = std::move(poly);
  return s;
}

NumberFieldSpec quadratic_field(int64_t D) {
  if (D == 0 || D == 1) throw Error(ErrorCode::InvalidArgument, "D must not be 0 or 1");
  uint64_t a = D < 0 ? static_cast<uint64_t>(-D) : static_cast<uint64_t>(D);
  for (uint64_t k = 2; k * k <= a; ++k)
    if (a % (k * k) == 0) throw Error(ErrorCode::NotSquarefree, std::to_string(D) + " is not squarefree");
  IntPoly f;
  int64_t m = ((D % 4) + 4) % 4;
  if (m == 1) {
    f.coeffs = {BigInt(static_cast<long>((1 - D) / 4)), BigInt(-1), BigInt(1)};
  } else {
    f.coeffs = {BigInt(static_cast<long>(-D)), BigInt(0), BigInt(1)};
  }
  NumberFieldSpec s;
  s.poly = f;
  s.degree = 2;
  s.label = "Q(sqrt(" + std::to_string(D) + "))";
  return s;
}

Splitting cyclotomic_splitting(uint64_t a, uint64_t p) {
  if (!is_prime_u64(a)) throw Error(ErrorCode::NonPrimeP, "cyclotomic index must be prime");
  if (!is_prime_u64(p)) throw Error(ErrorCode::NonPrimeP, std::to_string(p) + " is not prime");
  if (a == 2) return {{1, 1}};
  if (p == a) return {{static_cast<int>(a - 1), 1}};
  uint64_t f = multiplicative_order(p % a, a);
  uint64_t g = (a - 1) / f;
  return Splitting(g, {1, static_cast<int>(f)});
}

Splitting multiquadratic_splitting(const std::vector<uint64_t>& primes, uint64_t p) {
  if (primes.empty()) return {{1, 1}};
  std::set<uint64_t> seen;
  for (uint64_t r : primes) {
    if (!is_prime_u64(r) || r % 8 != 1) throw Error(ErrorCode::InvalidArgument, "generators must be primes = 1 mod 8");
    if (!seen.insert(r).second) throw Error(ErrorCode::InvalidArgument, "generators must be distinct");
  }
  if (!is_prime_u64(p)) throw Error(ErrorCode::NonPrimeP, std::to_string(p) + " is not prime");
  int k = static_cast<int>(primes.size());
  int total = 1 << k;
  if (p == 2) return Splitting(total, {1, 1});
  int e = 1;
  int f = 1;
  for (uint64_t r : primes) {
    if (r == p) {
      e = 2;
      continue;
    }
    if (legendre_symbol(static_cast<int64_t>(r % p), p) == -1) f = 2;
  }
  int g = total / (e * f);
  return Splitting(g, {e, f});
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Dedekind: return "dedekind";
    case Provenance::Analytic: return "analytic";
    case Provenance::UserOverride: return "override";
  }
  return "?";
}

OverrideMap parse_override_json(const std::string& text) {
  OverrideMap out;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::InvalidArgument, std::string("override file is not valid JSON: ") + ex.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "override file must be a JSON object");
  for (auto& [key, val] : j.items()) {
    uint64_t p = 0;
    try {
      size_t used = 0;
      p = std::stoull(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "override key '" + key + "' is not an integer");
    }
    if (!is_prime_u64(p)) throw Error(ErrorCode::NonPrimeP, "override key " + key + " is not prime");
    if (!val.is_array()) throw Error(ErrorCode::InvalidArgument, "override for " + key + " must be a list");
    Splitting s;
    for (auto& pair : val) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer())
        throw Error(ErrorCode::InvalidArgument, "override entries must be [e, f] integer pairs");
      int e = pair[0].get<int>(), f = pair[1].get<int>();
      if (e < 1 || f < 1) throw Error(ErrorCode::InvalidArgument, "e and f must be positive");
      s.push_back({e, f});
    }
    std::sort(s.begin(), s.end());
    out[p] = s;
  }
  return out;
}

OverrideMap load_override_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open override file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_override_json(ss.str());
}

namespace {

void check_degree(const Splitting& s, int d, uint64_t p) {
  int sum = 0;
  for (auto& [e, f] : s) sum += e * f;
  if (sum != d)
    throw Error(ErrorCode::InvalidArgument,
                "splitting at p = " + std::to_string(p) + " has sum e*f = " + std::to_string(sum) + " != " + std::to_string(d));
}

class RationalSource : public SplittingSource {
 public:
  int degree() const override { return 1; }
  std::string label() const override { return "Q"; }
  Splitting splitting(uint64_t) const override { return {{1, 1}}; }
  Provenance provenance(uint64_t) const override { return Provenance::Analytic; }
};

class PolynomialSource : public SplittingSource {
 public:
  PolynomialSource(NumberFieldSpec f, OverrideMap o) : field_(std::move(f)), overrides_(std::move(o)) {
    for (auto& [p, s] : overrides_) check_degree(s, field_.degree, p);
  }
  int degree() const override { return field_.degree; }
  std::string label() const override { return field_.label; }
  Splitting splitting(uint64_t p) const override {
    auto it = overrides_.find(p);
    if (it != overrides_.end()) return it->second;
    return factor_prime(field_, p);
  }
  Provenance provenance(uint64_t p) const override {
    return overrides_.count(p) ? Provenance::UserOverride : Provenance::Dedekind;
  }

 private:
  NumberFieldSpec field_;
  OverrideMap overrides_;
};

class CyclotomicSource : public SplittingSource {
 public:
  explicit CyclotomicSource(uint64_t a) : a_(a) {
    if (!is_prime_u64(a)) throw Error(ErrorCode::NonPrimeP, "cyclotomic index must be prime");
  }
  int degree() const override { return a_ == 2 ? 1 : static_cast<int>(a_ - 1); }
  std::string label() const override { return "Q(zeta_" + std::to_string(a_) + ")"; }
  Splitting splitting(uint64_t p) const override { return cyclotomic_splitting(a_, p); }
  Provenance provenance(uint64_t) const override { return Provenance::Analytic; }

 private:
  uint64_t a_;
};

class MultiquadraticSource : public SplittingSource {
 public:
  explicit MultiquadraticSource(std::vector<uint64_t> primes) : primes_(std::move(primes)) {
    (void)multiquadratic_splitting(primes_, 2);
  }
  int degree() const override { return 1 << primes_.size(); }
  std::string label() const override {
    std::string s = "Q(";
    for (size_t i = 0; i < primes_.size(); ++i) s += (i ? ",sqrt(" : "sqrt(") + std::to_string(primes_[i]) + ")";
    return s + ")";
  }
  Splitting splitting(uint64_t p) const override { return multiquadratic_splitting(primes_, p); }
  Provenance provenance(uint64_t) const override { return Provenance::Analytic; }

 private:
  std::vector<uint64_t> primes_;
};

class OverrideSource : public SplittingSource {
 public:
  OverrideSource(int d, std::string label, OverrideMap o, std::optional<NumberFieldSpec> fb)
      : d_(d), label_(std::move(label)), overrides_(std::move(o)), fallback_(std::move(fb)) {
    for (auto& [p, s] : overrides_) check_degree(s, d_, p);
  }
  int degree() const override { return d_; }
  std::string label() const override { return label_; }
  Splitting splitting(uint64_t p) const override {
    auto it = overrides_.find(p);
    if (it != overrides_.end()) return it->second;
    if (fallback_) return factor_prime(*fallback_, p);
    // Without a defining polynomial, unlisted primes are taken as unramified and split completely.
    return Splitting(d_, {1, 1});
  }
  Provenance provenance(uint64_t p) const override {
    return overrides_.count(p) || !fallback_ ? Provenance::UserOverride : Provenance::Dedekind;
  }

 private:
  int d_;
  std::string label_;
  OverrideMap overrides_;
  std::optional<NumberFieldSpec> fallback_;
};

}  // namespace

std::shared_ptr<SplittingSource> rational_source() { return std::make_shared<RationalSource>(); }
std::shared_ptr<SplittingSource> polynomial_source(NumberFieldSpec field, OverrideMap overrides) {
  return std::make_shared<PolynomialSource>(std::move(field), std::move(overrides));
}
std::shared_ptr<SplittingSource> cyclotomic_source(uint64_t a) { return std::make_shared<CyclotomicSource>(a); }
std::shared_ptr<SplittingSource> multiquadratic_source(std::vector<uint64_t> primes) {
  return std::make_shared<MultiquadraticSource>(std::move(primes));
}
std::shared_ptr<SplittingSource> override_source(int degree, std::string label, OverrideMap overrides,
                                                 std::optional<NumberFieldSpec> fallback) {
  return std::make_shared<OverrideSource>(degree, std::move(label), std::move(overrides), std::move(fallback));
}

}  // namespace tamagawa
