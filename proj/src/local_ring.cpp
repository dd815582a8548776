// SPDX-License-Identifier: MIT
#include "tamagawa/local_ring.hpp"

#include <algorithm>
#include <sstream>

#include "tamagawa/rational.hpp"

namespace tamagawa {

struct LocalRingData {
  FqField field;
  uint64_t p = 0;
  int f = 0;
  int e = 0;
  int N = 0;
  int M = 0;
  int cap = 0;
  uint64_t mod = 0;                  // p^M
  std::vector<uint64_t> ppow;        // p^i, 0 <= i <= M
  std::vector<uint64_t> neg_g;       // -g_i mod p^M, so x^f = sum neg_g[i] x^i

  explicit LocalRingData(FqField F) : field(std::move(F)) {}

  int ef() const { return e * f; }

  uint64_t addm(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= mod ? s - mod : s;
  }
  uint64_t subm(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + mod - b; }
  uint64_t mulm(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % mod);
  }

  // out = a * b in (Z/p^M)[x]/(g~); a, b, out point at f coefficients.
  void rmul(const uint64_t* a, const uint64_t* b, uint64_t* out) const {
    if (f == 1) {
      out[0] = mulm(a[0], b[0]);
      return;
    }
    unsigned __int128 z[2 * kMaxEF] = {};
    uint64_t zz[2 * kMaxEF] = {};
    for (int i = 0; i < f; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < f; ++j) z[i + j] += static_cast<unsigned __int128>(a[i]) * b[j] % mod;
    }
    for (int i = 0; i < 2 * f - 1; ++i) zz[i] = static_cast<uint64_t>(z[i] % mod);
    for (int k = 2 * f - 2; k >= f; --k) {
      uint64_t c = zz[k];
      if (!c) continue;
      zz[k] = 0;
      for (int i = 0; i < f; ++i) zz[k - f + i] = addm(zz[k - f + i], mulm(c, neg_g[i]));
    }
    for (int i = 0; i < f; ++i) out[i] = zz[i];
  }

  // p-adic valuation of an element of (Z/p^M)[x]/(g~); M when zero.
  int vp(const uint64_t* a) const {
    int best = M;
    for (int i = 0; i < f; ++i) {
      uint64_t v = a[i];
      if (!v) continue;
      int k = 0;
      if (p == 2) {
        k = __builtin_ctzll(v);
      } else {
        while (v % p == 0) {
          v /= p;
          ++k;
        }
      }
      best = std::min(best, k);
    }
    return best;
  }

  // Raw valuation of the stored value (cap when zero).
  int raw_val(const std::array<uint64_t, kMaxEF>& c) const {
    int best = cap;
    for (int j = 0; j < e; ++j) {
      int v = vp(&c[j * f]);
      if (v < M) best = std::min(best, e * v + j);
    }
    return best;
  }

  // Zeroes every digit at position >= t.
  void truncate(std::array<uint64_t, kMaxEF>& c, int t) const {
    if (t >= cap) return;
    for (int j = 0; j < e; ++j) {
      // Slot j holds digits j, j+e, j+2e, ...; keep those below t.
      int keep = t <= j ? 0 : (t - j + e - 1) / e;
      uint64_t m = ppow[keep];
      for (int i = 0; i < f; ++i) {
        uint64_t& x = c[j * f + i];
        x = keep >= M ? x : x % m;
      }
    }
  }

  static LocalElem build(const LocalRingData* r, const std::array<uint64_t, kMaxEF>& c, int prec) {
    LocalElem x;
    x.ring_ = r;
    x.c_ = c;
    x.prec_ = std::clamp(prec, 0, r->cap);
    r->truncate(x.c_, x.prec_);
    return x;
  }
};

namespace {

LocalElem make_elem(const LocalRingData* r, const std::array<uint64_t, kMaxEF>& c, int prec) {
  return LocalRingData::build(r, c, prec);
}

}  // namespace

LocalRing LocalRing::make(uint64_t p, int f, int e, int N) { return make(FqField::make(p, f), e, N); }

LocalRing LocalRing::make(const FqField& field, int e, int N) {
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "ramification index must be >= 1");
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "precision must be >= 1");
  if (e * field.f() > kMaxEF) throw Error(ErrorCode::PrecisionExceeded, "e*f exceeds the inline storage limit");
  auto d = std::make_shared<LocalRingData>(field);
  d->p = field.p();
  d->f = field.f();
  d->e = e;
  d->N = N;
  d->M = (N + e - 1) / e;
  d->cap = e * d->M;
  unsigned __int128 m = 1;
  d->ppow.push_back(1);
  for (int i = 0; i < d->M; ++i) {
    m *= d->p;
    if (m >= (static_cast<unsigned __int128>(1) << 62))
      throw Error(ErrorCode::PrecisionExceeded, "p^ceil(N/e) does not fit in 62 bits");
    d->ppow.push_back(static_cast<uint64_t>(m));
  }
  d->mod = static_cast<uint64_t>(m);
  const auto& g = field.modulus();
  d->neg_g.resize(d->f);
  for (int i = 0; i < d->f; ++i) d->neg_g[i] = (d->mod - g[i] % d->mod) % d->mod;
  return LocalRing(std::move(d));
}

const FqField& LocalRing::field() const { return d_->field; }
uint64_t LocalRing::p() const { return d_->p; }
int LocalRing::f() const { return d_->f; }
uint64_t LocalRing::q() const { return d_->field.q(); }
int LocalRing::e() const { return d_->e; }
int LocalRing::N() const { return d_->N; }
int LocalRing::capacity() const { return d_->cap; }

LocalElem LocalRing::zero() const { return make_elem(d_.get(), {}, d_->cap); }

LocalElem LocalRing::one() const { return from_int(1); }

LocalElem LocalRing::from_int(int64_t n) const {
  std::array<uint64_t, kMaxEF> c{};
  int64_t m = static_cast<int64_t>(d_->mod);
  int64_t r = n % m;
  if (r < 0) r += m;
  c[0] = static_cast<uint64_t>(r);
  return make_elem(d_.get(), c, d_->cap);
}

LocalElem LocalRing::lift(FqElem digit) const {
  std::array<uint64_t, kMaxEF> c{};
  auto co = d_->field.coeffs(digit);
  for (int i = 0; i < d_->f; ++i) c[i] = co[i];
  return make_elem(d_.get(), c, d_->cap);
}

LocalElem LocalRing::uniformizer() const {
  std::array<uint64_t, kMaxEF> c{};
  if (d_->e == 1) {
    c[0] = d_->p % d_->mod;
  } else {
    c[d_->f] = 1;
  }
  return make_elem(d_.get(), c, d_->cap);
}

LocalElem LocalRing::from_digits(const std::vector<FqElem>& digits) const {
  int k = static_cast<int>(digits.size());
  if (k > d_->cap) throw Error(ErrorCode::PrecisionExceeded, "more digits than the ring can hold");
  std::array<uint64_t, kMaxEF> c{};
  for (int i = 0; i < k; ++i) {
    int slot = i % d_->e;
    uint64_t scale = d_->ppow[i / d_->e];
    auto co = d_->field.coeffs(digits[i]);
    for (int t = 0; t < d_->f; ++t) c[slot * d_->f + t] += co[t] * scale;
  }
  return make_elem(d_.get(), c, k);
}

LocalElem LocalRing::sample_uniform(std::mt19937_64& rng) const { return sample_uniform(rng, d_->N); }

LocalElem LocalRing::sample_uniform(std::mt19937_64& rng, int k) const {
  if (k > d_->cap) throw Error(ErrorCode::PrecisionExceeded, "sampling precision above ring capacity");
  std::uniform_int_distribution<uint64_t> dist(0, d_->mod - 1);
  std::array<uint64_t, kMaxEF> c{};
  for (int i = 0; i < d_->ef(); ++i) c[i] = dist(rng);
  return make_elem(d_.get(), c, k);
}

LocalElem LocalRing::residue_at(int k, uint64_t index) const {
  if (k > d_->cap) throw Error(ErrorCode::PrecisionExceeded, "enumeration precision above ring capacity");
  uint64_t q = d_->field.q();
  std::array<uint64_t, kMaxEF> c{};
  for (int i = 0; i < k; ++i) {
    uint64_t code = index % q;
    index /= q;
    int slot = i % d_->e;
    uint64_t scale = d_->ppow[i / d_->e];
    for (int t = 0; t < d_->f; ++t) {
      c[slot * d_->f + t] += (code % d_->p) * scale;
      code /= d_->p;
    }
  }
  return make_elem(d_.get(), c, k);
}

namespace {
void require_same_ring(const LocalRingData* a, const LocalRingData* b) {
  if (a != b) throw Error(ErrorCode::InvalidArgument, "local elements from different rings");
}
}  // namespace

LocalElem LocalElem::operator+(const LocalElem& o) const {
  require_same_ring(ring_, o.ring_);
  std::array<uint64_t, kMaxEF> c{};
  for (int i = 0; i < ring_->ef(); ++i) c[i] = ring_->addm(c_[i], o.c_[i]);
  return make_elem(ring_, c, std::min(prec_, o.prec_));
}

LocalElem LocalElem::operator-(const LocalElem& o) const {
  require_same_ring(ring_, o.ring_);
  std::array<uint64_t, kMaxEF> c{};
  for (int i = 0; i < ring_->ef(); ++i) c[i] = ring_->subm(c_[i], o.c_[i]);
  return make_elem(ring_, c, std::min(prec_, o.prec_));
}

LocalElem LocalElem::operator-() const {
  std::array<uint64_t, kMaxEF> c{};
  for (int i = 0; i < ring_->ef(); ++i) c[i] = ring_->subm(0, c_[i]);
  return make_elem(ring_, c, prec_);
}

LocalElem LocalElem::operator*(const LocalElem& o) const {
  require_same_ring(ring_, o.ring_);
  const LocalRingData& r = *ring_;
  int f = r.f, e = r.e;
  std::array<uint64_t, kMaxEF> c{};
  uint64_t tmp[kMaxEF];
  for (int j = 0; j < e; ++j) {
    const uint64_t* a = &c_[j * f];
    bool az = true;
    for (int t = 0; t < f; ++t) az = az && a[t] == 0;
    if (az) continue;
    for (int k = 0; k < e; ++k) {
      const uint64_t* b = &o.c_[k * f];
      r.rmul(a, b, tmp);
      int slot = j + k;
      uint64_t scale = 1;
      if (slot >= e) {
        slot -= e;
        scale = r.p;
      }
      for (int t = 0; t < f; ++t) {
        uint64_t v = scale == 1 ? tmp[t] : r.mulm(tmp[t], scale);
        c[slot * f + t] = r.addm(c[slot * f + t], v);
      }
    }
  }
  int va = std::min(r.raw_val(c_), prec_);
  int vb = std::min(r.raw_val(o.c_), o.prec_);
  int prec = std::min(prec_ + vb, o.prec_ + va);
  return make_elem(ring_, c, std::min(prec, r.cap));
}

LocalElem LocalElem::operator*(int64_t n) const {
  const LocalRingData& r = *ring_;
  int64_t m = static_cast<int64_t>(r.mod);
  int64_t s = n % m;
  if (s < 0) s += m;
  std::array<uint64_t, kMaxEF> c{};
  for (int i = 0; i < r.ef(); ++i) c[i] = r.mulm(c_[i], static_cast<uint64_t>(s));
  int vn = 0;
  if (n == 0) {
    vn = r.cap;
  } else {
    int64_t t = n < 0 ? -n : n;
    while (t % static_cast<int64_t>(r.p) == 0) {
      t /= static_cast<int64_t>(r.p);
      vn += r.e;
    }
  }
  return make_elem(ring_, c, std::min(prec_ + vn, r.cap));
}

bool LocalElem::operator==(const LocalElem& o) const {
  return ring_ == o.ring_ && prec_ == o.prec_ && c_ == o.c_;
}

bool LocalElem::congruent(const LocalElem& o) const {
  require_same_ring(ring_, o.ring_);
  return (*this - o).is_zero_to_precision();
}

Valuation LocalElem::val() const {
  int v = ring_->raw_val(c_);
  if (v < prec_) return Valuation{v, true};
  return Valuation{prec_, false};
}

FqElem LocalElem::residue() const {
  if (prec_ < 1) throw PrecisionLoss("residue of an element with no known digits");
  std::vector<uint64_t> co(ring_->f);
  for (int t = 0; t < ring_->f; ++t) co[t] = c_[t] % ring_->p;
  return ring_->field.from_coeffs(co);
}

FqElem LocalElem::unit_part() const {
  Valuation v = val();
  if (v.at_least()) throw Error(ErrorCode::ZeroToPrecision, "unit_part of an element that is zero to precision");
  return divide_by_pi(v.value).residue();
}

LocalElem LocalElem::divide_by_pi(int k) const {
  if (k <= 0) return *this;
  Valuation v = val();
  if (v.exact && v.value < k) throw Error(ErrorCode::InvalidArgument, "element not divisible by pi^k");
  if (!v.exact && prec_ < k) throw PrecisionLoss("division by pi^k beyond known precision");
  const LocalRingData& r = *ring_;
  int f = r.f, e = r.e;
  std::array<uint64_t, kMaxEF> c = c_;
  for (int step = 0; step < k; ++step) {
    std::array<uint64_t, kMaxEF> n{};
    for (int j = 1; j < e; ++j)
      for (int t = 0; t < f; ++t) n[(j - 1) * f + t] = c[j * f + t];
    for (int t = 0; t < f; ++t) n[(e - 1) * f + t] = c[t] / r.p;
    c = n;
  }
  return make_elem(ring_, c, prec_ - k);
}

std::vector<FqElem> LocalElem::digits() const {
  std::vector<FqElem> out;
  LocalElem x = *this;
  for (int i = 0; i < prec_; ++i) {
    FqElem d = x.residue();
    out.push_back(d);
    std::array<uint64_t, kMaxEF> lc{};
    auto co = ring_->field.coeffs(d);
    for (int t = 0; t < ring_->f; ++t) lc[t] = co[t];
    LocalElem l = make_elem(ring_, lc, ring_->cap);
    x = (x - l).divide_by_pi(1);
  }
  return out;
}

LocalElem LocalElem::inverse() const {
  Valuation v = val();
  if (!v.exact || v.value != 0) throw Error(ErrorCode::InvalidArgument, "inverse of a non-unit");
  const FqField& F = ring_->field;
  FqElem r0 = F.inv(residue());
  std::array<uint64_t, kMaxEF> lc{};
  auto co = F.coeffs(r0);
  for (int t = 0; t < ring_->f; ++t) lc[t] = co[t];
  LocalElem x = make_elem(ring_, lc, ring_->cap);
  std::array<uint64_t, kMaxEF> two{};
  two[0] = 2 % ring_->mod;
  LocalElem two_e = make_elem(ring_, two, ring_->cap);
  for (int known = 1; known < ring_->cap; known *= 2) x = x * (two_e - *this * x);
  return x.truncated(prec_);
}

LocalElem LocalElem::truncated(int k) const { return make_elem(ring_, c_, std::min(prec_, k)); }

std::string LocalElem::to_string() const {
  std::ostringstream os;
  auto d = digits();
  os << "[";
  for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i].code;
  os << "] + O(pi^" << prec_ << ")";
  return os.str();
}

LocalElem LocalElem::make_int(int64_t n) const {
  std::array<uint64_t, kMaxEF> c{};
  int64_t m = static_cast<int64_t>(ring_->mod);
  int64_t r = n % m;
  if (r < 0) r += m;
  c[0] = static_cast<uint64_t>(r);
  return make_elem(ring_, c, ring_->cap);
}

LocalElem LocalElem::make_lift(FqElem digit) const {
  std::array<uint64_t, kMaxEF> c{};
  auto co = ring_->field.coeffs(digit);
  for (int i = 0; i < ring_->f; ++i) c[i] = co[i];
  return make_elem(ring_, c, ring_->cap);
}

LocalElem LocalElem::make_pi_power(int k) const {
  std::array<uint64_t, kMaxEF> c{};
  if (k < ring_->cap) c[(k % ring_->e) * ring_->f] = ring_->ppow[k / ring_->e];
  return make_elem(ring_, c, ring_->cap);
}

const FqField& LocalElem::field() const { return ring_->field; }
uint64_t LocalElem::residue_characteristic() const { return ring_->p; }
int LocalElem::ramification() const { return ring_->e; }
int LocalElem::capacity() const { return ring_->cap; }

LocalRing ring_make(uint64_t p, int f, int e, int N) { return LocalRing::make(p, f, e, N); }
Valuation val(const LocalElem& x) { return x.val(); }
FqElem unit_part(const LocalElem& x) { return x.unit_part(); }
LocalElem sample_uniform(const LocalRing& ring, std::mt19937_64& rng) { return ring.sample_uniform(rng); }

ResidueEnumerator::ResidueEnumerator(LocalRing ring, int k) : ring_(std::move(ring)), k_(k) {
  if (k < 0 || k > ring_.N()) throw Error(ErrorCode::PrecisionExceeded, "k exceeds the ring precision N");
  unsigned __int128 s = 1;
  for (int i = 0; i < k; ++i) {
    s *= ring_.q();
    if (s > (static_cast<unsigned __int128>(1) << 63)) throw Error(ErrorCode::BudgetExceeded, "q^k too large");
  }
  size_ = static_cast<uint64_t>(s);
}

bool ResidueEnumerator::next(LocalElem& out) {
  if (index_ >= size_) return false;
  out = ring_.residue_at(k_, index_++);
  return true;
}

ResidueEnumerator enumerate_residues(const LocalRing& ring, int k) { return ResidueEnumerator(ring, k); }

}  // namespace tamagawa
