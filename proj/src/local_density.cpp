// SPDX-License-Identifier: MIT
#include "tamagawa/local_density.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "tamagawa/errors.hpp"

namespace tamagawa {

PrimeLocalProfile PrimeLocalProfile::make(uint64_t p, int f, int e) {
  if (!is_prime_u64(p)) throw Error(ErrorCode::NonPrimeP, std::to_string(p) + " is not prime");
  if (f < 1 || e < 1) throw Error(ErrorCode::InvalidArgument, "f and e must be >= 1");
  unsigned __int128 q = 1;
  for (int i = 0; i < f; ++i) {
    q *= p;
    if (q >= (static_cast<unsigned __int128>(1) << 63)) throw Error(ErrorCode::InvalidArgument, "q = p^f too large");
  }
  return PrimeLocalProfile{p, f, e};
}

uint64_t PrimeLocalProfile::q() const {
  uint64_t q = 1;
  for (int i = 0; i < f; ++i) q *= p;
  return q;
}

DensitySpectrum delta(const PrimeLocalProfile& profile) {
  static std::mutex mu;
  static std::map<std::tuple<uint64_t, int, PrimeClass>, DensitySpectrum> memo;
  PrimeClass pc = profile.prime_class();
  // Away from 6 the chain does not depend on e.
  int e = pc == PrimeClass::NotAbove6 ? 1 : profile.e;
  auto key = std::make_tuple(profile.q(), e, pc);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  DensitySpectrum sp = delta_spectrum(profile.q(), e, pc);
  std::lock_guard<std::mutex> lock(mu);
  if (memo.size() > 4096) memo.clear();
  memo.emplace(key, sp);
  return sp;
}

Rational local_mean(const DensitySpectrum& sp) {
  Rational s(0);
  for (const auto& [c, v] : sp.finite) s += c * v;
  if (sp.tail != 0) {
    // sum_{c >= c0} c x^c = x^{c0} (c0 - (c0 - 1) x) / (1 - x)^2
    Rational x = 1 / Rational(static_cast<unsigned long>(sp.q));
    int c0 = sp.c_cut + 1;
    s += sp.tail * rpow(x, c0) * (c0 - (c0 - 1) * x) / ((1 - x) * (1 - x));
  }
  return s;
}

TruncatedLocalFactor local_factor_truncated(const DensitySpectrum& sp, int m_max) {
  if (m_max < 1) throw Error(ErrorCode::InvalidArgument, "m_max must be >= 1");
  TruncatedLocalFactor t;
  Rational sum(0);
  for (int c = 1; c <= m_max; ++c) {
    t.coeffs.push_back(sp.at(c));
    sum += t.coeffs.back();
  }
  t.tail_mass = sp.total() - sum;
  return t;
}

}  // namespace tamagawa
