// SPDX-License-Identifier: MIT
/**
 * @file global_series.cpp
 * @brief Euler products with certified tails, Bernoulli numbers and even zeta values.
 */
#include "tamagawa/global_series.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "tamagawa/errors.hpp"
#include "tamagawa/parallel.hpp"

namespace tamagawa {

Rational prime_tail_sum_bound(uint64_t B) {
  if (B < 3) throw Error(ErrorCode::BTooSmall, "prime bound must be >= 3");
  if (B < 6) return Rational(1, static_cast<unsigned long>(B));
  // Integers coprime to 6 above B lie at most two per block [6k, 6k + 6), k >= floor(B/6),
  // each exceeding 6k; midpoint convexity bounds the block sum by an integral.
  uint64_t K = B / 6;
  return Rational(1) / Rational(18 * static_cast<unsigned long>(K) - 6);
}

namespace {

Rational norm_rational(uint64_t p, int f) {
  BigInt q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(f));
  return Rational(q);
}

bool exact_norm(uint64_t p, int f) {
  unsigned __int128 q = 1;
  uint64_t limit = p <= 3 ? (1ULL << 62) : kExactNormLimit;
  for (int i = 0; i < f; ++i) {
    q *= p;
    if (q > limit) return false;
  }
  return true;
}

}  // namespace

LocalFactorInterval local_factor_interval(uint64_t p, int f, int e, int m_max) {
  if (m_max < 1) throw Error(ErrorCode::InvalidArgument, "m_max must be >= 1");
  LocalFactorInterval out;
  if (exact_norm(p, f)) {
    DensitySpectrum sp = delta(PrimeLocalProfile::make(p, f, e));
    TruncatedLocalFactor t = local_factor_truncated(sp, m_max);
    for (const Rational& c : t.coeffs) out.coeffs.emplace_back(c);
    out.mean = Interval(local_mean(sp));
    return out;
  }
  if (p == 2 || (p == 3 && e > 1))
    throw Error(ErrorCode::UnsupportedClass, "norm " + std::to_string(p) + "^" + std::to_string(f) +
                                                 " is too large for the exact chain and no certified bound applies");
  Rational Q = norm_rational(p, f);
  Rational eps = kTrivialTailConstant / (Q * Q);
  out.exact = false;
  out.coeffs.emplace_back(1 - eps, Rational(1));
  for (int c = 2; c <= m_max; ++c) out.coeffs.push_back(Interval::up_to(eps));
  out.mean = Interval(Rational(1), 1 + kMeanTailConstant / (Q * Q));
  return out;
}

namespace {

/// Truncated Dirichlet series sum_{m <= M} a(m) m^{-s}, stored as a[0..M-1].
using Series = std::vector<Interval>;

Series series_one(int M) {
  Series s(M, Interval::point(0));
  s[0] = Interval::point(1);
  return s;
}

Series convolve(const Series& a, const Series& b) {
  int M = static_cast<int>(a.size());
  Series out(M, Interval::point(0));
  for (int i = 1; i <= M; ++i)
    for (int j = 1; i * j <= M; ++j) out[i * j - 1] += a[i - 1] * b[j - 1];
  return out;
}

struct Partial {
  Series series;
  Interval mean = Interval::point(1);
  std::size_t primes = 0;
  std::vector<uint64_t> ramified;
  std::vector<uint64_t> overridden;
};

Partial local_partial(const SplittingSource& source, uint64_t p, int M) {
  Partial part;
  part.series = series_one(M);
  Splitting s = source.splitting(p);
  int sum = 0;
  std::map<std::pair<int, int>, unsigned> counts;
  for (auto& [e, f] : s) {
    sum += e * f;
    counts[{e, f}] += 1;
    if (e > 1 && (part.ramified.empty() || part.ramified.back() != p)) part.ramified.push_back(p);
  }
  if (sum != source.degree())
    throw Error(ErrorCode::InvalidArgument, "splitting at p = " + std::to_string(p) + " does not have degree " +
                                                std::to_string(source.degree()));
  if (source.provenance(p) == Provenance::UserOverride) part.overridden.push_back(p);
  for (auto& [ef, count] : counts) {
    LocalFactorInterval lf = local_factor_interval(p, ef.second, ef.first, M);
    for (unsigned k = 0; k < count; ++k) part.series = convolve(part.series, lf.coeffs);
    part.mean = part.mean * lf.mean.pow(count);
  }
  part.primes = 1;
  return part;
}

}  // namespace

GlobalReport global_report(const SplittingSource& source, uint64_t B, int m_max) {
  if (B < 3) throw Error(ErrorCode::BTooSmall, "prime bound must be >= 3");
  if (m_max < 1) throw Error(ErrorCode::InvalidArgument, "m_max must be >= 1");
  std::vector<uint64_t> primes = primes_up_to(B);
  const std::size_t block = 256;
  std::size_t nblocks = (primes.size() + block - 1) / block;
  std::vector<Partial> blocks(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    Partial acc;
    acc.series = series_one(m_max);
    for (std::size_t i = b * block; i < std::min(primes.size(), (b + 1) * block); ++i) {
      Partial lp = local_partial(source, primes[i], m_max);
      acc.series = convolve(acc.series, lp.series);
      acc.mean = acc.mean * lp.mean;
      acc.primes += 1;
      acc.ramified.insert(acc.ramified.end(), lp.ramified.begin(), lp.ramified.end());
      acc.overridden.insert(acc.overridden.end(), lp.overridden.begin(), lp.overridden.end());
    }
    blocks[b] = std::move(acc);
  });

  GlobalReport r;
  r.label = source.label();
  r.degree = source.degree();
  r.prime_bound = B;
  r.m_max = m_max;
  Series finite = series_one(m_max);
  Interval mean = Interval::point(1);
  for (auto& b : blocks) {
    finite = convolve(finite, b.series);
    mean = mean * b.mean;
    r.primes_used += b.primes;
    r.ramified.insert(r.ramified.end(), b.ramified.begin(), b.ramified.end());
    r.overridden.insert(r.overridden.end(), b.overridden.begin(), b.overridden.end());
  }

  Rational S = prime_tail_sum_bound(B);
  Rational Bq(static_cast<unsigned long>(B));
  Rational d(r.degree);
  Rational lo_arg = -2 * d * S / (1 - 2 / (Bq * Bq));
  r.trivial_tail = Interval::exp_range(lo_arg, lo_arg).hull(Interval::point(1));
  Rational hi_arg = kMeanTailConstant * d * S;
  r.mean_tail = Interval::exp_range(hi_arg, hi_arg).hull(Interval::point(1));

  // Tail distribution T: T(1) in [t_lo, 1] and T(b) <= 1 - t_lo for every b >= 2.
  Interval t_lo_only(r.trivial_tail.lo_rational());
  Interval leak = Interval::point(1) - t_lo_only;
  for (int m = 1; m <= m_max; ++m) {
    Interval lo = finite[m - 1] * t_lo_only;
    Interval hi = finite[m - 1];
    for (int a = 1; a < m; ++a)
      if (m % a == 0) hi = hi + finite[a - 1] * leak;
    r.coefficients.push_back(lo.hull(hi));
  }
  r.p_trivial = r.coefficients[0];
  r.average = mean * r.mean_tail;
  return r;
}

Interval p_tam_trivial(const SplittingSource& source, uint64_t B) { return global_report(source, B, 1).p_trivial; }

Interval l_tam_average(const SplittingSource& source, uint64_t B) { return global_report(source, B, 1).average; }

std::vector<Interval> p_tam_coefficients(const SplittingSource& source, int m_max, uint64_t B) {
  return global_report(source, B, m_max).coefficients;
}

Rational bernoulli(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Bernoulli index must be >= 0");
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= n) {
    int m = static_cast<int>(table.size());
    // sum_{k=0}^{m} C(m+1, k) B_k = 0.
    Rational s(0);
    BigInt binom(1);
    for (int k = 0; k < m; ++k) {
      s += Rational(binom) * table[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    table.push_back(-s / Rational(m + 1));
  }
  return table[n];
}

Interval zeta_even(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "zeta_even needs n >= 1");
  BigInt fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * n));
  BigInt two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(2 * n));
  Rational pref = bernoulli(2 * n) * Rational(two_pow) / (2 * Rational(fact));
  if (n % 2 == 0) pref = -pref;
  return Interval(pref) * Interval::pi().pow(static_cast<unsigned>(2 * n));
}

namespace {

Interval reciprocal(const Interval& x) {
  // For positive intervals; rational endpoints make the division exact before rounding.
  Rational lo = x.lo_rational(), hi = x.hi_rational();
  if (lo <= 0) throw Error(ErrorCode::InvalidArgument, "reciprocal of a non-positive interval");
  return Interval(1 / hi, 1 / lo);
}

}  // namespace

DegreeBounds degree_bounds(int d, uint64_t B) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  static std::mutex mu;
  static std::map<uint64_t, GlobalReport> rational_reports;
  GlobalReport q;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = rational_reports.find(B);
    if (it == rational_reports.end()) it = rational_reports.emplace(B, global_report(*rational_source(), B, 1)).first;
    q = it->second;
  }
  DegreeBounds out;
  out.degree = d;
  out.p_lo = q.p_trivial.pow(static_cast<unsigned>(d));
  Interval z2 = zeta_even(d);
  Interval z4 = zeta_even(2 * d);
  out.p_hi = reciprocal(z2);
  out.l_lo = z2 * reciprocal(z4);
  out.l_hi = q.average.pow(static_cast<unsigned>(d));
  return out;
}

SandwichCheck check_sandwich(const GlobalReport& r, const DegreeBounds& b) {
  SandwichCheck c;
  unsigned d = static_cast<unsigned>(r.degree);
  Interval outer_p = Interval(Rational(5054, 10000)).pow(d);
  Interval outer_l = Interval(Rational(18184, 10000)).pow(d);
  auto le = [&](const Interval& x, const Interval& y) {
    if (r.degree == 1) return x.lo_rational() <= y.hi_rational();
    return x.hi_rational() <= y.lo_rational();
  };
  c.p_outer_lower = outer_p.strictly_below(r.p_trivial);
  c.p_inner_lower = le(b.p_lo, r.p_trivial);
  c.p_upper = r.p_trivial.strictly_below(b.p_hi);
  c.l_lower = b.l_lo.strictly_below(r.average);
  c.l_inner_upper = le(r.average, b.l_hi);
  c.l_outer_upper = r.average.strictly_below(outer_l);
  return c;
}

}  // namespace tamagawa
