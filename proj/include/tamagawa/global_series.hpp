// SPDX-License-Identifier: MIT
/**
 * @file global_series.hpp
 * @brief Euler products over a field's primes: P_Tam(K; m), L_Tam(K; -1) and degree bounds.
 *
 * Local factors are exact rationals for every prime ideal above p <= B.  Their product is
 * accumulated as an MPFR interval, and the primes above B enter through certified tail
 * factors:
 *   prod_{p > B} delta(1)      in [exp(-2 d S(B) / (1 - 2/B^2)), 1],
 *   prod_{p > B} mean          in [1, exp(12 d S(B))],
 * where S(B) bounds sum_{p > B} p^{-2} (see prime_tail_sum_bound).  The constants 2 and 12
 * are certified for every q >= 5 and for unramified q = 3^f by tools/certify_tail_constants.py.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tamagawa/interval.hpp"
#include "tamagawa/local_density.hpp"
#include "tamagawa/number_field.hpp"

namespace tamagawa {

/// 1 - delta(1) <= kTrivialTailConstant / q^2 for q >= 5 and for unramified primes above 3.
inline const Rational kTrivialTailConstant{2};
/// mean - 1 <= kMeanTailConstant / q^2 on the same range.
inline const Rational kMeanTailConstant{12};
/// Norms above this use the certified bounds instead of the exact chain.
constexpr uint64_t kExactNormLimit = 1000000000000ULL;

/// Rational upper bound on sum_{p > B} p^{-2} over primes p > B >= 5 (all coprime to 6).
Rational prime_tail_sum_bound(uint64_t B);

/// Interval-valued local data of one prime ideal.
struct LocalFactorInterval {
  /// delta(1), ..., delta(m_max).
  std::vector<Interval> coeffs;
  Interval mean;
  /// True when the exact spectrum was used; false for certified bounds at huge norms.
  bool exact = true;
};

/// Local data for the prime ideal of norm p^f and ramification e.
LocalFactorInterval local_factor_interval(uint64_t p, int f, int e, int m_max);

struct GlobalReport {
  std::string label;
  int degree = 1;
  uint64_t prime_bound = 0;
  int m_max = 1;
  Interval p_trivial;
  /// P_Tam(K; m) for m = 1..m_max.
  std::vector<Interval> coefficients;
  Interval average;
  /// Tail factors used for p > B.
  Interval trivial_tail;
  Interval mean_tail;
  std::size_t primes_used = 0;
  /// Primes p <= B with a ramified prime above them.
  std::vector<uint64_t> ramified;
  /// Primes whose splitting came from an override.
  std::vector<uint64_t> overridden;
};

/// Full report; primes are processed in parallel blocks and combined in a fixed order.
GlobalReport global_report(const SplittingSource& source, uint64_t B, int m_max = 3);

Interval p_tam_trivial(const SplittingSource& source, uint64_t B);
Interval l_tam_average(const SplittingSource& source, uint64_t B);
std::vector<Interval> p_tam_coefficients(const SplittingSource& source, int m_max, uint64_t B);

/// B_n from sum_{k<=m} C(m+1, k) B_k = 0 (B_1 = -1/2).
Rational bernoulli(int n);

/// zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!), n >= 1.
Interval zeta_even(int n);

struct DegreeBounds {
  int degree = 1;
  /// P_Tam(Q; 1)^d.
  Interval p_lo;
  /// 1 / zeta(2d).
  Interval p_hi;
  /// zeta(2d) / zeta(4d).
  Interval l_lo;
  /// L_Tam(Q; -1)^d.
  Interval l_hi;
};

/// B is the prime bound used for the rational field's products.
DegreeBounds degree_bounds(int d, uint64_t B = 100000);

struct SandwichCheck {
  bool p_outer_lower = false;  ///< 0.5054^d < P_Tam(K; 1)
  bool p_inner_lower = false;  ///< P_Tam(Q; 1)^d <= P_Tam(K; 1)
  bool p_upper = false;        ///< P_Tam(K; 1) < 1 / zeta(2d)
  bool l_lower = false;        ///< zeta(2d) / zeta(4d) < L_Tam(K; -1)
  bool l_inner_upper = false;  ///< L_Tam(K; -1) <= L_Tam(Q; -1)^d
  bool l_outer_upper = false;  ///< L_Tam(K; -1) < 1.8184^d
  bool all() const {
    return p_outer_lower && p_inner_lower && p_upper && l_lower && l_inner_upper && l_outer_upper;
  }
};

/// Each inequality is certified from the intervals.  The two non-strict inner inequalities
/// are identities when d = 1 and the field is Q; they are then accepted when the intervals meet.
SandwichCheck check_sandwich(const GlobalReport& report, const DegreeBounds& bounds);

}  // namespace tamagawa
