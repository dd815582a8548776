// SPDX-License-Identifier: MIT
/**
 * @file local_density.hpp
 * @brief Local Tamagawa densities delta(c) at a prime, and their moments.
 */
#pragma once

#include <vector>

#include "tamagawa/markov.hpp"

namespace tamagawa {

struct PrimeLocalProfile {
  uint64_t p = 0;
  int f = 1;
  int e = 1;

  /// Validates p prime, f >= 1, e >= 1 and q = p^f < 2^63.
  static PrimeLocalProfile make(uint64_t p, int f, int e);
  uint64_t q() const;
  PrimeClass prime_class() const { return prime_class_of(p); }
};

/// Canonical spectrum from the family chain, memoized per (q, e, prime class).
DensitySpectrum delta(const PrimeLocalProfile& profile);

/// sum_c c * delta(c), with the geometric tail summed in closed form.
Rational local_mean(const DensitySpectrum& spectrum);

struct TruncatedLocalFactor {
  /// delta(1), ..., delta(m_max).
  std::vector<Rational> coeffs;
  /// sum_{c > m_max} delta(c).
  Rational tail_mass;
};

TruncatedLocalFactor local_factor_truncated(const DensitySpectrum& spectrum, int m_max);

}  // namespace tamagawa
