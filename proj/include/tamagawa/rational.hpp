// SPDX-License-Identifier: MIT
/**
 * @file rational.hpp
 * @brief Exact rationals (GMP) and the small integer utilities used across modules.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tamagawa {

using Rational = mpq_class;
using BigInt = mpz_class;

/// base^exponent for any integer exponent (base must be nonzero when exponent < 0).
Rational rpow(const Rational& base, long exponent);

/// "num/den" (or "num" when the denominator is 1).
std::string to_fraction_string(const Rational& x);

/// Decimal rendering truncated toward zero with the given number of digits after the point.
std::string to_decimal(const Rational& x, int digits);

/// Parses "num/den" or an integer.
Rational parse_rational(const std::string& text);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(uint64_t n);

/// If q = p^f with p prime, returns (p, f).
std::optional<std::pair<uint64_t, int>> prime_power_decomposition(uint64_t q);

/// All primes <= limit (simple sieve).
std::vector<uint64_t> primes_up_to(uint64_t limit);

/// Multiplicative order of a modulo the prime m (a coprime to m).
uint64_t multiplicative_order(uint64_t a, uint64_t m);

/// Legendre symbol (a | p) for an odd prime p.
int legendre_symbol(int64_t a, uint64_t p);

}  // namespace tamagawa
