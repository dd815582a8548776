// SPDX-License-Identifier: MIT
#include "tamagawa/rational.hpp"

#include <algorithm>
#include <stdexcept>

#include "tamagawa/errors.hpp"

namespace tamagawa {

Rational rpow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r;
  if (exponent > 0) {
    r = Rational(num, den);
  } else {
    if (num == 0) throw Error(ErrorCode::InvalidArgument, "zero to a negative power");
    r = Rational(den, num);
  }
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_decimal(const Rational& x, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt num = abs(x.get_num()) * scale;
  BigInt q = num / x.get_den();
  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  std::string out = s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  if (x < 0) out = "-" + out;
  return out;
}

Rational parse_rational(const std::string& text) {
  Rational r(text);
  r.canonicalize();
  return r;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t result = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) result = mulmod_u64(result, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return result;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::pair<uint64_t, int>> prime_power_decomposition(uint64_t q) {
  if (q < 2) return std::nullopt;
  uint64_t p = 0;
  for (uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(q, 1);
  int f = 0;
  while (q % p == 0) {
    q /= p;
    ++f;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, f);
}

std::vector<uint64_t> primes_up_to(uint64_t limit) {
  std::vector<uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

uint64_t multiplicative_order(uint64_t a, uint64_t m) {
  a %= m;
  if (a == 0) throw Error(ErrorCode::InvalidArgument, "order of a non-unit");
  uint64_t n = m - 1;
  uint64_t order = n;
  uint64_t rest = n;
  for (uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d) continue;
    while (rest % d == 0) rest /= d;
    while (order % d == 0 && powmod_u64(a, order / d, m) == 1) order /= d;
  }
  if (rest > 1) {
    while (order % rest == 0 && powmod_u64(a, order / rest, m) == 1) order /= rest;
  }
  return order;
}

int legendre_symbol(int64_t a, uint64_t p) {
  int64_t r = a % static_cast<int64_t>(p);
  if (r < 0) r += static_cast<int64_t>(p);
  if (r == 0) return 0;
  uint64_t t = powmod_u64(static_cast<uint64_t>(r), (p - 1) / 2, p);
  return t == 1 ? 1 : -1;
}

}  // namespace tamagawa
