// SPDX-License-Identifier: MIT
/**
 * @file number_field.hpp
 * @brief Splitting data (e_i, f_i) of rational primes in number fields.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tamagawa/rational.hpp"

namespace tamagawa {

/// Integer polynomial, coefficients from low to high degree.
struct IntPoly {
  std::vector<BigInt> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::string to_string() const;
  bool operator==(const IntPoly&) const = default;
};

/// Parses expressions such as "x^4+5x^2-6x+3" or "x^2 - x - 4" (variable x, '*' optional).
IntPoly parse_int_poly(const std::string& text);

struct NumberFieldSpec {
  IntPoly poly;
  int degree = 0;
  std::string label;

  /// Checks that poly is monic and provably irreducible over Q.
  static NumberFieldSpec from_poly(IntPoly poly, std::string label = "");
};

/// One (e, f) pair per prime ideal above p.
using Splitting = std::vector<std::pair<int, int>>;

enum class Provenance { Dedekind, Analytic, UserOverride };
const char* provenance_name(Provenance p);

/// Dedekind factorization; IndexDivisor when p divides [O_K : Z[theta]].
Splitting factor_prime(const NumberFieldSpec& field, uint64_t p);

/// Q(sqrt D) with a defining polynomial whose root generates the ring of integers.
NumberFieldSpec quadratic_field(int64_t D);

Splitting cyclotomic_splitting(uint64_t a, uint64_t p);
Splitting multiquadratic_splitting(const std::vector<uint64_t>& primes, uint64_t p);

/// True iff rational irreducibility of the monic polynomial is certified.
bool certify_irreducible(const IntPoly& poly);

/// Source of splitting data for every rational prime.
class SplittingSource {
 public:
  virtual ~SplittingSource() = default;
  virtual int degree() const = 0;
  virtual std::string label() const = 0;
  virtual Splitting splitting(uint64_t p) const = 0;
  virtual Provenance provenance(uint64_t p) const = 0;
};

using OverrideMap = std::map<uint64_t, Splitting>;

/// Parses {"p": [[e, f], ...], ...}.
OverrideMap parse_override_json(const std::string& text);
OverrideMap load_override_file(const std::string& path);

std::shared_ptr<SplittingSource> rational_source();
std::shared_ptr<SplittingSource> polynomial_source(NumberFieldSpec field, OverrideMap overrides = {});
std::shared_ptr<SplittingSource> cyclotomic_source(uint64_t a);
std::shared_ptr<SplittingSource> multiquadratic_source(std::vector<uint64_t> primes);
/// Splitting given entirely by an override map, with Dedekind fallback when a field is supplied.
std::shared_ptr<SplittingSource> override_source(int degree, std::string label, OverrideMap overrides,
                                                 std::optional<NumberFieldSpec> fallback = std::nullopt);

}  // namespace tamagawa
