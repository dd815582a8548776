// SPDX-License-Identifier: MIT
/**
 * @file residue_field.hpp
 * @brief Finite fields F_q = F_p[x]/(g) and the root-counting helpers used by Tate's algorithm.
 *
 * Elements are stored as packed base-p integers: the coefficient of x^i lives in
 * digit i.  Fields with q <= 2^16 carry discrete-log tables; larger fields fall
 * back to polynomial arithmetic modulo g.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace tamagawa {

struct FqElem {
  uint64_t code = 0;
  bool operator==(const FqElem&) const = default;
};

/// Polynomial over F_q, coefficients from low to high degree.
using FqPoly = std::vector<FqElem>;

enum class CubicProfileKind {
  ThreeDistinctAllRational,
  ThreeDistinctOneRational,
  ThreeDistinctIrreducible,
  DoubleRoot,
  TripleRoot,
};

struct CubicProfile {
  CubicProfileKind kind;
  /// Distinct rational roots in increasing code order.
  std::vector<FqElem> rational_roots;
  /// The repeated root for DoubleRoot / TripleRoot.
  FqElem repeated_root;
};

struct TracelessCubicCounts {
  uint64_t split = 0;
  uint64_t one_root = 0;
  uint64_t irreducible = 0;
};

class FqField {
 public:
  /// fq_make: validates p and the modulus; selects the lexicographically smallest
  /// irreducible monic polynomial of degree f when none is given.
  static FqField make(uint64_t p, int f, std::optional<std::vector<uint64_t>> modulus = std::nullopt);

  uint64_t p() const;
  int f() const;
  uint64_t q() const;
  /// Monic modulus, coefficients low to high (size f + 1).
  const std::vector<uint64_t>& modulus() const;

  FqElem zero() const { return FqElem{0}; }
  FqElem one() const { return FqElem{1}; }
  FqElem from_int(int64_t n) const;
  FqElem from_coeffs(const std::vector<uint64_t>& coeffs) const;
  std::vector<uint64_t> coeffs(FqElem a) const;
  /// Element with packed code `index` (0 <= index < q); enumeration order used everywhere.
  FqElem element(uint64_t index) const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, uint64_t e) const;

  bool is_square(FqElem a) const;
  /// Inverse of the Frobenius automorphism x -> x^p.
  FqElem pth_root(FqElem a) const;
  /// Absolute trace to F_p, returned as an integer in [0, p).
  uint64_t trace(FqElem a) const;

  /// True iff a*T^2 + b*T + c has a root in F_q.
  bool quadratic_has_root(FqElem a, FqElem b, FqElem c) const;
  /// Distinct roots of a nonzero polynomial, sorted by code.
  std::vector<FqElem> roots(const FqPoly& poly) const;
  /// Number of distinct roots, via gcd with T^q - T.
  uint64_t count_roots(const FqPoly& poly) const;
  /// fq_cubic_profile for a monic cubic given as {c0, c1, c2, 1}.
  CubicProfile cubic_profile(const FqPoly& monic_cubic) const;
  /// fq_count_traceless_cubics by exhaustive enumeration of T^3 + cT + d.
  TracelessCubicCounts count_traceless_cubics() const;

  bool operator==(const FqField& other) const;

 private:
  struct Data;
  explicit FqField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// Free-function spellings of the operations.
FqField fq_make(uint64_t p, int f, std::optional<std::vector<uint64_t>> modulus = std::nullopt);
bool fq_is_square(const FqField& field, FqElem a);
CubicProfile fq_cubic_profile(const FqField& field, const FqPoly& monic_cubic);
TracelessCubicCounts fq_count_traceless_cubics(const FqField& field);

namespace fqpoly {
void trim(FqPoly& a);
int degree(const FqPoly& a);
FqPoly add(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly mod(const FqField& F, const FqPoly& a, const FqPoly& m);
FqPoly divexact(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly gcd(const FqField& F, FqPoly a, FqPoly b);
FqPoly derivative(const FqField& F, const FqPoly& a);
FqPoly make_monic(const FqField& F, const FqPoly& a);
/// base^e mod m.
FqPoly powmod(const FqField& F, const FqPoly& base, uint64_t e, const FqPoly& m);
}  // namespace fqpoly

}  // namespace tamagawa
