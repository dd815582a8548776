// SPDX-License-Identifier: MIT
/**
 * @file step_tables.hpp
 * @brief Exact densities of minimal outcomes per family column, with non-minimal masses.
 *
 * A column lists, for one family of Weierstrass models, the probability of each
 * terminal (Kodaira type, Tamagawa number) outcome of one pass of Tate's algorithm,
 * together with the mass that reaches the rescaling step.  The I_n and I_n^* rows are
 * kept symbolic as geometric families in n.
 *
 * Family descriptors:
 *  - NotAbove6: the single short-form family.
 *  - Above3: the class of alpha2 = v(a2) in y^2 = x^3 + a2 x^2 + a4 x + a6.
 *  - Above2: the classes of alpha1 = v(a1), alpha3 = v(a3) in y^2 + a1 xy + a3 y = x^3 + a4 x + a6.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tamagawa/kodaira.hpp"
#include "tamagawa/rational.hpp"

namespace tamagawa {

enum class PrimeClass { NotAbove6, Above3, Above2 };

const char* prime_class_name(PrimeClass pc);
PrimeClass prime_class_of(uint64_t p);

/// A valuation class "alpha = value" or "alpha >= value".
struct ValClass {
  bool at_least = false;
  int value = 0;

  static ValClass eq(int v) { return {false, v}; }
  static ValClass ge(int v) { return {true, v}; }
  bool contains(int v) const { return at_least ? v >= value : v == value; }
  std::string to_string() const;
  auto operator<=>(const ValClass&) const = default;
};

struct FamilyClass {
  PrimeClass prime_class = PrimeClass::NotAbove6;
  int e = 1;
  /// Above3: alpha2.  Above2: alpha1.  Unused for NotAbove6.
  ValClass alpha{};
  /// Above2 only: alpha3.
  ValClass alpha3{};

  static FamilyClass not_above6(int e) { return {PrimeClass::NotAbove6, e, {}, {}}; }
  static FamilyClass above3(int e, ValClass a2) { return {PrimeClass::Above3, e, a2, {}}; }
  static FamilyClass above2(int e, ValClass a1, ValClass a3) { return {PrimeClass::Above2, e, a1, a3}; }
  std::string to_string() const;
  auto operator<=>(const FamilyClass&) const = default;
};

struct StepEntry {
  enum class Kind {
    /// Fixed (type, c) with the given value.
    Fixed,
    /// I_n for n >= 1: split (c = n) and nonsplit (c = epsilon(n)) each have value A q^{-n}.
    InFamily,
    /// I_n^* for n >= 1 at fixed c: value A q^{-n}.
    InstarFamily,
  };
  Kind kind = Kind::Fixed;
  Kodaira type = Kodaira::I0;
  int c = 1;
  /// Fixed value, or the coefficient A of a geometric family.
  Rational value;
};

struct Column {
  FamilyClass family;
  std::vector<StepEntry> entries;
  Rational nonminimal;
};

/// The tabulated columns for (q, e, prime class), in table order.
std::vector<FamilyClass> column_families(PrimeClass pc, int e);

/// Column for a tabulated family; InconsistentFamily when the descriptor is not a column for e.
Column step_column(uint64_t q, const FamilyClass& family);
/// Column governing an arbitrary chain node, e.g. alpha2 = 5 falls in the "alpha2 >= 2" column.
Column column_for_node(uint64_t q, const FamilyClass& node);
/// The tabulated column containing a chain node.
FamilyClass column_family_of(const FamilyClass& node);

/// Density of (type, n, c) in a column; n is ignored for types other than I_n and I_n^*.
Rational column_value(const Column& col, uint64_t q, Kodaira type, int n, int c);
/// Sum over all outcomes (geometric families summed in closed form) plus non-minimal mass.
Rational column_total(const Column& col, uint64_t q);

Rational phi(uint64_t q, Kodaira type, int n, int c);
Rational chi(uint64_t q, int e, ValClass alpha2, Kodaira type, int n, int c);
Rational psi(uint64_t q, int e, ValClass alpha1, ValClass alpha3, Kodaira type, int n, int c);
Rational nonminimal_mass(uint64_t q, const FamilyClass& family);

}  // namespace tamagawa
