// SPDX-License-Identifier: MIT
/**
 * @file reference_forms.hpp
 * @brief Closed-form densities stated in polynomial form, used as test oracles for the chain.
 *
 * These are evaluated directly from their polynomial expressions in q and never share
 * code with the chain.  Where a printed expression was found to be inconsistent
 * (failing normalization), the corrected expression is used; README lists each one.
 */
#pragma once

#include <map>

#include "tamagawa/local_density.hpp"

namespace tamagawa {

/// Exact closed form for delta(c); NoExactFormula outside the exactly stated branches.
Rational delta_reference(const PrimeLocalProfile& profile, int c);

/// A closed form valid up to an error term: true value = value + O(q^{-order}).
struct TruncatedReference {
  Rational value;
  int order = 0;
  /// True when the branch is stated without an error term.
  bool exact = false;
};

/// Leading-order forms for p | 3, e >= 2 (all c); NoExactFormula elsewhere.
TruncatedReference delta_reference_truncated(const PrimeLocalProfile& profile, int c);

/// Per-type totals from the closed-form tables: p not dividing 6, p | 3 (all e), p | 2 (e <= 2).
PerTypeTotals per_type_reference(uint64_t q, int e, PrimeClass pc);

/// Chain visits aggregated by column (A..G for the seven p | 2, e >= 3 columns in table order).
std::map<char, Rational> above2_column_visits(uint64_t q, int e);

/// Closed-form column weights for p | 2, e >= 3 that are exact: A, and C, E after correction.
std::map<char, Rational> above2_exact_weights(uint64_t q, int e);

/// Total mass of the tabulated p | 2, e >= 3 accumulation formulas (A..G) as printed.
Rational above2_printed_table_total(uint64_t q, int e);

}  // namespace tamagawa
