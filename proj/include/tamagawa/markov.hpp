// SPDX-License-Identifier: MIT
/**
 * @file markov.hpp
 * @brief Family chains: how non-minimal models of one family reclassify after rescaling.
 *
 * Nodes are valuation classes of families.  A node's non-minimal mass flows to the
 * classes of the image family, weighted by the measure of each class inside it:
 * P(alpha = m + i) = (q-1)/q^{i+1} and P(alpha >= m + i) = q^{-i}.
 *  - p | 3: the image of alpha2 >= a is alpha2 >= max(a - 2, 0); alpha2 = a maps to a - 2.
 *  - p | 2: alpha1 drops by 1 and alpha3 by 3 (clamped at 0 for open classes).
 * Classes are split exactly below e (alpha1) and below min(alpha1, e) (alpha3).
 */
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tamagawa/step_tables.hpp"

namespace tamagawa {

struct ChainEdge {
  FamilyClass to;
  Rational weight;
};

struct FamilyChain {
  uint64_t q = 0;
  int e = 1;
  PrimeClass prime_class = PrimeClass::NotAbove6;
  FamilyClass start;
  /// All nodes reachable from start, in discovery order (start first).
  std::vector<FamilyClass> nodes;
  std::map<FamilyClass, std::vector<ChainEdge>> edges;
  /// Weight of the edge to the absorbing Terminate node: 1 - non-minimal mass.
  std::map<FamilyClass, Rational> terminate;
};

struct DensitySpectrum {
  uint64_t q = 0;
  int c_cut = 4;
  /// delta(c) for 1 <= c <= c_cut (absent keys are 0).
  std::map<int, Rational> finite;
  /// delta(c) = tail * q^{-c} for c > c_cut.
  Rational tail;

  Rational at(int c) const;
  /// Exact sum over all c.
  Rational total() const;
};

/// Per-type accumulated densities: fixed (type, c) values and geometric coefficients.
struct PerTypeTotals {
  std::map<std::pair<Kodaira, int>, Rational> fixed;
  /// Split and nonsplit I_n each have density in_coeff * q^{-n}.
  Rational in_coeff;
  /// Explicit totals of I_n (split plus nonsplit) for small n, overriding in_coeff.
  std::map<int, Rational> in_low;
  /// I_n^* at c has density instar_coeff[c] * q^{-n}.
  std::map<int, Rational> instar_coeff;

  Rational value(uint64_t q, Kodaira type, int n, int c) const;
};

FamilyChain build_chain(uint64_t q, int e, PrimeClass pc);
std::map<FamilyClass, Rational> visit_probabilities(const FamilyChain& chain);
DensitySpectrum delta_spectrum(uint64_t q, int e, PrimeClass pc, int m_max = 4);
PerTypeTotals per_type_totals(uint64_t q, int e, PrimeClass pc);

/// Chain with all non-minimal masses forced to 0 (single terminating start node).
DensitySpectrum pure_column_spectrum(uint64_t q, const FamilyClass& family, int m_max = 4);

}  // namespace tamagawa
