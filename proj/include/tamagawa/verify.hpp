// SPDX-License-Identifier: MIT
/**
 * @file verify.hpp
 * @brief Independent oracles for the density formulas.
 *
 * Three oracles run Tate's algorithm directly and never consult the step tables:
 *  - Monte Carlo sampling of short models (or of a restricted family) modulo pi^N;
 *  - exhaustive first-iteration enumeration of all residues modulo pi^k;
 *  - exhaustive classification of non-minimal short models modulo pi^6.
 * Comparison helpers then line the oracle output up against a step-table column.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tamagawa/local_density.hpp"
#include "tamagawa/local_ring.hpp"
#include "tamagawa/step_tables.hpp"
#include "tamagawa/tate.hpp"

namespace tamagawa {

constexpr uint64_t kDefaultEnumerationBudget = 100000000ULL;

/// A first-iteration outcome: either a (type, n, c) triple or "reached Step 11".
struct OutcomeKey {
  bool nonminimal = false;
  Kodaira type = Kodaira::I0;
  int n = 0;
  int c = 0;

  static OutcomeKey step11() { return {true, Kodaira::I0, 0, 0}; }
  static OutcomeKey of(const ReductionOutcome& o) { return {false, o.kodaira, o.n, o.c}; }
  std::string to_string() const;
  auto operator<=>(const OutcomeKey&) const = default;
};

struct WilsonInterval {
  double lo = 0;
  double hi = 0;
};

/// Wilson score interval for k successes out of n at normal quantile z.
WilsonInterval wilson_interval(uint64_t k, uint64_t n, double z = 1.959963984540054);

struct EmpiricalSpectrum {
  std::map<int, uint64_t> counts;
  uint64_t undecided = 0;
  uint64_t samples = 0;
  /// Distribution of the number of Step-11 rescalings among decided samples.
  std::map<int, uint64_t> iterations;

  uint64_t count(int c) const;
  double estimate(int c) const;
  WilsonInterval wilson(int c, double z = 1.959963984540054) const;
  /// (estimate - p) / sqrt(p (1 - p) / samples).
  double z_score(int c, const Rational& exact) const;
};

/// Uniform (a4, a6) modulo pi^N, full Tate runs.  Deterministic for a fixed seed and any
/// thread count: samples are drawn in fixed blocks, each seeded from (seed, block index).
EmpiricalSpectrum monte_carlo_delta(const PrimeLocalProfile& profile, uint64_t samples, int N, uint64_t seed);

struct FamilySampleResult {
  std::map<OutcomeKey, uint64_t> counts;
  uint64_t undecided = 0;
  uint64_t samples = 0;
};

/// First-iteration outcomes on a restricted family: the a1 / a2 / a3 coefficients are built
/// as pi^v times a uniform unit (exact class) or a uniform integer (open class).
FamilySampleResult monte_carlo_family(const PrimeLocalProfile& profile, const FamilyClass& family, uint64_t samples,
                                      int N, uint64_t seed);

struct EnumerationResult {
  int k = 0;
  /// Number of (a4, a6) pairs times the number of family residues.
  uint64_t total = 0;
  /// Residues of the family coefficients (1 for short models).
  uint64_t family_residues = 1;
  std::map<OutcomeKey, uint64_t> counts;
  uint64_t stuck = 0;
  /// Union of the outcome sets still reachable from undecided residues.
  Reachable reachable_union;
  bool any_stuck() const { return stuck > 0; }
  /// True when no undecided residue could still produce this outcome.
  bool decidable(const OutcomeKey& key) const;
};

/// All (a4, a6) modulo pi^k on short models, first iteration only.
EnumerationResult enumerate_first_iteration(const PrimeLocalProfile& profile, int k,
                                            uint64_t budget = kDefaultEnumerationBudget);

/// Same, on the residues of a family: a2 (above 3) or a1, a3 (above 2) range over their
/// valuation classes modulo pi^k.  InconsistentFamily when a class is not representable
/// modulo pi^k (an exact valuation >= k, or an open bound > k).
EnumerationResult enumerate_family(const PrimeLocalProfile& profile, const FamilyClass& family, int k,
                                   uint64_t budget = kDefaultEnumerationBudget);

/// True when the family's valuation classes can be represented modulo pi^k.
bool family_representable(const FamilyClass& family, int k);

struct OutcomeComparison {
  OutcomeKey key;
  uint64_t observed = 0;
  Rational predicted;
  bool decidable = false;
  bool matches() const { return !decidable || Rational(static_cast<unsigned long>(observed)) == predicted; }
};

/// Lines up counts against column density times total, for every outcome either observed
/// or tabulated (I_n and I_n^* for n <= n_max).
std::vector<OutcomeComparison> compare_with_column(const EnumerationResult& result, const Column& column, uint64_t q,
                                                   int n_max);

/// The column governing short models for this profile (the chain's start node).
Column start_column(const PrimeLocalProfile& profile);

/// A class of (a4, a6) modulo pi^6, encoded by residue index (digit 0 fastest).
using ResiduePair = std::pair<uint64_t, uint64_t>;

uint64_t residue_index(const LocalElem& x, int k);

/// Non-minimal classes modulo pi^6 by exhaustive Tate runs on two lifts of every class.
std::set<ResiduePair> nonminimal_classes(const PrimeLocalProfile& profile, uint64_t budget = kDefaultEnumerationBudget);

struct NonminimalCount {
  uint64_t count = 0;
  /// "exhaustive" or "parametrization".
  std::string method;
  /// q^3 / q^4 above 3 and q^4 / q^5 / q^6 above 2.
  uint64_t predicted = 0;
};

/// Exhaustive when q^12 fits the budget, otherwise the size of the parametrization image.
NonminimalCount count_nonminimal(const PrimeLocalProfile& profile, uint64_t budget = kDefaultEnumerationBudget);

uint64_t predicted_nonminimal_count(const PrimeLocalProfile& profile);

/// Parameters of a non-minimal class: (r, w) above 3, (u, v, w) above 2, each a residue.
struct NonminimalParameters {
  LocalElem r, u, v, w;
};

/// (a4, a6) modulo pi^6 for the given parameters.
std::pair<LocalElem, LocalElem> parametrize_nonminimal(const PrimeLocalProfile& profile, const NonminimalParameters& params);

struct ParametrizationImage {
  std::set<ResiduePair> image;
  uint64_t grid_size = 0;
  bool injective() const { return image.size() == grid_size; }
};

/// The parametrization over its full parameter grid.
ParametrizationImage parametrization_image(const PrimeLocalProfile& profile);

}  // namespace tamagawa
