// SPDX-License-Identifier: MIT
/**
 * @file tate.hpp
 * @brief Tate's algorithm over truncated local rings.
 *
 * The implementation follows the classical eleven-step description for a general
 * Weierstrass model, with residue-field square and cube roots taken by Frobenius
 * inversion in characteristics 2 and 3.  A branch whose deciding valuation lies
 * beyond the known digits raises InsufficientPrecision, which records the set of
 * outcomes that remain reachable from the undecided node.
 */
#pragma once

#include <cstdint>
#include <optional>

#include "tamagawa/errors.hpp"
#include "tamagawa/kodaira.hpp"
#include "tamagawa/weierstrass.hpp"

namespace tamagawa {

struct ReductionOutcome {
  Kodaira kodaira = Kodaira::I0;
  /// Index n for I_n and I_n^*; 0 otherwise.
  int n = 0;
  int c = 1;
  /// Number of Step-11 rescalings performed.
  int iterations = 0;
  /// v(Delta) of the minimal model, when decidable from the known digits.
  std::optional<int> v_delta_minimal;

  bool operator==(const ReductionOutcome&) const = default;
};

/// Outcomes still possible from the node where a run got stuck.
struct Reachable {
  /// Bit k set when Kodaira(k) is reachable.
  uint32_t kinds = 0;
  bool nonminimal = false;
  /// Lower bounds for the family index of I_n and I_n^* when reachable.
  int min_n_In = 1;
  int min_n_Instar = 1;

  bool contains(Kodaira k, int n = 0) const;
  static Reachable everything();
};

class InsufficientPrecision : public Error {
 public:
  InsufficientPrecision(const std::string& what, Reachable r)
      : Error(ErrorCode::InsufficientPrecision, what), reachable_(r) {}
  const Reachable& reachable() const { return reachable_; }

 private:
  Reachable reachable_;
};

/// Full run: loops through Step-11 rescalings until a minimal model is reached.
ReductionOutcome tate_run(const WeierstrassModel& model);

/// One pass of the algorithm on the given model; nullopt when Step 11 (non-minimal) is reached.
std::optional<ReductionOutcome> tate_first_iteration(const WeierstrassModel& model);

/// True iff tate_run terminates with 0 iterations.
bool is_minimal(const WeierstrassModel& model);

}  // namespace tamagawa
