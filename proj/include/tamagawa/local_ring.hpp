// SPDX-License-Identifier: MIT
/**
 * @file local_ring.hpp
 * @brief Truncated arithmetic in O = W(F_q)[pi]/(pi^e - p), elements known modulo pi^prec.
 *
 * An element is stored as sum_{j<e} c_j pi^j with each c_j in (Z/p^M)[x]/(g~), where g~ is
 * the integer lift of the residue-field modulus and M = ceil(N/e).  Because pi^e = p, this
 * is the naive digit section: the residue-field digits of an element are the base-p digits
 * of the c_j read in the right order.  Every element carries its own absolute precision and
 * the storage is kept canonical (zero beyond the precision), so equality is digit-wise.
 *
 * LocalElem holds a raw pointer to its ring's shared data; the LocalRing (or a copy) must
 * outlive every element created from it.
 */
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "tamagawa/errors.hpp"
#include "tamagawa/residue_field.hpp"

namespace tamagawa {

/// Raised when a computation needs digits beyond an element's known precision.
class PrecisionLoss : public Error {
 public:
  explicit PrecisionLoss(const std::string& what) : Error(ErrorCode::InsufficientPrecision, what) {}
};

/// Result of val(): either an exact valuation or a lower bound ("AtLeastN").
struct Valuation {
  int value = 0;
  bool exact = true;
  bool at_least() const { return !exact; }
  bool operator==(const Valuation&) const = default;
};

constexpr int kMaxEF = 16;

struct LocalRingData;
class LocalElem;

class LocalRing {
 public:
  /// ring_make(p, f, e, N); the residue field uses the canonical modulus.
  static LocalRing make(uint64_t p, int f, int e, int N);
  static LocalRing make(const FqField& field, int e, int N);

  const FqField& field() const;
  uint64_t p() const;
  int f() const;
  uint64_t q() const;
  int e() const;
  /// Working precision N.
  int N() const;
  /// Largest representable precision e*M (>= N).
  int capacity() const;

  LocalElem zero() const;
  LocalElem one() const;
  LocalElem from_int(int64_t n) const;
  /// Naive lift of a residue (digit 0 only).
  LocalElem lift(FqElem digit) const;
  LocalElem uniformizer() const;
  /// sum_i lift(digits[i]) pi^i, known modulo pi^{digits.size()}.
  LocalElem from_digits(const std::vector<FqElem>& digits) const;
  /// Uniform element modulo pi^N.
  LocalElem sample_uniform(std::mt19937_64& rng) const;
  /// Uniform element modulo pi^k.
  LocalElem sample_uniform(std::mt19937_64& rng, int k) const;

  /// The index-th residue modulo pi^k in lexicographic digit order (digit 0 varies fastest).
  LocalElem residue_at(int k, uint64_t index) const;

  bool operator==(const LocalRing& other) const { return d_ == other.d_; }
  const LocalRingData* data() const { return d_.get(); }

 private:
  explicit LocalRing(std::shared_ptr<const LocalRingData> d) : d_(std::move(d)) {}
  std::shared_ptr<const LocalRingData> d_;
};

class LocalElem {
 public:
  LocalElem() = default;

  const LocalRingData* ring() const { return ring_; }
  int precision() const { return prec_; }

  LocalElem operator+(const LocalElem& o) const;
  LocalElem operator-(const LocalElem& o) const;
  LocalElem operator-() const;
  LocalElem operator*(const LocalElem& o) const;
  LocalElem operator*(int64_t n) const;
  LocalElem& operator+=(const LocalElem& o) { return *this = *this + o; }
  LocalElem& operator-=(const LocalElem& o) { return *this = *this - o; }
  LocalElem& operator*=(const LocalElem& o) { return *this = *this * o; }

  /// Digit-wise equality (precision included).
  bool operator==(const LocalElem& o) const;
  /// Equality of the parts known in both operands.
  bool congruent(const LocalElem& o) const;

  Valuation val() const;
  bool is_zero_to_precision() const { return val().at_least(); }
  /// Residue modulo pi (needs precision >= 1).
  FqElem residue() const;
  /// unit_part: residue of x / pi^{val(x)}.
  FqElem unit_part() const;
  /// x / pi^k; needs pi^k | x to be decidable.
  LocalElem divide_by_pi(int k) const;
  /// Digits under the naive section, one per known precision step.
  std::vector<FqElem> digits() const;
  /// Inverse of a unit, to the same precision.
  LocalElem inverse() const;
  /// Same value with precision lowered to min(precision, k).
  LocalElem truncated(int k) const;

  std::string to_string() const;

  /// Exact integer n in the same ring.
  LocalElem make_int(int64_t n) const;
  /// Naive lift of a residue into the same ring.
  LocalElem make_lift(FqElem digit) const;
  /// pi^k in the same ring, exact.
  LocalElem make_pi_power(int k) const;
  const FqField& field() const;
  uint64_t residue_characteristic() const;
  int ramification() const;
  /// Ring capacity e*M.
  int capacity() const;

 private:
  friend class LocalRing;
  friend struct LocalRingData;
  std::array<uint64_t, kMaxEF> c_{};
  const LocalRingData* ring_ = nullptr;
  int prec_ = 0;
};

/// Free-function spellings.
LocalRing ring_make(uint64_t p, int f, int e, int N);
Valuation val(const LocalElem& x);
FqElem unit_part(const LocalElem& x);
LocalElem sample_uniform(const LocalRing& ring, std::mt19937_64& rng);

/// Forward iterator over all q^k residues modulo pi^k.
class ResidueEnumerator {
 public:
  ResidueEnumerator(LocalRing ring, int k);
  uint64_t size() const { return size_; }
  bool next(LocalElem& out);
  void reset() { index_ = 0; }

 private:
  LocalRing ring_;
  int k_;
  uint64_t size_;
  uint64_t index_ = 0;
};

ResidueEnumerator enumerate_residues(const LocalRing& ring, int k);

}  // namespace tamagawa
