// SPDX-License-Identifier: MIT
/**
 * @file test_verify.cpp
 * @brief The Tate-algorithm oracles: sampling, enumeration and non-minimal classes.
 */
#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "tamagawa/errors.hpp"
#include "tamagawa/verify.hpp"

using namespace tamagawa;

namespace {

bool all_match(const EnumerationResult& r, const Column& col, uint64_t q, int k) {
  bool ok = true;
  for (const auto& c : compare_with_column(r, col, q, 2 * k + 2)) {
    if (!c.matches()) {
      MESSAGE("mismatch " << c.key.to_string() << " observed " << c.observed << " predicted "
                          << to_fraction_string(c.predicted));
      ok = false;
    }
  }
  return ok;
}

}  // namespace

TEST_CASE("Wilson intervals") {
  WilsonInterval w0 = wilson_interval(0, 100);
  CHECK(w0.lo == doctest::Approx(0.0));
  CHECK(w0.hi > 0.0);
  WilsonInterval half = wilson_interval(50, 100);
  CHECK(half.lo + half.hi == doctest::Approx(1.0));
  CHECK(half.lo < 0.5);
  CHECK(half.hi > 0.5);
}

TEST_CASE("Monte Carlo sampling is deterministic and unbiased") {
  PrimeLocalProfile pr = PrimeLocalProfile::make(5, 1, 1);
  EmpiricalSpectrum a = monte_carlo_delta(pr, 40000, 14, 99);
  setenv("TAMAGAWA_THREADS", "3", 1);
  EmpiricalSpectrum b = monte_carlo_delta(pr, 40000, 14, 99);
  unsetenv("TAMAGAWA_THREADS");
  CHECK(a.counts == b.counts);
  CHECK(a.undecided == b.undecided);
  uint64_t sum = a.undecided;
  for (auto [c, n] : a.counts) sum += n;
  CHECK(sum == a.samples);
  DensitySpectrum sp = delta(pr);
  for (int c = 1; c <= 3; ++c) CHECK(std::abs(a.z_score(c, sp.at(c))) < 4.0);
  CHECK(monte_carlo_delta(pr, 40000, 14, 100).counts != a.counts);
  CHECK_THROWS_AS(monte_carlo_delta(pr, 10, 11, 1), Error);

  EmpiricalSpectrum two = monte_carlo_delta(PrimeLocalProfile::make(2, 1, 1), 40000, 14, 5);
  CHECK(std::abs(two.z_score(1, Rational(241, 396))) < 4.0);
}

TEST_CASE("restricted-family sampling follows the family column") {
  PrimeLocalProfile pr = PrimeLocalProfile::make(3, 1, 2);
  FamilyClass fam = FamilyClass::above3(2, ValClass::eq(1));
  FamilySampleResult r = monte_carlo_family(pr, fam, 40000, 14, 3);
  Column col = step_column(3, fam);
  uint64_t n = r.samples - r.undecided;
  for (int c : {1, 2, 4}) {
    double p = column_value(col, 3, Kodaira::I0star, 0, c).get_d();
    double got = static_cast<double>(r.counts[OutcomeKey{false, Kodaira::I0star, 0, c}]) / n;
    if (p == 0) {
      CHECK(got == 0);
      continue;
    }
    CHECK(std::abs(got - p) / std::sqrt(p * (1 - p) / n) < 4.0);
  }
}

TEST_CASE("first-iteration enumeration") {
  PrimeLocalProfile p5 = PrimeLocalProfile::make(5, 1, 1);
  EnumerationResult k1 = enumerate_first_iteration(p5, 1);
  CHECK(k1.total == 25);
  CHECK(k1.counts[OutcomeKey{false, Kodaira::I0, 0, 1}] == 20);

  PrimeLocalProfile p3 = PrimeLocalProfile::make(3, 1, 1);
  EnumerationResult k2 = enumerate_first_iteration(p3, 2);
  CHECK(all_match(k2, start_column(p3), 3, 2));
  CHECK(k2.counts[OutcomeKey{false, Kodaira::II, 0, 1}] ==
        column_value(start_column(p3), 3, Kodaira::II, 0, 1).get_d() * 81);

  PrimeLocalProfile p2 = PrimeLocalProfile::make(2, 1, 1);
  EnumerationResult k3 = enumerate_first_iteration(p2, 3);
  Column col2 = start_column(p2);
  CHECK(all_match(k3, col2, 2, 3));
  Rational iii = column_value(col2, 2, Kodaira::III, 0, 2) * 64;
  CHECK(Rational(static_cast<unsigned long>(k3.counts[OutcomeKey{false, Kodaira::III, 0, 2}])) == iii);

  CHECK_THROWS_AS(enumerate_first_iteration(p5, 6, 1000), Error);
}

TEST_CASE("restricted-family enumeration") {
  PrimeLocalProfile p32 = PrimeLocalProfile::make(3, 1, 2);
  for (const FamilyClass& fam : column_families(PrimeClass::Above3, 2)) {
    CAPTURE(fam.to_string());
    CHECK(all_match(enumerate_family(p32, fam, 4), step_column(3, fam), 3, 4));
  }
  PrimeLocalProfile p22 = PrimeLocalProfile::make(2, 1, 2);
  for (const FamilyClass& fam : column_families(PrimeClass::Above2, 2)) {
    CAPTURE(fam.to_string());
    CHECK(all_match(enumerate_family(p22, fam, 4), step_column(2, fam), 2, 4));
  }
  CHECK(family_representable(FamilyClass::above3(2, ValClass::ge(2)), 2));
  CHECK_FALSE(family_representable(FamilyClass::above3(2, ValClass::eq(2)), 2));
  CHECK_THROWS_AS(enumerate_family(p32, FamilyClass::above3(2, ValClass::eq(3)), 3), Error);
}

TEST_CASE("non-minimal parametrization") {
  PrimeLocalProfile p3 = PrimeLocalProfile::make(3, 1, 1);
  LocalRing R3 = ring_make(3, 1, 1, 12);
  NonminimalParameters zero{R3.zero(), R3.zero(), R3.zero(), R3.zero()};
  auto [a4, a6] = parametrize_nonminimal(p3, zero);
  CHECK(a4.is_zero_to_precision());
  CHECK(a6.is_zero_to_precision());
  CHECK(a4.precision() == 6);

  PrimeLocalProfile p2 = PrimeLocalProfile::make(2, 1, 1);
  LocalRing R2 = ring_make(2, 1, 1, 12);
  NonminimalParameters uvw{R2.zero(), R2.zero(), R2.one(), R2.zero()};
  auto [b4, b6] = parametrize_nonminimal(p2, uvw);
  CHECK(b4.congruent(R2.from_int(-3)));
  CHECK(b6.congruent(R2.from_int(-2)));
}

TEST_CASE("non-minimal class counts") {
  struct Case {
    uint64_t p;
    int e;
    uint64_t expect;
  };
  for (Case c : {Case{3, 1, 27}, Case{2, 1, 16}, Case{2, 2, 32}, Case{2, 3, 64}}) {
    PrimeLocalProfile pr = PrimeLocalProfile::make(c.p, 1, c.e);
    NonminimalCount n = count_nonminimal(pr);
    CAPTURE(c.p);
    CAPTURE(c.e);
    CHECK(n.method == "exhaustive");
    CHECK(n.count == c.expect);
    CHECK(n.predicted == c.expect);
    ParametrizationImage img = parametrization_image(pr);
    CHECK(img.injective());
    CHECK(img.image == nonminimal_classes(pr));
  }
  PrimeLocalProfile big = PrimeLocalProfile::make(5, 1, 1);
  CHECK_THROWS_AS(predicted_nonminimal_count(big), Error);
  NonminimalCount f4 = count_nonminimal(PrimeLocalProfile::make(2, 2, 1), 1000000);
  CHECK(f4.method == "parametrization");
  CHECK(f4.count == 256);
}
