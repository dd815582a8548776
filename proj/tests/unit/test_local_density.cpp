// SPDX-License-Identifier: MIT
/**
 * @file test_local_density.cpp
 * @brief Local densities delta(c): closed forms, moments, tails and per-type totals.
 */
#include "doctest.h"
#include "tamagawa/errors.hpp"
#include "tamagawa/local_density.hpp"
#include "tamagawa/reference_forms.hpp"

using namespace tamagawa;

namespace {

struct Prof {
  uint64_t p;
  int f;
};

const std::vector<Prof> kGrid{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2},
                               {11, 1}, {13, 1}, {2, 4}, {5, 2}, {3, 3}, {7, 2}};

Rational R(uint64_t q) { return Rational(static_cast<unsigned long>(q)); }

Rational S(const Rational& Q) { return rpow(Q, 8) + rpow(Q, 6) + rpow(Q, 4) + Q * Q + 1; }

bool has_reference(const PrimeLocalProfile& pr, int c) {
  try {
    delta_reference(pr, c);
    return true;
  } catch (const Error& e) {
    return false;
  }
}

}  // namespace

TEST_CASE("delta at q = 2 and q = 5") {
  CHECK(delta(PrimeLocalProfile::make(2, 1, 1)).at(1) == Rational(241, 396));
  CHECK(delta(PrimeLocalProfile::make(5, 1, 1)).at(3) == Rational(7825, 2441406));

  Rational Q = 7;
  Rational expect = 1 - Q * (6 * rpow(Q, 7) + 9 * rpow(Q, 6) + 9 * rpow(Q, 5) + 7 * rpow(Q, 4) + 8 * rpow(Q, 3) +
                             7 * Q * Q + 9 * Q + 6) /
                            (6 * 64 * S(Q));
  CHECK(delta(PrimeLocalProfile::make(7, 1, 1)).at(1) == expect);
  CHECK(delta(PrimeLocalProfile::make(3, 2, 1)).total() == 1);
}

TEST_CASE("closed forms for individual branches") {
  for (uint64_t q : {5, 7, 11, 25, 49}) {
    Rational Q = R(q);
    DensitySpectrum sp = delta(PrimeLocalProfile::make(q == 25 ? 5 : q == 49 ? 7 : q, q >= 25 ? 2 : 1, 1));
    Rational c4 = rpow(Q, 3) * (3 * Q * Q - 2 * Q + 1) / (6 * (Q + 1) * S(Q));
    CHECK(sp.at(4) == c4);
    // The variant with -1 in place of +1 leaves the spectrum short of total mass 1.
    Rational misprint = rpow(Q, 3) * (3 * Q * Q - 2 * Q - 1) / (6 * (Q + 1) * S(Q));
    CHECK(sp.total() - sp.at(4) + misprint != 1);
  }
  for (auto [p, f] : std::vector<Prof>{{3, 1}, {3, 2}, {3, 3}}) {
    DensitySpectrum sp = delta(PrimeLocalProfile::make(p, f, 1));
    Rational Q = R(sp.q);
    for (int c = 5; c <= 10; ++c)
      CHECK(sp.at(c) == (Q - 1) * (Q - 1) / (2 * rpow(Q, c + 1) * (rpow(Q, 10) - 1)));
  }
  for (auto [p, f] : std::vector<Prof>{{2, 1}, {2, 2}, {2, 3}}) {
    DensitySpectrum sp = delta(PrimeLocalProfile::make(p, f, 2));
    Rational Q = R(sp.q);
    CHECK(sp.at(3) == (Q - 1) * (Q * Q + 1) * (rpow(Q, 4) - Q * Q + 1) * (rpow(Q, 10) + Q - 1) /
                          (2 * rpow(Q, 11) * (rpow(Q, 10) - 1)));
  }
}

TEST_CASE("chain agrees with every exact closed form on the grid") {
  int compared = 0;
  for (auto [p, f] : kGrid) {
    for (int e = 1; e <= 6; ++e) {
      PrimeLocalProfile pr = PrimeLocalProfile::make(p, f, e);
      DensitySpectrum sp = delta(pr);
      CHECK(sp.total() == 1);
      for (int c = 1; c <= 12; ++c) {
        if (!has_reference(pr, c)) continue;
        CAPTURE(pr.q());
        CAPTURE(e);
        CAPTURE(c);
        CHECK(sp.at(c) == delta_reference(pr, c));
        ++compared;
      }
    }
  }
  CHECK(compared > 500);
}

TEST_CASE("leading-order forms above 3 for e >= 2") {
  for (int e = 2; e <= 5; ++e) {
    for (int c = 1; c <= 6; ++c) {
      double worst = 0;
      for (int f = 1; f <= 4; ++f) {
        PrimeLocalProfile pr = PrimeLocalProfile::make(3, f, e);
        TruncatedReference ref = delta_reference_truncated(pr, c);
        Rational diff = delta(pr).at(c) - ref.value;
        if (ref.exact) {
          CHECK(diff == 0);
          continue;
        }
        Rational scaled = abs(diff) * rpow(R(pr.q()), ref.order);
        worst = std::max(worst, scaled.get_d());
      }
      CAPTURE(e);
      CAPTURE(c);
      CHECK(worst < 10.0);
    }
  }
  CHECK_THROWS_AS(delta_reference_truncated(PrimeLocalProfile::make(5, 1, 1), 1), Error);
}

TEST_CASE("per-type totals match the closed-form tables") {
  const Kodaira fixed_types[] = {Kodaira::I0,     Kodaira::II,     Kodaira::III,     Kodaira::IV,
                                 Kodaira::I0star, Kodaira::IVstar, Kodaira::IIIstar, Kodaira::IIstar};
  for (auto [p, f] : kGrid) {
    PrimeLocalProfile base = PrimeLocalProfile::make(p, f, 1);
    PrimeClass pc = base.prime_class();
    int e_max = pc == PrimeClass::NotAbove6 ? 1 : pc == PrimeClass::Above2 ? 2 : 6;
    for (int e = 1; e <= e_max; ++e) {
      uint64_t q = base.q();
      PerTypeTotals chain = per_type_totals(q, e, pc), table = per_type_reference(q, e, pc);
      CAPTURE(q);
      CAPTURE(e);
      for (int c = 1; c <= 4; ++c) {
        for (Kodaira k : fixed_types) CHECK(chain.value(q, k, 0, c) == table.value(q, k, 0, c));
        for (int n = 1; n <= 8; ++n) {
          CHECK(chain.value(q, Kodaira::In, n, c) == table.value(q, Kodaira::In, n, c));
          CHECK(chain.value(q, Kodaira::Instar, n, c) == table.value(q, Kodaira::Instar, n, c));
        }
      }
    }
  }
}

TEST_CASE("column weights above 2 for e >= 3") {
  for (uint64_t q : {2, 4, 8}) {
    for (int e = 3; e <= 8; ++e) {
      auto visits = above2_column_visits(q, e);
      auto exact = above2_exact_weights(q, e);
      CAPTURE(q);
      CAPTURE(e);
      for (char col : {'A', 'C', 'E'}) CHECK(visits.at(col) == exact.at(col));
      CHECK(above2_printed_table_total(q, e) != 1);
      CHECK(delta(PrimeLocalProfile::make(q == 2 ? 2 : 2, q == 2 ? 1 : q == 4 ? 2 : 3, e)).total() == 1);
    }
  }
}

TEST_CASE("local mean and its bounds") {
  DensitySpectrum unit;
  unit.q = 5;
  unit.finite[1] = 1;
  unit.tail = 0;
  CHECK(local_mean(unit) == 1);

  CHECK(local_mean(delta(PrimeLocalProfile::make(2, 1, 1))) > Rational(149, 100));

  for (auto [p, f] : kGrid) {
    for (int e = 1; e <= 6; ++e) {
      PrimeLocalProfile pr = PrimeLocalProfile::make(p, f, e);
      DensitySpectrum sp = delta(pr);
      Rational Q = R(sp.q), m = local_mean(sp), d1 = sp.at(1);
      CAPTURE(sp.q);
      CAPTURE(e);
      CHECK(m >= 2 - d1);
      CHECK(m <= 5 - 4 * d1 + (1 - d1) / (Q - 1));
      if (pr.prime_class() == PrimeClass::NotAbove6) {
        CHECK(m < 1 + 12 / (Q * Q));
        CHECK(1 - d1 <= 2 / (Q * Q));
      }
      // Direct summation of c * delta(c) approaches the closed-form mean from below.
      Rational partial(0);
      for (int c = 1; c <= 60; ++c) partial += c * sp.at(c);
      CHECK(partial <= m);
      CHECK(m - partial < rpow(Q, -40));
    }
  }
}

TEST_CASE("truncated local factors") {
  DensitySpectrum sp = delta(PrimeLocalProfile::make(5, 1, 1));
  TruncatedLocalFactor one = local_factor_truncated(sp, 1);
  REQUIRE(one.coeffs.size() == 1);
  CHECK(one.coeffs[0] == sp.at(1));
  CHECK(one.tail_mass == 1 - sp.at(1));

  TruncatedLocalFactor four = local_factor_truncated(sp, 4);
  Rational head(0);
  for (int c = 1; c <= 4; ++c) {
    CHECK(four.coeffs[c - 1] == sp.at(c));
    head += sp.at(c);
  }
  CHECK(four.tail_mass == 1 - head);
  CHECK(four.tail_mass == sp.tail * rpow(Rational(5), -5) * Rational(5, 4));

  CHECK_THROWS_AS(PrimeLocalProfile::make(4, 1, 1), Error);
  CHECK_THROWS_AS(PrimeLocalProfile::make(5, 0, 1), Error);
}
