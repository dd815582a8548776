// SPDX-License-Identifier: MIT
/**
 * @file test_local_ring.cpp
 * @brief Truncated pi-adic arithmetic: construction, valuations, carries and enumeration.
 */
#include <random>
#include <set>

#include "doctest.h"
#include "tamagawa/local_ring.hpp"

using namespace tamagawa;

namespace {

struct Shape {
  uint64_t p;
  int f, e, N;
};

const std::vector<Shape> kShapes{{5, 1, 1, 14}, {2, 1, 3, 18}, {3, 2, 2, 16}, {2, 2, 2, 14},
                                 {3, 1, 4, 14}, {7, 1, 1, 12}, {2, 1, 1, 12}, {2, 3, 5, 20}};

}  // namespace

TEST_CASE("ring construction") {
  LocalRing z5 = ring_make(5, 1, 1, 14);
  CHECK(z5.q() == 5);
  CHECK(z5.N() == 14);
  CHECK(z5.capacity() >= 14);

  LocalRing r = ring_make(2, 1, 3, 18);
  CHECK(r.e() == 3);
  CHECK(r.capacity() % 3 == 0);
  LocalElem pi = r.uniformizer();
  CHECK((pi * pi * pi).congruent(r.from_int(2)));

  LocalRing mixed = ring_make(3, 2, 2, 16);
  CHECK(mixed.q() == 9);
  CHECK(mixed.e() == 2);

  CHECK_THROWS_AS(ring_make(6, 1, 1, 12), Error);
}

TEST_CASE("valuations and digits") {
  LocalRing z5 = ring_make(5, 1, 1, 14);
  LocalElem x = z5.from_digits({FqElem{0}, FqElem{3}});
  CHECK(val(x) == Valuation{1, true});

  LocalRing r3 = ring_make(2, 1, 3, 18);
  CHECK(r3.from_int(2).val() == Valuation{3, true});

  Valuation z = z5.zero().val();
  CHECK(z.at_least());
  CHECK(z.value == z5.zero().precision());

  LocalElem fifty = z5.from_int(50);
  CHECK(fifty.val().value == 2);
  CHECK(fifty.unit_part() == FqElem{2});

  LocalRing r = ring_make(3, 2, 2, 16);
  FqElem u = r.field().element(5);
  LocalElem pi2u = r.uniformizer() * r.uniformizer() * r.lift(u);
  CHECK(unit_part(pi2u) == u);

  std::vector<FqElem> digits(14, FqElem{0});
  digits[13] = FqElem{4};
  LocalElem last = z5.from_digits(digits);
  CHECK(last.val() == Valuation{13, true});
  CHECK(last.unit_part() == FqElem{4});
  CHECK(last.digits().back() == FqElem{4});
}

TEST_CASE("ring axioms, valuation additivity and the uniformizer relation") {
  std::mt19937_64 rng(11);
  for (const Shape& s : kShapes) {
    LocalRing R = ring_make(s.p, s.f, s.e, s.N);
    CAPTURE(s.p);
    CAPTURE(s.e);
    for (int t = 0; t < 100; ++t) {
      LocalElem a = R.sample_uniform(rng), b = R.sample_uniform(rng), c = R.sample_uniform(rng);
      CHECK(((a * b) * c).congruent(a * (b * c)));
      CHECK((a * (b + c)).congruent(a * b + a * c));
      CHECK(((a + b) - b).congruent(a));
      Valuation va = a.val(), vb = b.val();
      if (va.exact && vb.exact && va.value + vb.value < s.N) CHECK((a * b).val().value == va.value + vb.value);
      LocalElem px = R.from_int(static_cast<int64_t>(s.p)) * a;
      if (va.exact && va.value + s.e < s.N) CHECK(px.val().value == s.e + va.value);
      LocalElem u = R.sample_uniform(rng);
      if (u.val().value == 0) {
        LocalElem pie = R.one();
        for (int i = 0; i < s.e; ++i) pie = pie * R.uniformizer();
        CHECK((pie * u - R.from_int(static_cast<int64_t>(s.p)) * u).is_zero_to_precision());
        CHECK((u * u.inverse()).congruent(R.one()));
      }
    }
  }
}

TEST_CASE("residue enumeration and deterministic sampling") {
  LocalRing z5 = ring_make(5, 1, 1, 14);
  CHECK(enumerate_residues(z5, 1).size() == 5);
  LocalRing z2 = ring_make(2, 1, 1, 12);
  ResidueEnumerator en = enumerate_residues(z2, 12);
  CHECK(en.size() == 4096);
  std::set<std::vector<uint64_t>> seen;
  LocalElem x;
  while (en.next(x)) {
    std::vector<uint64_t> codes;
    for (FqElem d : x.digits()) codes.push_back(d.code);
    seen.insert(codes);
  }
  CHECK(seen.size() == 4096);

  std::mt19937_64 g1(2024), g2(2024);
  for (int i = 0; i < 50; ++i) CHECK(z5.sample_uniform(g1) == z5.sample_uniform(g2));
}

TEST_CASE("precision tracking") {
  LocalRing z5 = ring_make(5, 1, 1, 14);
  LocalElem a = z5.from_digits({FqElem{1}, FqElem{2}, FqElem{3}});
  CHECK(a.precision() == 3);
  LocalElem pi = z5.uniformizer();
  CHECK((a * pi).precision() == 4);
  CHECK((a + z5.one()).precision() == 3);
  CHECK(a.truncated(2).precision() == 2);
  LocalElem small = z5.from_digits({FqElem{0}, FqElem{0}});
  CHECK(small.val().at_least());
  CHECK_THROWS_AS(small.unit_part(), Error);
}
