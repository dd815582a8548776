// SPDX-License-Identifier: MIT
/**
 * @file test_residue_field.cpp
 * @brief Finite-field construction, squareness, cubic profiles and traceless cubic counts.
 */
#include <random>

#include "doctest.h"
#include "tamagawa/errors.hpp"
#include "tamagawa/residue_field.hpp"

using namespace tamagawa;

namespace {

const std::vector<std::pair<uint64_t, int>> kGrid{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2},
                                                   {11, 1}, {13, 1}, {2, 4}, {5, 2}, {3, 3}, {7, 2}};

FqElem eval(const FqField& F, const FqPoly& poly, FqElem x) {
  FqElem acc = F.zero();
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("fq_make selects canonical moduli and validates input") {
  FqField f5 = fq_make(5, 1);
  CHECK(f5.q() == 5);
  CHECK(f5.modulus() == std::vector<uint64_t>{0, 1});

  FqField f4 = fq_make(2, 2);
  CHECK(f4.q() == 4);
  CHECK(f4.modulus() == std::vector<uint64_t>{1, 1, 1});

  FqField f9 = fq_make(3, 2, std::vector<uint64_t>{1, 0, 1});
  CHECK(f9.q() == 9);

  CHECK(code_of([] { fq_make(4, 1); }) == ErrorCode::NonPrimeP);
  CHECK(code_of([] { fq_make(5, 2, std::vector<uint64_t>{1, 0, 1}); }) == ErrorCode::ReducibleModulus);
}

TEST_CASE("squareness agrees with exhaustive squaring on the grid") {
  CHECK(fq_is_square(fq_make(5, 1), FqElem{4}));
  CHECK_FALSE(fq_is_square(fq_make(5, 1), FqElem{2}));
  FqField f4 = fq_make(2, 2);
  for (uint64_t a = 1; a < 4; ++a) CHECK(f4.is_square(f4.element(a)));

  for (auto [p, f] : kGrid) {
    FqField F = fq_make(p, f);
    std::vector<bool> square(F.q(), false);
    for (uint64_t b = 0; b < F.q(); ++b) square[F.mul(F.element(b), F.element(b)).code] = true;
    for (uint64_t a = 0; a < F.q(); ++a) CHECK(F.is_square(F.element(a)) == square[F.element(a).code]);
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (auto [p, f] : kGrid) {
    FqField F = fq_make(p, f);
    std::uniform_int_distribution<uint64_t> d(0, F.q() - 1);
    for (int t = 0; t < 200; ++t) {
      FqElem a = F.element(d(rng)), b = F.element(d(rng)), c = F.element(d(rng));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == F.zero());
      if (a != F.zero()) CHECK(F.mul(a, F.inv(a)) == F.one());
      CHECK(F.pow(F.pth_root(a), p) == a);
    }
  }
}

TEST_CASE("cubic profiles") {
  FqField F = fq_make(5, 1);
  CubicProfile split = fq_cubic_profile(F, {FqElem{0}, FqElem{4}, FqElem{0}, FqElem{1}});
  CHECK(split.kind == CubicProfileKind::ThreeDistinctAllRational);
  CHECK(split.rational_roots == std::vector<FqElem>{FqElem{0}, FqElem{1}, FqElem{4}});

  CubicProfile one = fq_cubic_profile(F, {FqElem{3}, FqElem{1}, FqElem{0}, FqElem{1}});
  CHECK(one.kind == CubicProfileKind::ThreeDistinctOneRational);
  CHECK(one.rational_roots == std::vector<FqElem>{FqElem{1}});

  // T^3 + T + 1 takes the values 1, 3, 1, 1, 4 on F_5.
  CHECK(fq_cubic_profile(F, {FqElem{1}, FqElem{1}, FqElem{0}, FqElem{1}}).kind ==
        CubicProfileKind::ThreeDistinctIrreducible);

  CubicProfile triple = fq_cubic_profile(F, {FqElem{0}, FqElem{0}, FqElem{0}, FqElem{1}});
  CHECK(triple.kind == CubicProfileKind::TripleRoot);
  CHECK(triple.repeated_root == FqElem{0});

  CubicProfile dbl = fq_cubic_profile(F, {FqElem{0}, FqElem{0}, FqElem{1}, FqElem{1}});
  CHECK(dbl.kind == CubicProfileKind::DoubleRoot);
  CHECK(dbl.repeated_root == FqElem{0});

  CubicProfile irr = fq_cubic_profile(F, {FqElem{1}, FqElem{0}, FqElem{1}, FqElem{1}});
  CHECK(irr.kind == CubicProfileKind::ThreeDistinctIrreducible);
}

TEST_CASE("traceless cubic counts match brute force and the closed forms") {
  CHECK(fq_count_traceless_cubics(fq_make(5, 1)).split == 2);
  CHECK(fq_count_traceless_cubics(fq_make(5, 1)).one_root == 10);
  CHECK(fq_count_traceless_cubics(fq_make(5, 1)).irreducible == 8);
  TracelessCubicCounts f2 = fq_count_traceless_cubics(fq_make(2, 1));
  CHECK(f2.split == 0);
  CHECK(f2.one_root == 1);
  CHECK(f2.irreducible == 1);

  for (auto [p, f] : kGrid) {
    FqField F = fq_make(p, f);
    uint64_t q = F.q();
    TracelessCubicCounts oracle;
    for (uint64_t ci = 0; ci < q; ++ci)
      for (uint64_t di = 0; di < q; ++di) {
        FqElem c = F.element(ci), d = F.element(di);
        // Discriminant -4c^3 - 27d^2 decides separability in every characteristic.
        FqElem disc = F.sub(F.neg(F.mul(F.from_int(4), F.pow(c, 3))), F.mul(F.from_int(27), F.mul(d, d)));
        if (disc == F.zero()) continue;
        int roots = 0;
        for (uint64_t x = 0; x < q; ++x)
          if (eval(F, {d, c, F.zero(), F.one()}, F.element(x)) == F.zero()) ++roots;
        (roots == 3 ? oracle.split : roots == 1 ? oracle.one_root : oracle.irreducible)++;
      }
    TracelessCubicCounts got = F.count_traceless_cubics();
    CAPTURE(q);
    CHECK(got.split == oracle.split);
    CHECK(got.one_root == oracle.one_root);
    CHECK(got.irreducible == oracle.irreducible);
    if (p != 3) {
      CHECK(got.split == (q - 1) * (q - 2) / 6);
      CHECK(got.one_root == (q * q - q) / 2);
      CHECK(got.irreducible == (q * q - 1) / 3);
    }
  }
}

TEST_CASE("roots and root counts") {
  FqField F = fq_make(7, 1);
  FqPoly x2m1{F.from_int(-1), F.zero(), F.one()};
  CHECK(F.roots(x2m1) == std::vector<FqElem>{FqElem{1}, FqElem{6}});
  CHECK(F.count_roots(x2m1) == 2);
  CHECK(F.quadratic_has_root(F.one(), F.zero(), F.from_int(-2)));
  CHECK_FALSE(F.quadratic_has_root(F.one(), F.zero(), F.one()));
}
