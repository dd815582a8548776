// SPDX-License-Identifier: MIT
/**
 * @file test_number_field.cpp
 * @brief Prime splitting in quadratic, cyclotomic, multiquadratic and polynomial fields.
 */
#include <algorithm>

#include "doctest.h"
#include "tamagawa/errors.hpp"
#include "tamagawa/number_field.hpp"

using namespace tamagawa;

namespace {

Splitting sorted(Splitting s) {
  std::sort(s.begin(), s.end());
  return s;
}

NumberFieldSpec field(const std::string& poly) { return NumberFieldSpec::from_poly(parse_int_poly(poly)); }

bool squarefree(int64_t D) {
  int64_t a = D < 0 ? -D : D;
  for (int64_t k = 2; k * k <= a; ++k)
    if (a % (k * k) == 0) return false;
  return true;
}

/// Quadratic residue test by exhaustive squaring.
bool is_qr(int64_t a, uint64_t p) {
  int64_t m = static_cast<int64_t>(p);
  int64_t r = ((a % m) + m) % m;
  for (int64_t x = 0; x < m; ++x)
    if (x * x % m == r) return true;
  return false;
}

int total_degree(const Splitting& s) {
  int d = 0;
  for (auto [e, f] : s) d += e * f;
  return d;
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

TEST_CASE("polynomial parsing") {
  IntPoly p = parse_int_poly("x^4+5x^2-6x+3");
  CHECK(p.degree() == 4);
  CHECK(p.coeffs[0] == 3);
  CHECK(p.coeffs[1] == -6);
  CHECK(p.coeffs[2] == 5);
  CHECK(p.coeffs[3] == 0);
  CHECK(parse_int_poly(p.to_string()) == p);
  CHECK(parse_int_poly("x^2 - x - 4") == parse_int_poly("x^2-1*x-4"));
  CHECK_THROWS_AS(parse_int_poly(""), Error);
}

TEST_CASE("Dedekind factorization") {
  CHECK(sorted(factor_prime(field("x^2+1"), 5)) == Splitting{{1, 1}, {1, 1}});
  CHECK(factor_prime(field("x^2+1"), 2) == Splitting{{2, 1}});
  CHECK(sorted(factor_prime(field("x^2-x-4"), 2)) == Splitting{{1, 1}, {1, 1}});
  CHECK(factor_prime(field("x^2+1"), 3) == Splitting{{1, 2}});
  CHECK(sorted(factor_prime(field("x^3-2"), 5)) == Splitting{{1, 1}, {1, 2}});
  CHECK(factor_prime(field("x^3-2"), 3) == Splitting{{3, 1}});

  NumberFieldSpec dedekind = field("x^3+x^2-2x+8");
  try {
    factor_prime(dedekind, 2);
    FAIL("expected IndexDivisor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexDivisor);
    CHECK(std::string(e.what()).find("p = 2") != std::string::npos);
    CHECK(std::string(e.what()).find("override") != std::string::npos);
  }

  NumberFieldSpec quartic = field("x^4+5x^2-6x+3");
  for (uint64_t p : primes_up_to(1000)) CHECK(total_degree(factor_prime(quartic, p)) == 4);
}

TEST_CASE("irreducibility certificates") {
  CHECK(certify_irreducible(parse_int_poly("x^4+5x^2-6x+3")));
  CHECK(certify_irreducible(parse_int_poly("x^3-x-1")));
  CHECK_FALSE(certify_irreducible(parse_int_poly("x^2-1")));
  CHECK_FALSE(certify_irreducible(parse_int_poly("x^4+4")));
  CHECK(code_of([] { field("2x^2+1"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { field("x^4-1"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("quadratic fields") {
  CHECK(quadratic_field(-1).poly == parse_int_poly("x^2+1"));
  CHECK(quadratic_field(17).poly == parse_int_poly("x^2-x-4"));
  CHECK(quadratic_field(-7).poly == parse_int_poly("x^2-x+2"));
  CHECK(code_of([] { quadratic_field(12); }) == ErrorCode::NotSquarefree);
  CHECK(code_of([] { quadratic_field(1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("quadratic splitting follows the Kronecker symbol") {
  int checked = 0;
  for (int64_t D = -200; D <= 200; ++D) {
    if (D == 0 || D == 1 || !squarefree(D)) continue;
    NumberFieldSpec K = quadratic_field(D);
    int64_t disc = ((D % 4) + 4) % 4 == 1 ? D : 4 * D;
    for (uint64_t p : primes_up_to(100)) {
      Splitting expect;
      int64_t m = static_cast<int64_t>(p);
      if (disc % m == 0) {
        expect = {{2, 1}};
      } else if (p == 2) {
        expect = ((D % 8) + 8) % 8 == 1 ? Splitting{{1, 1}, {1, 1}} : Splitting{{1, 2}};
      } else {
        expect = is_qr(D, p) ? Splitting{{1, 1}, {1, 1}} : Splitting{{1, 2}};
      }
      CAPTURE(D);
      CAPTURE(p);
      CHECK(sorted(factor_prime(K, p)) == expect);
      ++checked;
    }
  }
  CHECK(checked > 5000);
}

TEST_CASE("cyclotomic splitting") {
  CHECK(cyclotomic_splitting(5, 5) == Splitting{{4, 1}});
  CHECK(cyclotomic_splitting(5, 2) == Splitting{{1, 4}});
  CHECK(cyclotomic_splitting(7, 2) == Splitting{{1, 3}, {1, 3}});
  for (uint64_t a : {3, 5, 7, 11, 13, 31, 127}) {
    for (uint64_t p : primes_up_to(300)) {
      Splitting s = cyclotomic_splitting(a, p);
      CHECK(total_degree(s) == static_cast<int>(a - 1));
      if (p == a) continue;
      uint64_t f = 1, x = p % a;
      while (x != 1) {
        x = x * p % a;
        ++f;
      }
      for (auto [e, ff] : s) {
        CHECK(e == 1);
        CHECK(ff == static_cast<int>(f));
      }
    }
  }
}

TEST_CASE("multiquadratic splitting") {
  CHECK(multiquadratic_splitting({17}, 2) == Splitting{{1, 1}, {1, 1}});
  CHECK(multiquadratic_splitting({17, 41}, 2) == Splitting(4, {1, 1}));
  CHECK(multiquadratic_splitting({17}, 3) == Splitting{{1, 2}});
  CHECK(multiquadratic_splitting({17}, 17) == Splitting{{2, 1}});
  CHECK(code_of([] { multiquadratic_splitting({13}, 2); }) == ErrorCode::InvalidArgument);
  std::vector<uint64_t> gens{17, 41, 73};
  for (uint64_t p : primes_up_to(500)) {
    Splitting s = multiquadratic_splitting(gens, p);
    CHECK(total_degree(s) == 8);
    if (p == 2 || p == 17 || p == 41 || p == 73) continue;
    // With quadratic subfields Q(sqrt d), d | 17*41*73, the prime splits completely iff every generator is a residue.
    bool all = is_qr(17, p) && is_qr(41, p) && is_qr(73, p);
    CHECK((s.size() == 8) == all);
  }
  // Agreement with the quadratic field for a single generator.
  NumberFieldSpec K = quadratic_field(41);
  for (uint64_t p : primes_up_to(200)) CHECK(sorted(multiquadratic_splitting({41}, p)) == sorted(factor_prime(K, p)));
}

TEST_CASE("splitting sources and overrides") {
  auto q = rational_source();
  CHECK(q->degree() == 1);
  CHECK(q->splitting(7) == Splitting{{1, 1}});

  OverrideMap o = parse_override_json(R"({"2": [[1, 1], [1, 1], [1, 1]]})");
  REQUIRE(o.count(2) == 1);
  auto src = polynomial_source(field("x^3+x^2-2x+8"), o);
  CHECK(src->splitting(2) == Splitting(3, {1, 1}));
  CHECK(src->provenance(2) == Provenance::UserOverride);
  CHECK(src->provenance(5) == Provenance::Dedekind);
  CHECK(std::string(provenance_name(Provenance::UserOverride)) == "override");

  CHECK(cyclotomic_source(7)->provenance(2) == Provenance::Analytic);
  CHECK(cyclotomic_source(7)->degree() == 6);
  CHECK(multiquadratic_source({17, 41})->degree() == 4);

  CHECK(code_of([] { parse_override_json("{\"4\": [[1, 1]]}"); }) == ErrorCode::NonPrimeP);
  CHECK(code_of([] { parse_override_json("[1, 2]"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_override_json("{\"3\": [[0, 1]]}"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { polynomial_source(field("x^2+1"), parse_override_json(R"({"3": [[1, 1]]})")); }) ==
        ErrorCode::InvalidArgument);

  auto pure = override_source(2, "K", parse_override_json(R"({"2": [[2, 1]], "3": [[1, 2]]})"), quadratic_field(-1));
  CHECK(pure->splitting(3) == Splitting{{1, 2}});
  CHECK(sorted(pure->splitting(5)) == Splitting{{1, 1}, {1, 1}});
}
