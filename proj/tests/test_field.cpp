#include <map>

#include "doctest.h"
#include "lda/field.hpp"

using lda::Field;
using lda::FieldElement;

TEST_CASE("field construction validates the modulus") {
  CHECK(Field::default_field().modulus() == (std::uint64_t{1} << 62) - 57);
  CHECK(Field::default_field().modulus() > (std::uint64_t{1} << 31));
  CHECK(Field::make(101).modulus() == 101);
  CHECK_THROWS_AS(Field::make(100), lda::ContextError);
  CHECK_THROWS_AS(Field::make(2), lda::ContextError);
  CHECK_THROWS_AS(Field::make(91), lda::ContextError);  // 7 * 13
  CHECK_THROWS_AS(Field::make(std::uint64_t{1} << 62), lda::ContextError);
}

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 2000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) prime = false;
    CHECK_MESSAGE(lda::is_prime(n) == prime, n);
  }
  CHECK(lda::is_prime((std::uint64_t{1} << 61) - 1));
  CHECK_FALSE(lda::is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("add") {
  const Field f = Field::make(101);
  for (std::uint64_t x : {0u, 1u, 50u, 100u}) CHECK((FieldElement(f, 0) + FieldElement(f, x)).value() == x);
  CHECK((FieldElement(f, 100) + FieldElement(f, 1)).value() == 0);
  CHECK((FieldElement(f, 3) + FieldElement(f, 4)).value() == 7);
  CHECK_THROWS_AS(FieldElement(f, 3) + FieldElement(Field::make(103), 4), lda::ContextError);
}

TEST_CASE("mul") {
  const Field f = Field::make(101);
  for (std::uint64_t x = 0; x < 101; ++x) {
    const FieldElement e(f, x);
    CHECK(FieldElement::one(f) * e == e);
    CHECK((FieldElement::zero(f) * e).is_zero());
    if (x != 0) CHECK(e * lda::inverse(e) == FieldElement::one(f));
  }
  CHECK_THROWS_AS(FieldElement(f, 3) * FieldElement(Field::make(103), 4), lda::ContextError);
}

TEST_CASE("inverse") {
  const Field f = Field::make(101);
  CHECK(lda::inverse(FieldElement(f, 1)).value() == 1);
  CHECK(lda::inverse(FieldElement(f, 100)).value() == 100);

  // Brute-force scan for b with 2b = 1 mod 101.
  std::uint64_t expected = 0;
  for (std::uint64_t b = 1; b < 101; ++b)
    if (2 * b % 101 == 1) expected = b;
  REQUIRE(expected == 51);
  CHECK(lda::inverse(FieldElement(f, 2)).value() == expected);

  CHECK_THROWS_AS(lda::inverse(FieldElement(f, 0)), lda::DivisionByZeroError);
  const Field big = Field::default_field();
  CHECK(lda::inverse(FieldElement(big, big.modulus() - 1)).value() == big.modulus() - 1);
}

TEST_CASE("random_nonzero") {
  const Field f = Field::make(101);
  lda::Rng a(42), b(42);
  const auto x1 = lda::random_nonzero(f, a), x2 = lda::random_nonzero(f, a);
  CHECK(x1.value() >= 1);
  CHECK(x2.value() >= 1);
  CHECK(x1.value() < 101);
  CHECK(lda::random_nonzero(f, b) == x1);
  CHECK(lda::random_nonzero(f, b) == x2);

  SUBCASE("every residue appears and counts look uniform") {
    lda::Rng rng(7);
    std::map<std::uint64_t, int> hist;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) ++hist[lda::random_nonzero(f, rng).value()];
    CHECK(hist.size() == 100);
    CHECK(hist.count(0) == 0);
    const double expected = draws / 100.0;
    double chi2 = 0;
    for (const auto &[v, c] : hist) chi2 += (c - expected) * (c - expected) / expected;
    // 99 degrees of freedom: mean 99, sd ~14. 200 is far past any sane tail.
    CHECK(chi2 < 200.0);
  }
}

TEST_CASE("field axioms on random triples") {
  const Field f = Field::default_field();
  lda::Rng rng(123);
  std::uniform_int_distribution<std::uint64_t> any(0, f.modulus() - 1);
  for (int i = 0; i < 1000; ++i) {
    const FieldElement a(f, any(rng)), b(f, any(rng)), c(f, any(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(lda::inverse(lda::inverse(a)) == a);
  }
}

TEST_CASE("counting scopes") {
  const Field f = Field::make(101);
  const FieldElement a(f, 5), b(f, 7);
  lda::CountingScope outer;
  {
    lda::CountingScope inner;
    (void)(a * b);
    (void)(a + b);
    (void)lda::inverse(a);
    CHECK(inner.counts() == lda::OpCounter{1, 1, 1});
    CHECK(outer.counts() == lda::OpCounter{});
  }
  (void)(a * b);
  CHECK(outer.counts() == lda::OpCounter{2, 1, 1});
}

TEST_CASE("parse_residue") {
  const Field f = Field::make(101);
  CHECK(lda::parse_residue(f, "100") == 100);
  CHECK_THROWS(lda::parse_residue(f, "101"));
  CHECK_THROWS(lda::parse_residue(f, "-1"));
  CHECK_THROWS(lda::parse_residue(f, ""));
  CHECK_THROWS(lda::parse_residue(f, "12a"));
}
