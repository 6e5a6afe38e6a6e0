#include <doctest.h>

#include <random>

#include "bgd/scalar.hpp"

using namespace bgd;

TEST_CASE("rational arithmetic is exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(0, 5).is_zero());
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational spills to GMP and comes back") {
  Rational big(INT64_MAX);
  Rational sq = big * big;
  CHECK(sq.str() == "85070591730234615847396907784232501249");
  CHECK(sq / big == big);
  CHECK((sq / big).str() == std::to_string(INT64_MAX));
  Rational tiny(1, INT64_MAX);
  CHECK((tiny * tiny * sq).is_one());
  CHECK(Rational(INT64_MIN).str() == "-9223372036854775808");
  CHECK(-Rational(INT64_MIN) == Rational(INT64_MAX) + Rational(1));
}

TEST_CASE("rational field laws on random values") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> d(-1000000000000LL, 1000000000000LL);
  for (int i = 0; i < 500; ++i) {
    Rational x(d(rng), d(rng) | 1), y(d(rng), d(rng) | 1), z(d(rng), d(rng) | 1);
    CHECK((x + y) * z == x * z + y * z);
    CHECK((x * y) * z == x * (y * z));
    if (!y.is_zero()) CHECK(x / y * y == x);
    CHECK(x - x == Rational(0));
  }
}

TEST_CASE("parse and fraction round trip") {
  FieldSpec q = FieldSpec::rationals();
  Rational x = parse_scalar<Rational>(q, "-123456789012345678901234567890", "10");
  auto [num, den] = to_fraction(x);
  CHECK(num == "-12345678901234567890123456789");
  CHECK(den == "1");
  CHECK_THROWS_AS(parse_scalar<Rational>(q, "1", "0"), std::domain_error);
  CHECK_THROWS_AS(parse_scalar<Rational>(q, "1x", "1"), std::invalid_argument);
}

TEST_CASE("prime field arithmetic") {
  FieldSpec f7 = FieldSpec::prime(7);
  ModP a = make_scalar<ModP>(f7, 3), b = make_scalar<ModP>(f7, 5);
  CHECK((a + b).value() == 1);
  CHECK((a * b).value() == 1);
  CHECK((a / b).value() == 2);
  CHECK(make_scalar<ModP>(f7, 1, 2).value() == 4);
  CHECK(make_scalar<ModP>(f7, -1).value() == 6);
  CHECK_THROWS_AS(make_scalar<ModP>(f7, 1, 7), std::domain_error);
  CHECK_THROWS_AS(parse_scalar<ModP>(FieldSpec::prime(5), "1", "5"), std::domain_error);
  for (std::uint64_t v = 1; v < 7; ++v) CHECK((ModP(v, 7) * ModP(v, 7).inverse()).value() == 1);
}

TEST_CASE("unbound literals bind to the first modulus they meet") {
  ModP one(1), x(4, 11);
  CHECK((one + x).value() == 5);
  CHECK((x - one).modulus() == 11);
  CHECK(ModP(0).is_zero());
  CHECK(ModP(22) == ModP(0, 11));
}

TEST_CASE("field descriptors") {
  CHECK(FieldSpec::parse("Q").is_rational());
  CHECK(FieldSpec::parse("Fp:5").characteristic() == 5);
  CHECK(FieldSpec::parse("Fp:5").name() == "Fp:5");
  CHECK_THROWS_AS(FieldSpec::parse("Fp:6"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("R"), std::invalid_argument);
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(1));
}
