#include <doctest.h>

#include "kakeya/rational.hpp"

using namespace kakeya;

TEST_SUITE("rational") {

TEST_CASE("parse and print") {
  CHECK(Rat::parse("3/6").str() == "1/2");
  CHECK(Rat::parse("-4/8").str() == "-1/2");
  CHECK(Rat::parse("7").str() == "7");
  CHECK(Rat::parse("0/5").str() == "0");
  CHECK(!Rat::try_parse("1/0"));
  CHECK(!Rat::try_parse(""));
  CHECK(!Rat::try_parse("a/2"));
  CHECK(!Rat::try_parse("1/"));
  CHECK(!Rat::try_parse("1.5"));
  CHECK_THROWS_AS(Rat::parse("2/0"), Error);
}

TEST_CASE("arithmetic stays canonical") {
  Rat a(1, 6), b(1, 3);
  CHECK((a + b).str() == "1/2");
  CHECK((b - a).str() == "1/6");
  CHECK((a * b).str() == "1/18");
  CHECK((a / b).str() == "1/2");
  CHECK((-a).str() == "-1/6");
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK_THROWS_AS(a / Rat(0), Error);
}

TEST_CASE("dyadic queries") {
  unsigned e = 99;
  CHECK(Rat(3, 8).is_dyadic(&e));
  CHECK(e == 3);
  CHECK(Rat(5).is_dyadic(&e));
  CHECK(e == 0);
  CHECK(!Rat(1, 3).is_dyadic());
  CHECK(Rat::pow2(4) == Rat(1, 16));
}

TEST_CASE("scaled_int64") {
  CHECK(Rat(3, 8).scaled_int64(3) == 3);
  CHECK(Rat(-5, 4).scaled_int64(4) == -20);
  CHECK(!Rat(1, 3).scaled_int64(10).has_value());
}

TEST_CASE("root decimals are certified truncations") {
  // value^den <= z * 10^(30*den) < (value+1)^den
  auto check_root = [](const Rat& z, unsigned long num, unsigned long den) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, 30);
    mpq_class zp;
    mpz_pow_ui(mpq_numref(zp.get_mpq_t()), z.num().get_mpz_t(), num);
    mpz_pow_ui(mpq_denref(zp.get_mpq_t()), z.den().get_mpz_t(), num);
    zp.canonicalize();
    mpz_class r = floor_root_scaled(Rat(zp), den, scale);
    mpz_class lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), r.get_mpz_t(), den);
    mpz_class r1 = r + 1;
    mpz_pow_ui(rhs.get_mpz_t(), r1.get_mpz_t(), den);
    mpz_class scaledPow;
    mpz_pow_ui(scaledPow.get_mpz_t(), scale.get_mpz_t(), den);
    mpz_class target = (Rat(zp).num() * scaledPow) / Rat(zp).den();
    CHECK(lhs <= target);
    CHECK(rhs > target);
  };
  check_root(Rat(2), 1, 2);
  check_root(Rat(13, 16), 1, 2);
  check_root(Rat(13, 16), 2, 3);
  check_root(Rat(5, 7), 4, 5);

  CHECK(root_decimal(Rat(4), 1, 2, 6) == "2.000000");
  CHECK(root_decimal(Rat(2), 1, 2, 8) == "1.41421356");
}

}  // TEST_SUITE
