#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knead/rational.hpp"

using namespace knead;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == Rat(3));
  CHECK(parse_rational("7/2") == Rat(7, 2));
  CHECK(parse_rational("-7/2") == Rat(-7, 2));
  CHECK(parse_rational("14/4") == Rat(7, 2));
  CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("7/"), ParseError);
  CHECK_THROWS_AS(parse_rational("7/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a"), ParseError);
}

TEST_CASE("rational printing round-trips") {
  for (const char* s : {"3", "-3", "7/2", "-7/2", "0"})
    CHECK(rat_to_string(parse_rational(s)) == s);
}

TEST_CASE("floor of rationals") {
  CHECK(rat_floor(Rat(7, 2)) == 3);
  CHECK(rat_floor(Rat(-7, 2)) == -4);
  CHECK(rat_floor(Rat(4)) == 4);
  CHECK(rat_floor(Rat(3, 10) * 10) == 3);
}

// Independent route: Pascal's triangle.
static Int pascal(unsigned long n, unsigned long k) {
  std::vector<std::vector<Int>> row(n + 1);
  for (unsigned long i = 0; i <= n; ++i) {
    row[i].assign(i + 1, 1);
    for (unsigned long j = 1; j < i; ++j)
      row[i][j] = row[i - 1][j - 1] + row[i - 1][j];
  }
  return k <= n ? row[n][k] : 0;
}

TEST_CASE("binomial agrees with Pascal's triangle") {
  for (unsigned long n = 0; n <= 25; ++n)
    for (unsigned long k = 0; k <= n; ++k)
      CHECK(binomial(n, k) == pascal(n, k));
}

TEST_CASE("integer powers") {
  CHECK(int_pow(Int(5), 0) == 1);
  CHECK(int_pow(Int(5), 4) == 625);
  CHECK(int_pow(Int(20), 3) == 8000);
}
