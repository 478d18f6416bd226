#include <doctest.h>

#include "mfas/error.hpp"
#include "mfas/fixed_point.hpp"

using namespace mfas;

TEST_SUITE("fixed_point") {

TEST_CASE("decimal parsing is exact") {
  CHECK(Weight::parse("0").nanos() == 0);
  CHECK(Weight::parse("12").nanos() == 12 * kScale);
  CHECK(Weight::parse("0.5").nanos() == kScale / 2);
  CHECK(Weight::parse("3.000000001").nanos() == 3 * kScale + 1);
}

TEST_CASE("malformed and out-of-range weights") {
  auto code = [](const char* text) {
    try {
      Weight::parse(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNonTermination;  // sentinel: nothing thrown
  };
  CHECK(code("") == ErrorCode::kFormat);
  CHECK(code("abc") == ErrorCode::kFormat);
  CHECK(code("1e3") == ErrorCode::kFormat);
  CHECK(code("1.2.3") == ErrorCode::kFormat);
  CHECK(code("1.") == ErrorCode::kFormat);  // digits required on both sides
  CHECK(code(".25") == ErrorCode::kFormat);
  CHECK(code("-1") == ErrorCode::kWeight);
  CHECK(code("0.0000000001") == ErrorCode::kWeight);
  CHECK(code("1000000001") == ErrorCode::kWeight);
}

TEST_CASE("minimal decimal rendering round-trips") {
  for (const char* text : {"0", "1", "0.5", "2.125", "0.000000001", "999999999.999999999"}) {
    CHECK(Weight::parse(text).to_string() == text);
  }
  CHECK(Weight::parse("1.50").to_string() == "1.5");
}

TEST_CASE("cost sums do not overflow and format exactly") {
  Cost c;
  for (int i = 0; i < 4096 * 4095; i += 4096) c += Weight::units(1'000'000'000);
  CHECK(c.to_string() == "4095000000000");
  CHECK((Cost(Weight::parse("0.1")) + Weight::parse("0.2")).to_string() == "0.3");
  CHECK((Cost(Weight::units(1)) - Weight::units(3)).to_string() == "-2");
  CHECK(Cost(Weight::parse("0.7")).to_rational() == Rational(7, 10));
}

TEST_CASE("rational formatting") {
  CHECK(format_rational(Rational(1, 2), Rounding::kFloor) == "0.5");
  CHECK(format_rational(Rational(1, 3), Rounding::kFloor) == "0.333333333");
  CHECK(format_rational(Rational(1, 3), Rounding::kCeil) == "0.333333334");
  CHECK(format_rational(Rational(-1, 3), Rounding::kFloor) == "-0.333333334");
  CHECK(is_fixed_point(Rational(3, 8)));
  CHECK_FALSE(is_fixed_point(Rational(1, 3)));
  CHECK(parse_decimal_rational("0.05") == Rational(1, 20));
  CHECK(parse_decimal_rational("-2.5") == Rational(-5, 2));
  CHECK_THROWS_AS(parse_decimal_rational("x"), Error);
}

}
