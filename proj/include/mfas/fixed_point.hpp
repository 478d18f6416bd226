#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mfas {

// Weights are integers counting units of 1e-9.
inline constexpr std::int64_t kScale = 1'000'000'000;
inline constexpr int kFractionDigits = 9;
// Largest accepted weight, in whole units; keeps every weight in an int64.
inline constexpr std::int64_t kMaxWholeUnits = 1'000'000'000;

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class Cost;

/// A single non-negative arc weight.
class Weight {
 public:
  constexpr Weight() = default;
  static constexpr Weight from_nanos(std::int64_t nanos) { return Weight(nanos); }
  static constexpr Weight units(std::int64_t whole) { return Weight(whole * kScale); }

  /// Parses a plain decimal ("12", "0.5", "3.000000001"). Throws
  /// FormatError on malformed text and WeightError on a negative value,
  /// more than nine fractional digits or an out-of-range magnitude.
  static Weight parse(std::string_view text);

  constexpr std::int64_t nanos() const { return nanos_; }
  constexpr bool is_zero() const { return nanos_ == 0; }

  /// Shortest decimal that parses back to the same value.
  std::string to_string() const;

  constexpr auto operator<=>(const Weight&) const = default;

 private:
  constexpr explicit Weight(std::int64_t nanos) : nanos_(nanos) {}
  std::int64_t nanos_ = 0;
};

/// Exact sum of weights (may be negative for differences).
class Cost {
 public:
  __extension__ using Rep = __int128;
  __extension__ using URep = unsigned __int128;

  constexpr Cost() = default;
  constexpr Cost(Weight w) : nanos_(w.nanos()) {}  // NOLINT implicit widening
  static constexpr Cost from_nanos(Rep nanos) {
    Cost c;
    c.nanos_ = nanos;
    return c;
  }

  constexpr Rep nanos() const { return nanos_; }

  constexpr Cost& operator+=(Cost o) {
    nanos_ += o.nanos_;
    return *this;
  }
  constexpr Cost& operator-=(Cost o) {
    nanos_ -= o.nanos_;
    return *this;
  }
  friend constexpr Cost operator+(Cost a, Cost b) { return a += b; }
  friend constexpr Cost operator-(Cost a, Cost b) { return a -= b; }
  constexpr Cost operator*(std::int64_t k) const { return from_nanos(nanos_ * k); }

  constexpr auto operator<=>(const Cost&) const = default;

  std::string to_string() const;
  Rational to_rational() const;

 private:
  Rep nanos_ = 0;
};

std::string format_nanos(Cost::Rep nanos);

BigInt to_bigint(Cost::Rep value);

/// Decimal rendering of a rational: exact when the value is a multiple of
/// 1e-9, otherwise the rounded value at nine digits in the given direction.
enum class Rounding { kFloor, kCeil };
std::string format_rational(const Rational& value, Rounding mode);
bool is_fixed_point(const Rational& value);

/// Parses a decimal number into an exact rational (allows a leading '-').
Rational parse_decimal_rational(std::string_view text);

}  // namespace mfas
