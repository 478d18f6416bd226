#include "mfas/fixed_point.hpp"

#include <algorithm>
#include <cctype>

#include "mfas/error.hpp"

namespace mfas {

namespace {

struct ParsedDecimal {
  bool negative = false;
  std::string whole;
  std::string fraction;
};

ParsedDecimal split_decimal(std::string_view text) {
  ParsedDecimal out;
  if (text.empty()) fail(ErrorCode::kFormat, "empty number");
  std::size_t pos = 0;
  if (text[0] == '-') {
    out.negative = true;
    pos = 1;
  }
  const auto dot = text.find('.', pos);
  const auto whole = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
  const auto fraction = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  if (whole.empty() || !all_digits(whole) || !all_digits(fraction) ||
      (dot != std::string_view::npos && fraction.empty())) {
    fail(ErrorCode::kFormat, "malformed number '" + std::string(text) + "'");
  }
  out.whole = std::string(whole);
  out.fraction = std::string(fraction);
  return out;
}

}  // namespace

Weight Weight::parse(std::string_view text) {
  const ParsedDecimal d = split_decimal(text);
  if (d.fraction.size() > static_cast<std::size_t>(kFractionDigits)) {
    fail(ErrorCode::kWeight, "more than 9 fractional digits in '" + std::string(text) + "'");
  }
  auto first_nonzero = d.whole.find_first_not_of('0');
  std::string_view whole = first_nonzero == std::string::npos
                               ? std::string_view("0")
                               : std::string_view(d.whole).substr(first_nonzero);
  if (whole.size() > 10) fail(ErrorCode::kWeight, "weight too large: " + std::string(text));
  std::int64_t units = std::stoll(std::string(whole));
  if (units > kMaxWholeUnits) fail(ErrorCode::kWeight, "weight too large: " + std::string(text));
  std::string frac = d.fraction;
  frac.resize(kFractionDigits, '0');
  const std::int64_t nanos = units * kScale + std::stoll(frac);
  if (d.negative && nanos != 0) fail(ErrorCode::kWeight, "negative weight: " + std::string(text));
  return Weight(nanos);
}

std::string format_nanos(Cost::Rep nanos) {
  const bool negative = nanos < 0;
  Cost::URep mag = negative ? static_cast<Cost::URep>(-nanos)
                                   : static_cast<Cost::URep>(nanos);
  const auto whole = mag / kScale;
  auto frac = static_cast<std::int64_t>(mag % kScale);

  std::string digits;
  auto w = whole;
  do {
    digits.push_back(static_cast<char>('0' + static_cast<int>(w % 10)));
    w /= 10;
  } while (w != 0);
  std::reverse(digits.begin(), digits.end());

  std::string out = negative ? "-" : "";
  out += digits;
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(0, kFractionDigits - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += '.';
    out += f;
  }
  return out;
}

std::string Weight::to_string() const { return format_nanos(nanos_); }

std::string Cost::to_string() const { return format_nanos(nanos_); }

BigInt to_bigint(Cost::Rep value) {
  const bool negative = value < 0;
  Cost::URep mag = negative ? static_cast<Cost::URep>(-value)
                                   : static_cast<Cost::URep>(value);
  BigInt out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(mag);
  return negative ? BigInt(-out) : out;
}

Rational Cost::to_rational() const { return Rational(to_bigint(nanos_), BigInt(kScale)); }

bool is_fixed_point(const Rational& value) {
  const BigInt den = boost::multiprecision::denominator(value);
  return BigInt(kScale) % den == 0;
}

std::string format_rational(const Rational& value, Rounding mode) {
  const Rational scaled = value * BigInt(kScale);
  const BigInt num = boost::multiprecision::numerator(scaled);
  const BigInt den = boost::multiprecision::denominator(scaled);
  BigInt q = num / den;  // truncates toward zero
  const BigInt r = num % den;
  if (r != 0) {
    if (mode == Rounding::kFloor && num < 0) q -= 1;
    if (mode == Rounding::kCeil && num > 0) q += 1;
  }
  const bool negative = q < 0;
  const BigInt mag = negative ? BigInt(-q) : q;
  const BigInt whole = mag / kScale;
  const auto frac = static_cast<std::int64_t>(mag % kScale);
  std::string out = negative ? "-" : "";
  out += whole.str();
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(0, kFractionDigits - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += '.';
    out += f;
  }
  return out;
}

Rational parse_decimal_rational(std::string_view text) {
  const ParsedDecimal d = split_decimal(text);
  BigInt num(d.whole + d.fraction);
  BigInt den = 1;
  for (std::size_t i = 0; i < d.fraction.size(); ++i) den *= 10;
  Rational out(num, den);
  return d.negative ? Rational(-out) : out;
}

}  // namespace mfas
