#include "riparian/types.hpp"

#include <algorithm>
#include <cctype>

namespace riparian {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MultipleSinks: return "MultipleSinks";
    case ErrorCode::Cycle: return "Cycle";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::TooFewAgents: return "TooFewAgents";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NegativeQuantity: return "NegativeQuantity";
    case ErrorCode::InfeasibleObservation: return "InfeasibleObservation";
    case ErrorCode::NotRationalizable: return "NotRationalizable";
    case ErrorCode::ZeroTotal: return "ZeroTotal";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MixedNetworks: return "MixedNetworks";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::ParseError, "not a nonnegative decimal or fraction: '" +
                                         std::string(text) + "'");
}

// GMP reads a leading 0 as an octal prefix.
Integer decimal_integer(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string_view::npos ? Integer(0) : Integer(std::string(digits.substr(first)));
}

Integer power_of_ten(int exponent) {
  return boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent));
}

}  // namespace

Rational parse_quantity(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    const Integer d = decimal_integer(den);
    if (d == 0) bad_number(text);
    return Rational(decimal_integer(num), d);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) bad_number(text);
    const Integer digits = decimal_integer(std::string(whole) + std::string(frac));
    return Rational(digits, power_of_ten(static_cast<int>(frac.size())));
  }
  if (!all_digits(text)) bad_number(text);
  return Rational(decimal_integer(text));
}

std::string to_exact_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();

  // Terminating decimal iff the reduced denominator is 2^a 5^b.
  Integer rest = den;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();

  const int places = std::max(twos, fives);
  return format_decimal(q, places);
}

Rational round_half_up(const Rational& q, int decimals) {
  const bool negative = q < 0;
  const Rational magnitude = negative ? Rational(-q) : q;
  const Integer scale = power_of_ten(decimals);
  const Rational shifted = magnitude * Rational(scale) + Rational(1, 2);
  const Integer rounded =
      boost::multiprecision::numerator(shifted) / boost::multiprecision::denominator(shifted);
  const Rational result(rounded, scale);
  return negative ? Rational(-result) : result;
}

std::string format_decimal(const Rational& q, int decimals) {
  const Rational rounded = round_half_up(q, decimals);
  const bool negative = rounded < 0;
  const Rational magnitude = negative ? Rational(-rounded) : rounded;
  const Integer scaled = boost::multiprecision::numerator(magnitude * Rational(power_of_ten(decimals)));

  std::string digits = scaled.str();
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
  }
  return negative ? "-" + digits : digits;
}

}  // namespace riparian
