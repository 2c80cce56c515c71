#ifndef RIPARIAN_TYPES_HPP
#define RIPARIAN_TYPES_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace riparian {

/// Arbitrary-precision integer backing every exact quantity.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Exact rational scalar. Always canonical (lowest terms, positive denominator).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Exact vector of quantities (inflows, allocations, retention parameters).
using QVector = Vector<Rational>;

enum class ErrorCode {
  MultipleSinks,
  Cycle,
  Disconnected,
  TooFewAgents,
  UnknownAgent,
  NotLinear,
  BadParameter,
  SizeMismatch,
  NegativeQuantity,
  InfeasibleObservation,
  NotRationalizable,
  ZeroTotal,
  ParseError,
  MixedNetworks,
};

std::string_view to_string(ErrorCode code);

/// Domain error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parses a nonnegative decimal ("16.8") or fraction ("84/5") exactly.
/// Throws Error(ParseError) on anything else.
Rational parse_quantity(std::string_view text);

/// Shortest exact text: an integer, a terminating decimal, or "p/q".
/// parse_quantity(to_exact_string(q)) == q for every q >= 0.
std::string to_exact_string(const Rational& q);

/// Half-up (away from zero on ties) rounding to `decimals` places, padded
/// with trailing zeros.
std::string format_decimal(const Rational& q, int decimals);

/// Exact value of the half-up rounding produced by format_decimal.
Rational round_half_up(const Rational& q, int decimals);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline QVector to_qvector(std::initializer_list<Rational> values) {
  QVector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

}  // namespace riparian

#endif  // RIPARIAN_TYPES_HPP
