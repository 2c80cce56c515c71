#include "riparian/sampler.hpp"

#include <limits>

namespace riparian {

ProblemSampler::ProblemSampler(SamplerOptions options)
    : options_(std::move(options)), engine_(options_.seed) {
  if (options_.min_agents < 3 || options_.max_agents < options_.min_agents) {
    throw Error(ErrorCode::BadParameter, "sampler agent range must satisfy 3 <= min <= max");
  }
  if (options_.denominator_bound < 1 || options_.magnitude_bound < 1) {
    throw Error(ErrorCode::BadParameter, "sampler bounds must be positive");
  }
  if (options_.zero_probability < 0 || options_.zero_probability > 1) {
    throw Error(ErrorCode::BadParameter, "zero probability must lie in [0,1]");
  }
}

// Rejection sampling keeps the mapping independent of the standard library's
// distribution implementations.
std::uint64_t ProblemSampler::bounded(std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return draw % bound;
}

Index ProblemSampler::draw_index(Index lo, Index hi) {
  return lo + static_cast<Index>(bounded(static_cast<std::uint64_t>(hi - lo + 1)));
}

Index ProblemSampler::draw_size() { return draw_index(options_.min_agents, options_.max_agents); }

bool ProblemSampler::draw_bernoulli(const Rational& probability) {
  const Integer den = boost::multiprecision::denominator(probability);
  const Integer num = boost::multiprecision::numerator(probability);
  return Integer(bounded(den.convert_to<std::uint64_t>())) < num;
}

Rational ProblemSampler::draw_positive() {
  const long den = static_cast<long>(draw_index(1, options_.denominator_bound));
  const long num = static_cast<long>(draw_index(1, options_.magnitude_bound * den));
  return Rational(num, den);
}

Rational ProblemSampler::draw_quantity() {
  if (draw_bernoulli(options_.zero_probability)) return Rational(0);
  return draw_positive();
}

Rational ProblemSampler::draw_fraction() {
  const long den = static_cast<long>(draw_index(1, options_.denominator_bound));
  return Rational(static_cast<long>(draw_index(0, den)), den);
}

Rational ProblemSampler::draw_fraction_below_one() {
  const long den = static_cast<long>(draw_index(1, options_.denominator_bound));
  return Rational(static_cast<long>(draw_index(0, den - 1)), den);
}

QVector ProblemSampler::draw_retention(Index n) {
  QVector alpha(n);
  for (Index i = 0; i + 1 < n; ++i) alpha(i) = draw_fraction();
  alpha(n - 1) = 1;
  return alpha;
}

QVector ProblemSampler::draw_inflows(Index n) {
  QVector e(n);
  for (Index i = 0; i < n; ++i) e(i) = draw_quantity();
  return e;
}

QVector ProblemSampler::draw_positive_inflows(Index n) {
  QVector e(n);
  for (Index i = 0; i < n; ++i) e(i) = draw_positive();
  return e;
}

Problem ProblemSampler::draw_problem() { return draw_problem(draw_size()); }

Problem ProblemSampler::draw_problem(Index n) { return Problem::line(draw_inflows(n)); }

}  // namespace riparian
