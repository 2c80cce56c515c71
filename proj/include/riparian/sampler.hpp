#ifndef RIPARIAN_SAMPLER_HPP
#define RIPARIAN_SAMPLER_HPP

#include <cstdint>
#include <random>

#include "riparian/problem.hpp"
#include "riparian/types.hpp"

namespace riparian {

struct SamplerOptions {
  std::uint64_t seed = 1;
  Index min_agents = 3;
  Index max_agents = 8;
  /// Every drawn rational has denominator at most this.
  long denominator_bound = 12;
  /// Chance that a drawn quantity is exactly zero.
  Rational zero_probability{1, 4};
  /// Positive draws lie in (0, magnitude_bound].
  long magnitude_bound = 10;
};

/// Seeded stream of small exact rationals and linear problems.
///
/// The stream depends only on the options: two samplers built from equal
/// options produce identical sequences on every platform.
class ProblemSampler {
 public:
  explicit ProblemSampler(SamplerOptions options = {});

  const SamplerOptions& options() const { return options_; }

  Index draw_size();
  /// Uniform on [lo, hi].
  Index draw_index(Index lo, Index hi);
  /// Zero with the configured probability, otherwise positive.
  Rational draw_quantity();
  Rational draw_positive();
  /// Grid point in [0,1].
  Rational draw_fraction();
  /// Grid point in [0,1).
  Rational draw_fraction_below_one();
  /// Entries in [0,1], with 1 in the last slot.
  QVector draw_retention(Index n);
  QVector draw_inflows(Index n);
  QVector draw_positive_inflows(Index n);

  Problem draw_problem();
  Problem draw_problem(Index n);
  bool draw_bernoulli(const Rational& probability);

 private:
  std::uint64_t bounded(std::uint64_t bound);

  SamplerOptions options_;
  std::mt19937_64 engine_;
};

}  // namespace riparian

#endif  // RIPARIAN_SAMPLER_HPP
