#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "riparian/data.hpp"
#include "riparian/rationalize.hpp"
#include "riparian/rules.hpp"
#include "riparian/sampler.hpp"
#include "test_support.hpp"

using namespace riparian;
using riparian::testing::q;
using riparian::testing::qv;
using riparian::testing::show;

namespace {

QVector nile_z() {
  const auto nile = nile_dataset();
  return scale_withdrawals(*nile.withdrawals, nile.inflows.sum());
}

/// Squared loss of the uniform-share allocation, by tracking each inflow
/// down its own path.
double tracked_loss(const RiverNetwork& net, const std::vector<double>& e,
                    const std::vector<double>& z, double gamma) {
  std::vector<double> x(e.size(), 0.0);
  for (Index j = 0; j < net.size(); ++j) {
    double water = e[static_cast<std::size_t>(j)];
    for (std::optional<Index> at = j; at; at = net.successor(*at)) {
      const double share = *at == net.sink() ? 1.0 : gamma;
      x[static_cast<std::size_t>(*at)] += share * water;
      water -= share * water;
    }
  }
  double loss = 0;
  for (std::size_t k = 0; k < x.size(); ++k) loss += (x[k] - z[k]) * (x[k] - z[k]);
  return loss;
}

std::vector<double> doubles(const QVector& v) {
  std::vector<double> out;
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_double(v(i)));
  return out;
}

}  // namespace

TEST_CASE("scaled Nile withdrawals") {
  const QVector z = nile_z();
  CHECK(z.sum() == q("103.9"));
  CHECK(z == qv({"38443/8690", "16624/30415", "3117/5530", "219229/24332", "2798027/121660",
                 "115329/1738"}));
  CHECK(format_decimal(z(4), 2) == "23.00");
}

TEST_CASE("Nile shares are recovered exactly") {
  const auto nile = nile_dataset().problem();
  const QVector z = nile_z();
  const auto result = rationalize_alpha(nile, z);
  CHECK(result.alpha == qv({"38443/145992", "33248/1738289", "34287/2775649", "1096145/6399316",
                            "2693/10463", "1"}));
  const char* rounded[] = {"0.26", "0.02", "0.01", "0.17", "0.26"};
  for (Index i = 0; i < 5; ++i) CHECK(format_decimal(result.alpha(i), 2) == rounded[i]);
  for (const auto flag : result.flags) CHECK(flag == AlphaFlag::Exact);
  CHECK(result.disposable(0) == q("16.8"));
  CHECK(result.disposable(3) == q("52.6"));
  CHECK(evaluate(rule::MultiGeometric{result.alpha}, nile) == z);
}

TEST_CASE("keeping and passing everything") {
  const auto p = Problem::line(qv({"12", "4", "0", "10"}));
  const auto kept = rationalize_alpha(p, p.inflows());
  CHECK(kept.alpha == qv({"1", "1", "0", "1"}));
  CHECK(kept.flags[2] == AlphaFlag::Indeterminate);
  CHECK(kept.flags[0] == AlphaFlag::Exact);

  const auto passed = rationalize_alpha(p, qv({"0", "0", "0", "26"}));
  CHECK(passed.alpha == qv({"0", "0", "0", "1"}));
  CHECK(passed.disposable == qv({"12", "16", "16", "26"}));
  for (const auto flag : passed.flags) CHECK(flag == AlphaFlag::Exact);
}

TEST_CASE("an empty upstream leaves the share undetermined") {
  const auto p = Problem::line(qv({"0", "0", "5"}));
  const auto result = rationalize_alpha(p, qv({"0", "0", "5"}));
  CHECK(result.flags[0] == AlphaFlag::Indeterminate);
  CHECK(result.flags[1] == AlphaFlag::Indeterminate);
  CHECK(result.flags[2] == AlphaFlag::Exact);
  CHECK(evaluate(rule::MultiGeometric{result.alpha}, p) == qv({"0", "0", "5"}));
}

TEST_CASE("observations that are not allocations are rejected") {
  const auto p = Problem::line(qv({"12", "4", "0", "10"}));
  for (const QVector& bad : {qv({"13", "3", "0", "10"}), qv({"1", "1", "1", "1"}), qv({"12", "4"})}) {
    try {
      rationalize_alpha(p, bad);
      FAIL("expected InfeasibleObservation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InfeasibleObservation);
    }
  }
  CHECK_THROWS_AS(fit_gamma(p, qv({"13", "3", "0", "10"})), Error);
}

TEST_CASE("shares round-trip on lines and on the Nile tree") {
  ProblemSampler sampler({.seed = 21});
  const auto nile = nile_dataset().network;
  for (int trial = 0; trial < 200; ++trial) {
    const bool tree = trial % 4 == 0;
    const Index n = tree ? nile.size() : sampler.draw_size();
    const Problem p = tree ? Problem(nile, sampler.draw_positive_inflows(n))
                           : Problem::line(sampler.draw_positive_inflows(n));
    const QVector alpha = sampler.draw_retention(n);
    CAPTURE(show(p.inflows()));
    CAPTURE(show(alpha));
    const auto result = rationalize_alpha(p, evaluate(rule::MultiGeometric{alpha}, p));
    CHECK(result.alpha == alpha);
  }
}

TEST_CASE("fitting a single share recovers the generating share") {
  ProblemSampler sampler({.seed = 22});
  for (int trial = 0; trial < 50; ++trial) {
    const Problem p = sampler.draw_problem(sampler.draw_size());
    const Problem positive = p.with_inflows(sampler.draw_positive_inflows(p.size()));
    const Rational gamma = sampler.draw_fraction();
    const auto fit = fit_gamma(positive, evaluate(rule::Geometric{gamma}, positive));
    CAPTURE(to_exact_string(gamma));
    CHECK(std::abs(fit.gamma - to_double(gamma)) <= 1e-6);
    CHECK(fit.loss <= 1e-12);
  }
}

TEST_CASE("fit on the Nile matches a dense grid") {
  const auto dataset = nile_dataset();
  const auto p = dataset.problem();
  const QVector z = nile_z();
  const auto fit = fit_gamma(p, z);

  const auto e = doubles(dataset.inflows);
  const auto observed = doubles(z);
  constexpr int points = 1'000'000;
  double best_gamma = 0, best_loss = tracked_loss(dataset.network, e, observed, 0.0);
  for (int k = 1; k <= points; ++k) {
    const double gamma = static_cast<double>(k) / points;
    const double loss = tracked_loss(dataset.network, e, observed, gamma);
    if (loss < best_loss) {
      best_loss = loss;
      best_gamma = gamma;
    }
  }
  CHECK(std::abs(fit.loss - best_loss) <= 1e-6);
  CHECK(std::abs(fit.gamma - best_gamma) <= 1e-5);
  CHECK(fit.loss == doctest::Approx(gamma_loss(p, Vector<double>::Map(observed.data(), 6), fit.gamma)));
  CHECK(fit.iterations > 0);
}

TEST_CASE("withdrawal scaling") {
  CHECK(scale_withdrawals(qv({"1", "3"}), q("8")) == qv({"2", "6"}));
  CHECK(scale_withdrawals(qv({"0", "5", "5"}), q("1")) == qv({"0", "1/2", "1/2"}));
  QVector negative = qv({"1", "1"});
  negative(1) = -1;
  auto code = [](const QVector& raw) {
    try {
      scale_withdrawals(raw, q("10"));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code(qv({"0", "0"})) == ErrorCode::ZeroTotal);
  CHECK(code(negative) == ErrorCode::NegativeQuantity);
}

TEST_CASE("scaling preserves proportions") {
  ProblemSampler sampler({.seed = 23});
  for (int trial = 0; trial < 200; ++trial) {
    const QVector raw = sampler.draw_positive_inflows(sampler.draw_size());
    const Rational target = sampler.draw_positive();
    const QVector scaled = scale_withdrawals(raw, target);
    CHECK(scaled.sum() == target);
    for (Index i = 1; i < raw.size(); ++i) CHECK(scaled(i) * raw(0) == scaled(0) * raw(i));
  }
}
