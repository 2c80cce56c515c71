#include "riparian/rationalize.hpp"

#include <cmath>

#include "riparian/rules.hpp"

namespace riparian {

namespace {

void require_valid_observation(const Problem& p, const Allocation& z) {
  if (z.size() != p.size()) {
    throw Error(ErrorCode::InfeasibleObservation, "observed allocation has the wrong length");
  }
  if (const auto violation = validate_allocation(p, z)) {
    throw Error(ErrorCode::InfeasibleObservation, "observed allocation is " + describe(*violation));
  }
}

}  // namespace

RationalizationResult rationalize_alpha(const Problem& p, const Allocation& z) {
  require_valid_observation(p, z);
  const auto& net = p.network();
  const Index n = p.size();

  RationalizationResult result{QVector::Zero(n), std::vector<AlphaFlag>(static_cast<std::size_t>(n)),
                               QVector::Zero(n)};
  QVector residual = QVector::Zero(n);
  for (const Index i : net.topological_order()) {
    Rational disposable = p.inflow(i);
    for (const Index up : net.predecessors(i)) disposable += residual(up);
    result.disposable(i) = disposable;
    residual(i) = disposable - z(i);

    auto& flag = result.flags[static_cast<std::size_t>(i)];
    if (i == net.sink()) {
      if (z(i) != disposable) {
        throw Error(ErrorCode::NotRationalizable,
                    "sink receives " + to_exact_string(disposable) + " but is observed with " +
                        to_exact_string(z(i)));
      }
      result.alpha(i) = 1;
      flag = disposable > 0 ? AlphaFlag::Exact : AlphaFlag::Indeterminate;
    } else if (disposable > 0) {
      result.alpha(i) = z(i) / disposable;
      if (result.alpha(i) > 1) {
        throw Error(ErrorCode::NotRationalizable,
                    "agent " + std::to_string(i + 1) + " is observed with more than it disposes of");
      }
      flag = AlphaFlag::Exact;
    } else {
      result.alpha(i) = 0;
      flag = AlphaFlag::Indeterminate;
    }
  }
  return result;
}

double gamma_loss(const Problem& p, const Vector<double>& observed, double gamma) {
  const auto& net = p.network();
  const Vector<double> inflows = p.inflows().unaryExpr([](const Rational& q) { return to_double(q); });
  const Vector<double> x = geometric_recursive(net, inflows, uniform_retention(net, gamma));
  return (x - observed).squaredNorm();
}

FitResult fit_gamma(const Problem& p, const Allocation& z) {
  require_valid_observation(p, z);
  const Vector<double> observed = z.unaryExpr([](const Rational& q) { return to_double(q); });
  auto loss = [&](double gamma) { return gamma_loss(p, observed, gamma); };

  constexpr int grid_intervals = 64;
  int best = 0;
  double best_loss = loss(0.0);
  for (int k = 1; k <= grid_intervals; ++k) {
    const double value = loss(static_cast<double>(k) / grid_intervals);
    if (value < best_loss) {
      best = k;
      best_loss = value;
    }
  }

  double lo = static_cast<double>(std::max(best - 1, 0)) / grid_intervals;
  double hi = static_cast<double>(std::min(best + 1, grid_intervals)) / grid_intervals;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = loss(c);
  double fd = loss(d);
  int iterations = 0;
  while (hi - lo > 1e-9) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = loss(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = loss(d);
    }
    ++iterations;
  }

  double gamma = 0.5 * (lo + hi);
  double gamma_value = loss(gamma);
  // The refined point never loses to the grid seed it started from.
  const double seed = static_cast<double>(best) / grid_intervals;
  if (best_loss < gamma_value) {
    gamma = seed;
    gamma_value = best_loss;
  }
  return {gamma, gamma_value, iterations};
}

QVector scale_withdrawals(const QVector& raw, const Rational& target_total) {
  for (Index i = 0; i < raw.size(); ++i) {
    if (raw(i) < 0) throw Error(ErrorCode::NegativeQuantity, "withdrawals must be nonnegative");
  }
  const Rational total = raw.sum();
  if (total <= 0) throw Error(ErrorCode::ZeroTotal, "withdrawals sum to zero");
  return raw * Rational(target_total / total);
}

}  // namespace riparian
