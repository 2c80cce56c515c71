#ifndef RIPARIAN_RATIONALIZE_HPP
#define RIPARIAN_RATIONALIZE_HPP

#include <vector>

#include "riparian/problem.hpp"
#include "riparian/types.hpp"

namespace riparian {

enum class AlphaFlag { Exact, Indeterminate };

/// Retention parameters under which the geometric recursion reproduces an
/// observed allocation.
struct RationalizationResult {
  QVector alpha;
  std::vector<AlphaFlag> flags;
  /// Disposable inflow of each agent along the recursion.
  QVector disposable;
};

/// Recovers alpha_i = z_i / d_i agent by agent in topological order.
///
/// Where d_i = 0 the observation forces z_i = 0, any alpha fits, and 0 is
/// reported with an Indeterminate flag. The sink always gets alpha = 1.
/// Throws InfeasibleObservation when z is not a feasible, non-wasteful
/// allocation of p.
RationalizationResult rationalize_alpha(const Problem& p, const Allocation& z);

struct FitResult {
  double gamma;
  double loss;
  int iterations;
};

/// Sum of squared deviations between the single-parameter geometric
/// allocation at `gamma` and `observed`, in double precision.
double gamma_loss(const Problem& p, const Vector<double>& observed, double gamma);

/// Best single retention share for an observed allocation: a 65-point grid
/// over [0,1], then golden-section refinement inside the bracket around the
/// best grid point down to width 1e-9.
FitResult fit_gamma(const Problem& p, const Allocation& z);

/// Rescales `raw` proportionally so its entries sum to `target_total`.
QVector scale_withdrawals(const QVector& raw, const Rational& target_total);

}  // namespace riparian

#endif  // RIPARIAN_RATIONALIZE_HPP
