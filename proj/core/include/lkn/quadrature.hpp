#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lkn {

struct QuadratureResult {
  double value = 0.0;
  // Difference between two refinement levels, summed over the final cells.
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

struct QuadratureOptions {
  // Stop once error_estimate <= max(abs_tol, tol * max(|value|, ∫|f|)).
  double tol = 1e-8;
  double abs_tol = 1e-15;
  // Maximum number of bisections of a cell along any single axis.
  int max_depth = 12;
  // Bisections per axis of the initial grid. Raising it guards against
  // kinks that a coarse cell's halving test cannot see.
  int min_depth = 1;
  std::size_t max_evaluations = 40'000'000;
  // Power grading t = u^k applied to the radial coordinate of sector maps.
  int radial_grading = 4;
  // Return the unconverged result (its error estimate above the target)
  // instead of throwing.
  bool best_effort = false;
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule (Newton on the three-term recurrence). Cached.
const GaussRule& gauss_legendre(int n);

using UnitIntegrand = std::function<double(std::span<const double>)>;

// Adaptive cubature of f over [0,1]^dim.
//
// Every cell is integrated with a tensor Gauss-Legendre rule; its error is
// the largest change seen when the cell is halved along one axis, and the
// cell is split along that axis. Cells are refined in order of decreasing
// error until the global tolerance is met. Throws QuadratureError (carrying
// the partial result) when no cell can be split further or the evaluation
// budget runs out, unless opts.best_effort is set.
QuadratureResult cubature_unit(const UnitIntegrand& f, int dim, const QuadratureOptions& opts);

// Adaptive integral of a scalar function over [a, b].
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts);

}  // namespace lkn
