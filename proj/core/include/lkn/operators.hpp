#pragma once

#include <span>
#include <vector>

#include "lkn/constants.hpp"
#include "lkn/numerics.hpp"
#include "lkn/quadrature.hpp"
#include "lkn/test_function.hpp"

namespace lkn {

// S_h f(x) = (h^d mu(K∩C))^{-1} ∫_{hK∩C} f(x+y) dy. The error estimate is
// scaled by the same normalizer.
QuadratureResult steklov(const TestFunction& f, const InequalityParams& params, std::span<const double> x,
                         const QuadratureOptions& opts = {});

enum class DiffMode { forward, central };

// Delta^+_{i,h} on the first m axes, the central Delta_{i,h} on the rest.
struct DifferenceScheme {
  std::vector<DiffMode> modes;
  double h = 0.0;

  static DifferenceScheme for_cone(const ConeSpec& cone, double h);
  static DifferenceScheme for_params(const InequalityParams& params);

  int dim() const { return static_cast<int>(modes.size()); }
  int forward_count() const;
  // 2^{d-m} h^d, the volume of x + (hK ∩ C) for the unit box.
  double normalizer() const;
};

// The bare composition (Delta^+_1 ... Delta^+_m Delta_{m+1} ... Delta_d) F(x):
// a signed sum over the 2^d corners, visited in Gray-code order so each step
// moves a single coordinate.
double corner_sum(const TestFunction& F, const DifferenceScheme& scheme, std::span<const double> x);

// mixed difference operator: corner_sum / (2^{d-m} h^d).
double mixed_difference(const TestFunction& F, const DifferenceScheme& scheme, std::span<const double> x);

// ||mixed difference||_{L_inf -> L_inf} = 2^m h^{-d}.
double mixed_difference_norm(const DifferenceScheme& scheme);

// prod_i sign(y_i - c_i) with c_i the midpoint of the two stencil points on
// axis i: a unit-sup function on which |mixed_difference(., x)| equals the
// operator norm.
TestFunction sign_corner_witness(const DifferenceScheme& scheme, std::span<const double> x);

struct FubiniCheck {
  double integral = 0.0;  // ∫_{x + hK∩C} ∂_I f
  double corners = 0.0;   // corner_sum of f at x
  double residual = 0.0;
  double quad_error = 0.0;
};

// Compares both sides of ∫_{x+hK∩C} ∂_I f = (Delta ... Delta) f(x). Needs the
// unit box and a closed-form mixed derivative on f.
FubiniCheck fubini_identity_check(const TestFunction& f, const InequalityParams& params, std::span<const double> x,
                                  const QuadratureOptions& opts = {});

}  // namespace lkn
