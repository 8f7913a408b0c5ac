#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lkn/constants.hpp"
#include "lkn/geometry.hpp"
#include "lkn/quadrature.hpp"
#include "lkn/test_function.hpp"

namespace lkn {

// Integral of f(x0 + u) over u in hK ∩ C.
//
// The sector is cut into 2^{d-m} orthant pieces and each piece into d
// pyramids {u_i >= u_j}. A pyramid is parametrized radially from the origin,
// u = t * tau(s) * (e_i + sum_j s_j e_j), so integrands that depend on |u|_K
// only are constant in s, and power singularities at the origin turn into
// one-dimensional endpoint singularities in t (removed further by the grading
// t = w^k). All pieces share one adaptive cubature on [0,1]^d.
QuadratureResult integrate_sector(const ScalarField& f, const ConvexBody& body, const ConeSpec& cone, double h,
                                  std::span<const double> x0, const QuadratureOptions& opts);

QuadratureResult integrate_sector(const TestFunction& f, const InequalityParams& params,
                                  std::span<const double> x0, const QuadratureOptions& opts);

// Same mapping with a fixed (non-adaptive) tensor rule: `cells` pieces per
// axis and `order` Gauss points per piece. Used for cheap scans.
double integrate_sector_fixed(const ScalarField& f, const ConvexBody& body, const ConeSpec& cone, double h,
                              std::span<const double> x0, int order, int cells);

// Integral over the axis-aligned box with corners lo and hi. Orientation is
// respected: swapping lo_i and hi_i flips the sign.
QuadratureResult integrate_box(const ScalarField& f, std::span<const double> lo, std::span<const double> hi,
                               const QuadratureOptions& opts);

QuadratureOptions radial_quadrature_options();

// d mu(K∩C) ∫_0^h t^{d-1} profile(t)^exponent dt, which equals the integral
// of profile(|u|_K)^exponent over hK ∩ C. `singular_order` declares
// profile(t) ~ t^{-singular_order} at 0; a non-integrable combination throws
// DomainError.
QuadratureResult radial_integral(const std::function<double(double)>& profile, const InequalityParams& params,
                                 double exponent, double singular_order = 0.0,
                                 const QuadratureOptions& opts = radial_quadrature_options());

struct NormOptions {
  QuadratureOptions quad;
  std::size_t sup_samples = 10'000;
  int refine_starts = 10;
  std::uint64_t seed = 0;
  // When set, sampled sup norms also report a Lipschitz inflation term.
  std::optional<double> lipschitz;
};

struct NormEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  // Sup norms only: number of sample points and the Lipschitz inflation.
  std::size_t samples = 0;
  double inflation = 0.0;
};

// Sampled sup of |field| over radius*K ∩ C: low-discrepancy points followed
// by compass search from the best starts. The value is a lower bound.
NormEstimate sup_estimate(const ScalarField& field, const ConvexBody& body, const ConeSpec& cone, double radius,
                          const NormOptions& opts);

// ||field||_{L_p(radius K ∩ C)}; p may be infinite.
NormEstimate lp_norm(const ScalarField& field, const ConvexBody& body, const ConeSpec& cone, double p,
                     double support_radius, const NormOptions& opts);

struct SeminormOptions {
  QuadratureOptions quad;
  // Grid pitch relative to h and a per-axis cap (0 picks one by dimension).
  double pitch_fraction = 0.125;
  int max_grid_per_axis = 0;
  int refine_candidates = 3;
  int coarse_order = 4;
  int coarse_cells = 2;
  // Report the best fixed-rule value and skip the adaptive integrals.
  bool coarse_only = false;
  // seminorm_sup: size of the logarithmic h grid.
  int h_grid_points = 33;
};

struct SeminormEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  std::vector<double> maximizer;
  std::size_t evaluations = 0;
  // True when the maximizing shift is known analytically (origin), so the
  // value is not just a search lower bound.
  bool exact_maximizer = false;
  // seminorm_sup only: the h where the sup was found (inf for the L1 limit).
  double h_at_max = 0.0;
};

// sup over x in C of |∫_{hK∩C} f(x+u) du|.
SeminormEstimate seminorm_h(const TestFunction& f, const InequalityParams& params, const SeminormOptions& opts);

// sup over h > 0 of seminorm_h. Nonnegative functions return ||f||_{L_1(C)}.
// An empty h_grid selects a logarithmic grid from R/16 to 2R.
SeminormEstimate seminorm_sup(const TestFunction& f, const InequalityParams& params, const SeminormOptions& opts,
                              std::span<const double> h_grid = {});

}  // namespace lkn
