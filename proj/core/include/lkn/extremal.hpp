#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lkn/constants.hpp"
#include "lkn/numerics.hpp"
#include "lkn/quadrature.hpp"
#include "lkn/test_function.hpp"

namespace lkn {

// P(r) = ∫_r^h g_h(u)^{p'-1} du on [0, h], zero beyond h.
//
// Substituting s = (u/h)^d turns P into a regularized incomplete Beta
// function. It is tabulated once on a grid clustered at both ends (P' blows
// up at the origin when d > 1, and P vanishes like (h-r)^{p'} at h). Between
// nodes the table is read through cubic Hermite interpolation with the exact
// derivative, limited to keep it monotone; the outermost cells fall back to
// the closed form.
class RadialProfile {
 public:
  static constexpr int kNodes = 2048;

  explicit RadialProfile(const InequalityParams& params);

  double operator()(double r) const;
  // g_h(r)^{p'-1} = -P'(r) for 0 < r < h; zero for r >= h.
  double slope(double r) const;
  // Closed-form P(r) without the table.
  double exact(double r) const;
  // ∫_0^x t^j g_h(t)^{p'-1} dt for 0 <= x <= h, also an incomplete Beta.
  double moment(int j, double x) const;

  double h() const { return h_; }
  // P(0), the sup of the extremal function.
  double peak() const { return peak_; }
  // Exponent b with g^{p'-1}(r) ~ r^{-b} as r -> 0, i.e. (d-1)(p'-1).
  double singular_order() const { return singular_order_; }
  std::span<const double> nodes() const { return nodes_; }

 private:
  int d_;
  double h_;
  double q_;       // p' - 1
  double scale_;   // (d mu)^{-q}
  double beta_a_;  // ((1-d) q + 1) / d
  double prefactor_;
  double peak_;
  double singular_order_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

// f_{e,h}(y) = P(|y|_K) on hK ∩ C, zero elsewhere.
TestFunction extremal_f(const InequalityParams& params);

// P(0) = ∫_0^h g_h^{p'-1} by graded adaptive quadrature.
QuadratureResult extremal_sup(const InequalityParams& params, const QuadratureOptions& opts = radial_quadrature_options());

// f(y) = ∫_0^{|y|_K} g_h^{p'-1} = P(0) - P(|y|_K), extended by the constant
// P(0) outside hK. Its Steklov average at the origin attains the Ostrowski
// bound.
TestFunction ostrowski_extremal(const InequalityParams& params);

// ∫_{[0,b]} P(max(c, |u|_K)) du for b in [0,h]^k and the unit box K; with
// c = 0 and k = d this is the mass of f_{e,h} over the box [0,b].
//
// phi(t) = prod_i min(t, b_i) is the volume of {u in [0,b] : |u|_K <= t}, so
// integrating by parts gives P(M) phi(M) + ∫_c^M phi(t) g^{p'-1}(t) dt with
// M = max(c, max b). phi is a monomial between consecutive b_i, so the
// integral is a sum of profile moments.
double extremal_box_mass(const RadialProfile& profile, std::span<const double> b, double c = 0.0);

// F_{e,h}(x) = ∫_0^{x_1} ... ∫_0^{x_d} f_{e,h}; needs m = 0 and the unit box.
TestFunction antiderivative_F(const InequalityParams& params);

struct SplitPoint {
  double a = 0.0;
  // Mass of f_{e,h} over (0,a) x (-h,h)^{d-1} minus half the sector mass.
  double residual = 0.0;
  int iterations = 0;
};

// The a in (0,h) that halves the mass of f_{e,h} over (0,h) x (-h,h)^{d-1};
// needs m = 1 and the unit box.
SplitPoint split_point_a(const InequalityParams& params, double tol = 1e-10);

// G_{e,h}(x) = ∫_a^{x_1} ∫_0^{x_2} ... ∫_0^{x_d} f_{e,h}; needs m = 1 and the
// unit box.
TestFunction antiderivative_G(const InequalityParams& params);

}  // namespace lkn
