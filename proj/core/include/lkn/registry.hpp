#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lkn/constants.hpp"
#include "lkn/test_function.hpp"

namespace lkn {

// One-dimensional building blocks of the product test functions, written in
// z = (x - center) / radius:
//   bump      exp(-1 / (1 - z^2)) for |z| < 1, zero outside
//   poly_bump (x - center)^power * bump
//   monomial  x^power (center and radius ignored; not compactly supported)
enum class FactorKind { bump, poly_bump, monomial };

struct Factor {
  FactorKind kind = FactorKind::bump;
  double center = 0.0;
  double radius = 1.0;
  int power = 0;

  // Value and first two derivatives at x.
  std::array<double, 3> jet(double x) const;
  bool compact() const { return kind != FactorKind::monomial; }
  // sup of |derivative of the given order| over x > 0 (positive_only) or
  // over the real line. Dense sampling followed by golden-section refinement;
  // exact for the plain bump value.
  double sup_abs(int order, bool positive_only) const;
};

std::string to_string(FactorKind kind);

// f(x) = prod_i factors[i](x_i). The gradient, the mixed derivative
// ∂_I f = prod_i factors[i]'(x_i) and its gradient are all closed form; sup
// norms are taken over the cone (coordinates i < m positive).
TestFunction product_function(const std::vector<Factor>& factors, const ConvexBody& body, const ConeSpec& cone);

// The same factor on every axis.
TestFunction tensor_bump(const InequalityParams& params, double center, double radius);
TestFunction tensor_poly_bump(const InequalityParams& params, double center, double radius, int power);
// prod_i x_i^power.
TestFunction monomial_product(const InequalityParams& params, int power);

// Seeded random product of bumps and polynomial bumps, supported inside the
// cone at positive distance from the origin.
TestFunction random_registry_function(const InequalityParams& params, std::uint64_t seed);

struct FunctionSpec {
  std::string name = "extremal";
  double center = 0.0;
  double radius = 1.0;
  int power = 1;
  // For the extremal family: the h the construction is built for. When
  // absent the inequality's own h is used.
  double h0 = 0.0;
  double scale = 1.0;
};

// Names: extremal, ostrowski_extremal, F, G, bump, poly_bump, monomial.
TestFunction make_function(const FunctionSpec& spec, const InequalityParams& params);
std::vector<std::string> registry_names();

}  // namespace lkn
