#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "lkn/errors.hpp"
#include "lkn/registry.hpp"

using namespace lkn;

namespace {

InequalityParams box_params(int d, double p, double h, int m) {
  return InequalityParams(p, h, ConvexBody::box(d), ConeSpec(d, m));
}

}  // namespace

TEST_CASE("factor jets match finite differences") {
  for (const Factor& f : {Factor{FactorKind::bump, 0.3, 0.7, 0}, Factor{FactorKind::poly_bump, -0.2, 1.1, 2},
                          Factor{FactorKind::monomial, 0.0, 1.0, 3}}) {
    for (double x : {-0.5, 0.1, 0.4, 0.8}) {
      const auto j = f.jet(x);
      const double step = 1e-5;
      const auto jp = f.jet(x + step);
      const auto jm = f.jet(x - step);
      CHECK(j[1] == doctest::Approx((jp[0] - jm[0]) / (2 * step)).epsilon(1e-7).scale(1e-6));
      CHECK(j[2] == doctest::Approx((jp[1] - jm[1]) / (2 * step)).epsilon(1e-6).scale(1e-5));
    }
  }
  CHECK(Factor{FactorKind::bump, 0.0, 1.0, 0}.jet(1.0)[0] == 0.0);
  CHECK(Factor{FactorKind::bump, 0.0, 1.0, 0}.jet(-3.0)[2] == 0.0);
}

TEST_CASE("factor sups") {
  CHECK(Factor{FactorKind::bump, 0.5, 2.0, 0}.sup_abs(0, false) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  // Bump centred at -1 seen from x > 0: sup is the value at 0.
  const Factor left{FactorKind::bump, -0.5, 1.0, 0};
  CHECK(left.sup_abs(0, true) == doctest::Approx(left.jet(0.0)[0]).epsilon(1e-9));
  // Dense scan oracle for the derivative.
  const Factor pb{FactorKind::poly_bump, 0.0, 1.0, 1};
  double oracle = 0.0;
  for (int i = 0; i <= 200000; ++i) oracle = std::max(oracle, std::abs(pb.jet(-1.0 + 2.0 * i / 200000)[1]));
  CHECK(pb.sup_abs(1, false) == doctest::Approx(oracle).epsilon(1e-8));
  const Factor mono{FactorKind::monomial, 0.0, 1.0, 3};
  CHECK(mono.sup_abs(3, false) == 6.0);
  CHECK(mono.sup_abs(4, false) == 0.0);
  CHECK(std::isinf(mono.sup_abs(0, false)));
}

TEST_CASE("product functions: gradient, mixed derivative and recorded facts") {
  const InequalityParams params = box_params(3, 4.0, 1.0, 1);
  const std::vector<Factor> factors{{FactorKind::bump, 0.8, 0.5, 0},
                                    {FactorKind::poly_bump, 0.1, 0.9, 1},
                                    {FactorKind::bump, -0.2, 0.6, 0}};
  const TestFunction f = product_function(factors, params.body(), params.cone());
  const std::vector<double> x{0.7, 0.3, -0.1};
  std::vector<double> g(3);
  f.grad(x, g);
  for (int i = 0; i < 3; ++i) {
    auto xp = x;
    auto xm = x;
    xp[i] += 1e-6;
    xm[i] -= 1e-6;
    CHECK(g[i] == doctest::Approx((f.eval(xp) - f.eval(xm)) / 2e-6).epsilon(1e-6));
  }
  // Mixed derivative by nested central differences.
  const double step = 1e-3;
  double mixed = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    auto y = x;
    int sign = 1;
    for (int i = 0; i < 3; ++i) {
      const bool up = (mask >> i) & 1;
      y[i] += up ? step : -step;
      if (!up) sign = -sign;
    }
    mixed += sign * f.eval(y);
  }
  mixed /= 8 * step * step * step;
  REQUIRE(f.mixed_derivative);
  CHECK(f.mixed_derivative->eval(x) == doctest::Approx(mixed).epsilon(1e-5));
  CHECK_FALSE(f.nonnegative);
  CHECK(f.support_radius == doctest::Approx(1.3));
  CHECK(*f.sup_norm == doctest::Approx(std::exp(-2.0) * factors[1].sup_abs(0, false)).epsilon(1e-12));
  // Sampling never beats the recorded sup.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 2000; ++i) {
    const std::vector<double> y{std::abs(u(rng)), u(rng), u(rng)};
    CHECK(std::abs(f.eval(y)) <= *f.sup_norm * (1 + 1e-12));
  }
  // Factor hooks reproduce the function.
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0](x[0]) * f.factors[1](x[1]) * f.factors[2](x[2]) == doctest::Approx(f.eval(x)));
}

TEST_CASE("scaling keeps the factor hooks consistent") {
  const InequalityParams params = box_params(2, 3.0, 1.0, 0);
  const TestFunction f = scaled(tensor_poly_bump(params, 0.2, 0.8, 1), -2.5);
  const std::vector<double> x{0.3, 0.1};
  CHECK(f.factors[0](x[0]) * f.factors[1](x[1]) == doctest::Approx(f.eval(x)));
}

TEST_CASE("random registry functions are seeded, compact and supported in the cone") {
  const InequalityParams params = box_params(2, 3.0, 1.0, 1);
  std::set<std::string> ids;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const TestFunction a = random_registry_function(params, seed);
    const TestFunction b = random_registry_function(params, seed);
    CHECK(a.id == b.id);
    ids.insert(a.id);
    CHECK(a.compactly_supported());
    // Zero at the cone boundary x_0 = 0 and near the origin.
    CHECK(a.eval(std::vector<double>{0.0, 0.3}) == 0.0);
    CHECK(a.eval(std::vector<double>{1e-3, 0.0}) == 0.0);
  }
  CHECK(ids.size() > 20);
}

TEST_CASE("make_function covers the registry names") {
  const InequalityParams params = box_params(2, 3.0, 1.0, 1);
  for (const std::string& name : registry_names()) {
    FunctionSpec spec;
    spec.name = name;
    spec.center = 0.5;
    spec.radius = 0.4;
    if (name == "F") {
      CHECK_THROWS_AS(make_function(spec, params), DomainError);
      continue;
    }
    const TestFunction f = make_function(spec, params);
    CHECK(f.dim == 2);
  }
  FunctionSpec bad;
  bad.name = "nope";
  CHECK_THROWS(make_function(bad, params));
  FunctionSpec ex;
  ex.h0 = 0.5;
  CHECK(make_function(ex, params).support_radius == 0.5);
}

TEST_CASE("axis breaks sit at the sign changes of the factor and its derivatives") {
  // z e^{1/(z^2-1)}: value changes sign at z = 0, the slope where
  // (1 - z^2)^2 = 2 z^2, i.e. z = ±(sqrt 6 - sqrt 2) / 2.
  const double c = 0.2;
  const double r = 0.8;
  const ConvexBody body = ConvexBody::box(2);
  const TestFunction f = product_function({Factor{FactorKind::poly_bump, c, r, 1}, Factor{FactorKind::bump, -0.1, 0.5, 0}},
                                          body, ConeSpec(2, 0));
  const double z = (std::sqrt(6.0) - std::sqrt(2.0)) / 2.0;
  REQUIRE(f.axis_breaks.size() == 2);
  REQUIRE(f.axis_breaks[0].size() == 3);
  CHECK(f.axis_breaks[0][0] == doctest::Approx(c - r * z).epsilon(1e-12));
  CHECK(f.axis_breaks[0][1] == doctest::Approx(c).epsilon(1e-12));
  CHECK(f.axis_breaks[0][2] == doctest::Approx(c + r * z).epsilon(1e-12));
  REQUIRE(f.axis_breaks[1].size() == 1);
  CHECK(f.axis_breaks[1][0] == doctest::Approx(-0.1).epsilon(1e-12));

  // The mixed derivative's factors are the slopes; a bump slope changes sign
  // at the centre and its own slope where 3 z^4 = 1.
  const TestFunction& mixed = *f.mixed_derivative;
  REQUIRE(mixed.factors.size() == 2);
  CHECK(mixed.factors[1](0.05) == doctest::Approx(Factor{FactorKind::bump, -0.1, 0.5, 0}.jet(0.05)[1]));
  const double w = std::pow(1.0 / 3.0, 0.25);
  REQUIRE(mixed.axis_breaks[1].size() == 3);
  CHECK(mixed.axis_breaks[1][0] == doctest::Approx(-0.1 - 0.5 * w).epsilon(1e-12));
  CHECK(mixed.axis_breaks[1][1] == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(mixed.axis_breaks[1][2] == doctest::Approx(-0.1 + 0.5 * w).epsilon(1e-12));
}
