#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <array>
#include <functional>
#include <cmath>

#include "lkn/errors.hpp"
#include "lkn/extremal.hpp"

using namespace lkn;

namespace {

InequalityParams box_params(int d, double p, double h, int m) {
  return InequalityParams(p, h, ConvexBody::box(d), ConeSpec(d, m));
}

// P(r) = ∫_r^h g^{p'-1} by tanh-sinh, straight from the kernel.
double profile_oracle(const InequalityParams& params, double r) {
  if (r >= params.h()) return 0.0;
  const double q = params.p_conj() - 1.0;
  if (q == 0.0) return params.h() - r;
  const int d = params.d();
  const double h = params.h();
  const double c = std::pow(d * params.sector_vol(), -q);
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(
      [&](double u) { return c * std::pow(u, (1.0 - d) * q) * std::pow(1.0 - std::pow(u / h, d), q); }, r, h);
}

// ∫_{lo}^{hi} P(max(|u1|, |u2|)) du over a planar box by nested tanh-sinh,
// split where the integrand has kinks.
double planar_mass(const RadialProfile& P, std::array<double, 2> lo, std::array<double, 2> hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double h = P.h();
  auto pieces = [&ts](double a, double b, std::vector<double> cuts, const std::function<double(double)>& g) {
    const double sign = a <= b ? 1.0 : -1.0;
    if (a > b) std::swap(a, b);
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double l = std::max(cuts[i], a);
      const double r = std::min(cuts[i + 1], b);
      if (r > l) sum += ts.integrate(g, l, r, 1e-12);
    }
    return sign * sum;
  };
  auto inner = [&](double u1) {
    const double a = std::abs(u1);
    return pieces(lo[1], hi[1], {0.0, a, -a, h, -h}, [&](double u2) { return P.exact(std::max(a, std::abs(u2))); });
  };
  return pieces(lo[0], hi[0], {0.0, lo[1], -lo[1], hi[1], -hi[1], h, -h}, inner);
}

}  // namespace

TEST_CASE("profile against direct quadrature of the kernel") {
  for (int d = 1; d <= 3; ++d) {
    for (double p : {d + 0.5, d + 1.0, 2.0 * d + 1.0, kInf}) {
      const InequalityParams params = box_params(d, p, 0.8, d > 1 ? 1 : 0);
      const RadialProfile P(params);
      CHECK(P.peak() == doctest::Approx(profile_oracle(params, 0.0)).epsilon(1e-10));
      for (double r : {1e-6, 0.01, 0.1, 0.33, 0.5, 0.79, 0.7999}) {
        const double oracle = profile_oracle(params, r);
        CHECK(P.exact(r) == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(P(r) == doctest::Approx(oracle).epsilon(1e-9));
      }
      CHECK(P(0.8) == 0.0);
      CHECK(P(1.0) == 0.0);
    }
  }
}

TEST_CASE("profile slope is the kernel power and matches finite differences") {
  const InequalityParams params = box_params(2, 3.0, 1.0, 0);
  const RadialProfile P(params);
  for (double r : {0.05, 0.3, 0.6, 0.9}) {
    CHECK(P.slope(r) == doctest::Approx(std::pow(kernel_g(params, r), params.p_conj() - 1.0)).epsilon(1e-12));
    const double step = 1e-6;
    CHECK(P.slope(r) == doctest::Approx(-(P.exact(r + step) - P.exact(r - step)) / (2 * step)).epsilon(1e-6));
  }
}

TEST_CASE("triangle profile at d = 1, p = inf") {
  const RadialProfile P(box_params(1, kInf, 2.0, 0));
  for (double r : {0.0, 0.5, 1.7}) CHECK(P(r) == doctest::Approx(2.0 - r).epsilon(1e-14));
  CHECK(P.singular_order() == 0.0);
}

TEST_CASE("moments against quadrature") {
  const InequalityParams params = box_params(2, 5.0, 0.9, 1);
  const RadialProfile P(params);
  const double q = params.p_conj() - 1.0;
  boost::math::quadrature::tanh_sinh<double> ts;
  for (int j = 0; j <= 3; ++j) {
    for (double x : {0.2, 0.9}) {
      const double oracle =
          ts.integrate([&](double t) { return std::pow(t, j) * std::pow(kernel_g(params, t), q); }, 0.0, x);
      CHECK(P.moment(j, x) == doctest::Approx(oracle).epsilon(1e-10));
    }
  }
}

TEST_CASE("extremal sup by quadrature matches the closed form") {
  for (int d = 1; d <= 3; ++d) {
    const InequalityParams params = box_params(d, d + 1.0, 1.0, 0);
    CHECK(extremal_sup(params).value == doctest::Approx(RadialProfile(params).peak()).epsilon(1e-10));
  }
}

TEST_CASE("extremal function and its Ostrowski companion") {
  const InequalityParams params(4.0, 0.7, ConvexBody::lq_ball(2, 2.0), ConeSpec(2, 1));
  const TestFunction f = extremal_f(params);
  const TestFunction o = ostrowski_extremal(params);
  const RadialProfile P(params);
  const std::vector<double> y{0.2, -0.3};
  const double r = params.body().gauge(y);
  CHECK(f.eval(y) == doctest::Approx(P(r)).epsilon(1e-14));
  CHECK(o.eval(y) == doctest::Approx(P.peak() - P(r)).epsilon(1e-12));
  CHECK(f.eval(std::vector<double>{0.8, 0.0}) == 0.0);
  CHECK(f.support_radius == 0.7);
  CHECK(*f.sup_norm == doctest::Approx(P.peak()));
  // Gradient: finite differences and the radial gradient profile.
  std::vector<double> g(2);
  f.grad(y, g);
  for (int i = 0; i < 2; ++i) {
    auto yp = y;
    auto ym = y;
    yp[i] += 1e-6;
    ym[i] -= 1e-6;
    CHECK(g[i] == doctest::Approx((f.eval(yp) - f.eval(ym)) / 2e-6).epsilon(1e-5));
  }
  CHECK(params.body().dual_norm(g) == doctest::Approx(f.radial_gradient(r)).epsilon(1e-12));
}

TEST_CASE("box mass against tensor quadrature") {
  for (double p : {3.0, kInf}) {
    const InequalityParams params = box_params(2, p, 1.0, 0);
    const RadialProfile P(params);
    for (const std::vector<double>& b : {std::vector<double>{0.3, 0.8}, std::vector<double>{1.0, 1.0},
                                         std::vector<double>{0.55, 0.2}}) {
      const double oracle = planar_mass(P, {0.0, 0.0}, {b[0], b[1]});
      CHECK(extremal_box_mass(P, b) == doctest::Approx(oracle).epsilon(1e-10));
    }
    // Tensor cubature of f_{e,h} itself, loosely, as a second opinion.
    QuadratureOptions loose;
    loose.tol = 1e-7;
    loose.max_depth = 20;
    const std::vector<double> lo{0.0, 0.0};
    const std::vector<double> b{0.7, 0.4};
    CHECK(extremal_box_mass(P, b) == doctest::Approx(integrate_box(extremal_f(params).eval, lo, b, loose).value).epsilon(1e-6));
    // c > 0 clips the gauge from below.
    const std::vector<double> b1{0.6};
    const double c = 0.25;
    boost::math::quadrature::tanh_sinh<double> ts;
    const double oracle1 = ts.integrate([&](double u) { return P.exact(std::max(c, u)); }, 0.0, 0.25) +
                           ts.integrate([&](double u) { return P.exact(u); }, 0.25, 0.6);
    CHECK(extremal_box_mass(P, b1, c) == doctest::Approx(oracle1).epsilon(1e-10));
  }
}

TEST_CASE("antiderivative F: values and derivatives") {
  const InequalityParams params = box_params(2, 3.0, 1.0, 0);
  const TestFunction F = antiderivative_F(params);
  const TestFunction f = extremal_f(params);
  const RadialProfile P(params);
  for (const std::vector<double>& x : {std::vector<double>{0.4, -0.3}, std::vector<double>{-0.9, -0.2},
                                       std::vector<double>{1.5, 0.7}}) {
    const double oracle = planar_mass(P, {0.0, 0.0}, {x[0], x[1]});
    CHECK(F.eval(x) == doctest::Approx(oracle).epsilon(1e-10));
    std::vector<double> g(2);
    F.grad(x, g);
    for (int i = 0; i < 2; ++i) {
      auto xp = x;
      auto xm = x;
      xp[i] += 1e-5;
      xm[i] -= 1e-5;
      CHECK(g[i] == doctest::Approx((F.eval(xp) - F.eval(xm)) / 2e-5).epsilon(1e-6));
    }
  }
  REQUIRE(F.mixed_derivative);
  CHECK(F.mixed_derivative->eval(std::vector<double>{0.2, 0.1}) == doctest::Approx(f.eval(std::vector<double>{0.2, 0.1})));
  CHECK_THROWS_AS(antiderivative_F(box_params(2, 3.0, 1.0, 1)), DomainError);
}

TEST_CASE("split point: hand value and quadrature oracle") {
  const SplitPoint s = split_point_a(box_params(1, kInf, 1.0, 1));
  CHECK(s.a == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(std::abs(s.residual) <= 1e-10);

  // Bisection on tensor-quadrature masses of f_{e,h} as the oracle.
  const InequalityParams params = box_params(2, 3.0, 1.0, 1);
  const RadialProfile P(params);
  auto mass = [&](double a) { return planar_mass(P, {0.0, -1.0}, {a, 1.0}); };
  const double half = 0.5 * mass(1.0);
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) < half ? lo : hi) = mid;
  }
  const SplitPoint s2 = split_point_a(params);
  CHECK(s2.a == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
  CHECK(std::abs(s2.residual) <= 1e-10);
}

TEST_CASE("antiderivative G vanishes at the split point and differentiates to f") {
  const InequalityParams params = box_params(2, kInf, 1.0, 1);
  const TestFunction G = antiderivative_G(params);
  const double a = split_point_a(params).a;
  CHECK(G.eval(std::vector<double>{a, 0.4}) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  const std::vector<double> x{0.8, -0.5};
  CHECK(G.eval(x) == doctest::Approx(planar_mass(RadialProfile(params), {a, 0.0}, {x[0], x[1]})).epsilon(1e-10));
  std::vector<double> g(2);
  G.grad(x, g);
  for (int i = 0; i < 2; ++i) {
    auto xp = x;
    auto xm = x;
    xp[i] += 1e-5;
    xm[i] -= 1e-5;
    CHECK(g[i] == doctest::Approx((G.eval(xp) - G.eval(xm)) / 2e-5).epsilon(1e-6));
  }
  // sup |G| on the cone is attained at a corner of the stencil.
  CHECK(*G.sup_norm >= std::abs(G.eval(std::vector<double>{1.0, 1.0})) - 1e-15);
  CHECK(*G.sup_norm >= std::abs(G.eval(std::vector<double>{0.0, 1.0})) - 1e-15);
}
