#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lkn/geometry.hpp"

using namespace lkn;

namespace {

// Brute force: the dual norm of a box is attained at a vertex.
double box_dual_by_vertices(const std::vector<double>& s, const std::vector<double>& z) {
  const int d = static_cast<int>(s.size());
  double best = -1e300;
  for (int mask = 0; mask < (1 << d); ++mask) {
    double v = 0.0;
    for (int i = 0; i < d; ++i) v += ((mask >> i) & 1 ? s[i] : -s[i]) * z[i];
    best = std::max(best, v);
  }
  return best;
}

// Bisection on lambda for x/lambda on the boundary, using only membership.
double gauge_by_membership(const ConvexBody& body, const std::vector<double>& x) {
  auto inside = [&](double lambda) {
    double sum = 0.0;
    double mx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = std::abs(x[i]) / (lambda * body.semi_axes()[i]);
      mx = std::max(mx, r);
      sum += std::pow(r, body.q() > 0 ? body.q() : 1.0);
    }
    return body.family() == BodyFamily::box ? mx <= 1.0 : sum <= 1.0;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (!inside(hi)) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

TEST_CASE("box gauge and dual norm against vertex enumeration") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<double> s{0.5, 1.0, 2.0};
  const ConvexBody body = ConvexBody::box(3, s);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x{u(rng), u(rng), u(rng)};
    CHECK(body.gauge(x) == doctest::Approx(gauge_by_membership(body, x)).epsilon(1e-12));
    CHECK(body.dual_norm(x) == doctest::Approx(box_dual_by_vertices(s, x)).epsilon(1e-12));
  }
}

TEST_CASE("lq gauge matches membership bisection") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (double q : {1.0, 1.5, 2.0, 4.0}) {
    const ConvexBody body = ConvexBody::lq_ball(2, q, {1.0, 0.7});
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> x{u(rng), u(rng)};
      CHECK(body.gauge(x) == doctest::Approx(gauge_by_membership(body, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("dual norm is the sup of <x,z> over the unit sphere") {
  // Angular sweep of the boundary as an independent lower bound, tight to
  // the sweep resolution.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double q : {1.0, 2.0, 3.0}) {
    const ConvexBody body = ConvexBody::lq_ball(2, q, {1.3, 0.6});
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<double> z{u(rng), u(rng)};
      double best = 0.0;
      for (int k = 0; k < 20000; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 20000;
        std::vector<double> x{std::cos(th), std::sin(th)};
        const double g = body.gauge(x);
        best = std::max(best, (x[0] * z[0] + x[1] * z[1]) / g);
      }
      CHECK(body.dual_norm(z) == doctest::Approx(best).epsilon(1e-6));
      std::vector<double> sp(2);
      body.support_point(z, sp);
      CHECK(body.gauge(sp) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sp[0] * z[0] + sp[1] * z[1] == doctest::Approx(body.dual_norm(z)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gauge gradient matches finite differences and lies on the dual sphere") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const ConvexBody& body : {ConvexBody::box(3, {1.0, 2.0, 0.5}), ConvexBody::lq_ball(3, 3.0, {1.0, 2.0, 0.5})}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<double> x{u(rng), u(rng), u(rng)};
      std::vector<double> g(3);
      body.gauge_gradient(x, g);
      CHECK(body.dual_norm(g) == doctest::Approx(1.0).epsilon(1e-12));
      for (int i = 0; i < 3; ++i) {
        const double step = 1e-6;
        auto xp = x;
        auto xm = x;
        xp[i] += step;
        xm[i] -= step;
        CHECK(g[i] == doctest::Approx((body.gauge(xp) - body.gauge(xm)) / (2 * step)).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("volumes") {
  CHECK(ConvexBody::box(3, {1.0, 2.0, 0.5}).volume() == doctest::Approx(8.0));
  CHECK(ConvexBody::lq_ball(2, 2.0).volume() == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(ConvexBody::lq_ball(3, 2.0).volume() == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
  CHECK(ConvexBody::lq_ball(2, 1.0, {2.0, 1.0}).volume() == doctest::Approx(4.0).epsilon(1e-14));
  for (int d = 1; d <= 4; ++d) {
    for (int m = 0; m <= d; ++m) {
      CHECK(sector_volume(ConvexBody::box(d), ConeSpec(d, m)) == std::ldexp(1.0, d - m));
    }
  }
}

TEST_CASE("sector volume against low-discrepancy rejection sampling") {
  for (double q : {1.0, 2.0, 3.5}) {
    const ConvexBody body = ConvexBody::lq_ball(3, q, {1.0, 0.5, 1.5});
    const ConeSpec cone(3, 2);
    const SectorSample sample = sample_sector(body, cone, 1.0, 200000, 42);
    CHECK(sample.volume_estimate() == doctest::Approx(sector_volume(body, cone)).epsilon(5e-3));
    for (std::size_t i = 0; i < sample.size(); i += 997) {
      CHECK(body.gauge(sample.point(i)) < 1.0);
      CHECK(cone.contains(sample.point(i)));
    }
  }
}

TEST_CASE("sampling is deterministic per seed") {
  const ConvexBody body = ConvexBody::box(2);
  const ConeSpec cone(2, 1);
  const SectorSample a = sample_sector(body, cone, 0.5, 100, 9);
  const SectorSample b = sample_sector(body, cone, 0.5, 100, 9);
  const SectorSample c = sample_sector(body, cone, 0.5, 100, 10);
  CHECK(a.coords == b.coords);
  CHECK(a.coords != c.coords);
}

TEST_CASE("cone membership and invalid input") {
  const ConeSpec cone(3, 2);
  CHECK(cone.contains(std::vector<double>{0.1, 0.2, -5.0}));
  CHECK_FALSE(cone.contains(std::vector<double>{-0.1, 0.2, 0.0}));
  CHECK(cone.orthant_count() == 2);
  CHECK_THROWS(ConeSpec(2, 3));
  CHECK_THROWS(ConvexBody::lq_ball(2, 0.5));
  CHECK_THROWS(ConvexBody::box(2, {1.0, -1.0}));
}
