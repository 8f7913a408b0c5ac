#include "lkn/extremal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "lkn/errors.hpp"

namespace lkn {
namespace {

// Cells at either end of the table that are evaluated in closed form.
constexpr int kExactCells = 8;

void require_unit_box(const InequalityParams& params, int m, const char* who) {
  if (params.body().family() != BodyFamily::box || !params.body().unit_axes()) {
    throw DomainError(std::string(who) + ": needs the unit box K = (-1,1)^d");
  }
  if (params.m() != m) {
    std::ostringstream msg;
    msg << who << ": needs m = " << m << " (got m=" << params.m() << ")";
    throw DomainError(msg.str());
  }
}

double sign_product(std::span<const double> x, int skip) {
  double s = 1.0;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    if (i == skip) continue;
    if (x[i] == 0.0) return 0.0;
    if (x[i] < 0.0) s = -s;
  }
  return s;
}

}  // namespace

RadialProfile::RadialProfile(const InequalityParams& params)
    : d_(params.d()), h_(params.h()), q_(params.p_conj() - 1.0) {
  scale_ = std::pow(d_ * params.sector_vol(), -q_);
  singular_order_ = q_ * (d_ - 1);
  beta_a_ = (1.0 - singular_order_) / d_;
  prefactor_ = q_ == 0.0 ? h_ : scale_ * std::pow(h_, 1.0 - singular_order_) / d_ * boost::math::beta(beta_a_, q_ + 1.0);
  peak_ = prefactor_;

  nodes_.resize(kNodes + 1);
  values_.resize(kNodes + 1);
  slopes_.resize(kNodes + 1);
  for (int k = 0; k <= kNodes; ++k) {
    const double xi = static_cast<double>(k) / kNodes;
    nodes_[k] = k == kNodes ? h_ : h_ * xi * xi * (3.0 - 2.0 * xi);
    values_[k] = exact(nodes_[k]);
    slopes_[k] = k == 0 ? 0.0 : -slope(nodes_[k]);
  }
  // Fritsch-Carlson limiter on the interior cells.
  for (int k = kExactCells; k < kNodes - kExactCells; ++k) {
    const double delta = (values_[k + 1] - values_[k]) / (nodes_[k + 1] - nodes_[k]);
    if (delta == 0.0) {
      slopes_[k] = slopes_[k + 1] = 0.0;
      continue;
    }
    const double a = slopes_[k] / delta;
    const double b = slopes_[k + 1] / delta;
    const double norm = a * a + b * b;
    if (norm > 9.0) {
      const double tau = 3.0 / std::sqrt(norm);
      slopes_[k] = tau * a * delta;
      slopes_[k + 1] = tau * b * delta;
    }
  }
}

double RadialProfile::exact(double r) const {
  if (r <= 0.0) return peak_;
  if (r >= h_) return 0.0;
  if (q_ == 0.0) return h_ - r;
  const double s = std::pow(r / h_, d_);
  return prefactor_ * boost::math::ibetac(beta_a_, q_ + 1.0, s);
}

double RadialProfile::slope(double r) const {
  if (r >= h_) return 0.0;
  if (q_ == 0.0) return 1.0;
  if (r <= 0.0) return singular_order_ > 0.0 ? kInf : scale_;
  const double t = r / h_;
  const double g = std::pow(r, 1.0 - d_) * (1.0 - std::pow(t, d_));
  return scale_ * std::pow(g, q_);
}

double RadialProfile::moment(int j, double x) const {
  if (x <= 0.0) return 0.0;
  x = std::min(x, h_);
  const double e = j + 1.0 - singular_order_;
  if (q_ == 0.0) return std::pow(x, j + 1) / (j + 1);
  const double a = e / d_;
  const double s = std::pow(x / h_, d_);
  return scale_ * std::pow(h_, e) / d_ * boost::math::beta(a, q_ + 1.0, s);
}

double RadialProfile::operator()(double r) const {
  if (r <= 0.0) return peak_;
  if (r >= h_) return 0.0;
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  const int k = static_cast<int>(it - nodes_.begin()) - 1;
  if (k < kExactCells || k >= kNodes - kExactCells) return exact(r);
  const double x0 = nodes_[k];
  const double dx = nodes_[k + 1] - x0;
  const double t = (r - x0) / dx;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * values_[k] + (t3 - 2 * t2 + t) * dx * slopes_[k] + (-2 * t3 + 3 * t2) * values_[k + 1] +
         (t3 - t2) * dx * slopes_[k + 1];
}

TestFunction extremal_f(const InequalityParams& params) {
  auto profile = std::make_shared<const RadialProfile>(params);
  const ConvexBody body = params.body();
  const double h = params.h();

  TestFunction f;
  std::ostringstream id;
  id << "extremal(h=" << h << ")";
  f.id = id.str();
  f.dim = params.d();
  f.eval = [profile, body](std::span<const double> y) { return (*profile)(body.gauge(y)); };
  f.grad = [profile, body, h](std::span<const double> y, std::span<double> g) {
    const double r = body.gauge(y);
    if (r <= 0.0 || r >= h) {
      std::fill(g.begin(), g.end(), 0.0);
      return;
    }
    body.gauge_gradient(y, g);
    const double s = -profile->slope(r);
    for (double& v : g) v *= s;
  };
  f.support_radius = h;
  f.smoothness = Smoothness::lipschitz;
  f.sup_norm = profile->peak();
  f.nonnegative = true;
  f.radially_decreasing = true;
  f.radial_gradient = [profile](double t) { return profile->slope(t); };
  f.radial_gradient_singularity = profile->singular_order();
  return f;
}

QuadratureResult extremal_sup(const InequalityParams& params, const QuadratureOptions& opts) {
  const RadialProfile profile(params);
  const double h = params.h();
  const int k = std::max(1, opts.radial_grading);
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double u = h * std::pow(w, k);
    return profile.slope(u) * h * k * std::pow(w, k - 1);
  };
  return integrate_interval(integrand, 0.0, 1.0, opts);
}

TestFunction ostrowski_extremal(const InequalityParams& params) {
  auto profile = std::make_shared<const RadialProfile>(params);
  const ConvexBody body = params.body();
  const double h = params.h();

  TestFunction f;
  std::ostringstream id;
  id << "ostrowski_extremal(h=" << h << ")";
  f.id = id.str();
  f.dim = params.d();
  f.eval = [profile, body](std::span<const double> y) { return profile->peak() - (*profile)(body.gauge(y)); };
  f.grad = [profile, body, h](std::span<const double> y, std::span<double> g) {
    const double r = body.gauge(y);
    if (r <= 0.0 || r >= h) {
      std::fill(g.begin(), g.end(), 0.0);
      return;
    }
    body.gauge_gradient(y, g);
    const double s = profile->slope(r);
    for (double& v : g) v *= s;
  };
  f.smoothness = Smoothness::lipschitz;
  f.sup_norm = profile->peak();
  f.nonnegative = true;
  f.radial_gradient = [profile](double t) { return profile->slope(t); };
  f.radial_gradient_singularity = profile->singular_order();
  return f;
}

double extremal_box_mass(const RadialProfile& profile, std::span<const double> b, double c) {
  const double h = profile.h();
  std::array<double, kMaxDim> sorted{};
  const int k = static_cast<int>(b.size());
  if (k > kMaxDim) throw std::invalid_argument("extremal_box_mass: too many dimensions");
  double volume = 1.0;
  for (int i = 0; i < k; ++i) {
    sorted[i] = std::clamp(b[i], 0.0, h);
    volume *= sorted[i];
  }
  if (volume == 0.0) return 0.0;
  c = std::clamp(c, 0.0, h);
  std::sort(sorted.begin(), sorted.begin() + k);
  const double top = std::max(c, k > 0 ? sorted[k - 1] : 0.0);

  double total = profile.exact(top) * volume;
  // On (sorted[i-1], sorted[i]) phi(t) = t^{k-i} * prod_{j<i} sorted[j].
  double below = 1.0;
  double lo = 0.0;
  for (int i = 0; i <= k; ++i) {
    const double hi = i < k ? sorted[i] : top;
    const double from = std::max(lo, c);
    if (hi > from) total += below * (profile.moment(k - i, hi) - profile.moment(k - i, from));
    if (i < k) {
      below *= sorted[i];
      lo = sorted[i];
    }
  }
  return total;
}

TestFunction antiderivative_F(const InequalityParams& params) {
  require_unit_box(params, 0, "antiderivative_F");
  auto profile = std::make_shared<const RadialProfile>(params);
  const int d = params.d();
  const double h = params.h();

  TestFunction f;
  std::ostringstream id;
  id << "F_extremal(h=" << h << ")";
  f.id = id.str();
  f.dim = d;
  f.eval = [profile, d, h](std::span<const double> x) {
    std::array<double, kMaxDim> b{};
    for (int i = 0; i < d; ++i) b[i] = std::min(std::abs(x[i]), h);
    const double s = sign_product(x, -1);
    if (s == 0.0) return 0.0;
    return s * extremal_box_mass(*profile, std::span<const double>(b.data(), static_cast<std::size_t>(d)));
  };
  f.grad = [profile, d, h](std::span<const double> x, std::span<double> g) {
    std::array<double, kMaxDim> rest{};
    for (int i = 0; i < d; ++i) {
      const double xi = std::abs(x[i]);
      if (xi >= h) {
        g[i] = 0.0;
        continue;
      }
      int n = 0;
      for (int j = 0; j < d; ++j) {
        if (j != i) rest[n++] = std::min(std::abs(x[j]), h);
      }
      g[i] = sign_product(x, i) *
             extremal_box_mass(*profile, std::span<const double>(rest.data(), static_cast<std::size_t>(n)), xi);
    }
  };
  std::array<double, kMaxDim> corner{};
  std::fill(corner.begin(), corner.begin() + d, h);
  const double sup = extremal_box_mass(*profile, std::span<const double>(corner.data(), static_cast<std::size_t>(d)));
  f.smoothness = Smoothness::smooth;
  f.sup_norm = sup;
  f.lipschitz = std::sqrt(static_cast<double>(d)) * profile->peak() * std::pow(h, d - 1);
  f.mixed_derivative = std::make_shared<const TestFunction>(extremal_f(params));
  return f;
}

SplitPoint split_point_a(const InequalityParams& params, double tol) {
  require_unit_box(params, 1, "split_point_a");
  const RadialProfile profile(params);
  const int d = params.d();
  const double h = params.h();
  std::array<double, kMaxDim> b{};
  std::fill(b.begin(), b.begin() + d, h);
  const std::span<const double> view(b.data(), static_cast<std::size_t>(d));
  // Masses over (0,t) x (-h,h)^{d-1}: by symmetry 2^{d-1} times the mass over
  // (0,t) x (0,h)^{d-1}.
  const double fold = std::ldexp(1.0, d - 1);
  const double half = 0.5 * fold * extremal_box_mass(profile, view);
  auto excess = [&](double t) {
    b[0] = t;
    return fold * extremal_box_mass(profile, view) - half;
  };

  double lo = 0.0;
  double hi = h;
  if (!(excess(lo) < 0.0) || !(excess(hi) > 0.0)) throw std::runtime_error("split_point_a: bracketing failed");
  SplitPoint out;
  while (hi - lo > tol * h * 1e-3 && out.iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (excess(mid) < 0.0 ? lo : hi) = mid;
    ++out.iterations;
  }
  out.a = 0.5 * (lo + hi);
  out.residual = excess(out.a);
  return out;
}

TestFunction antiderivative_G(const InequalityParams& params) {
  require_unit_box(params, 1, "antiderivative_G");
  auto profile = std::make_shared<const RadialProfile>(params);
  const int d = params.d();
  const double h = params.h();
  const double a = split_point_a(params).a;

  // Q(t, b') = mass of f_{e,h} over (0,t) x [0,b'].
  auto mass = [profile, d](double t, const std::array<double, kMaxDim>& rest) {
    std::array<double, kMaxDim> b{};
    b[0] = t;
    for (int j = 1; j < d; ++j) b[j] = rest[j];
    return extremal_box_mass(*profile, std::span<const double>(b.data(), static_cast<std::size_t>(d)));
  };

  TestFunction f;
  std::ostringstream id;
  id << "G_extremal(h=" << h << ", a=" << a << ")";
  f.id = id.str();
  f.dim = d;
  f.eval = [mass, d, h, a](std::span<const double> x) {
    std::array<double, kMaxDim> rest{};
    for (int j = 1; j < d; ++j) rest[j] = std::min(std::abs(x[j]), h);
    const double s = sign_product(x, 0);
    if (s == 0.0) return 0.0;
    const double t = std::clamp(x[0], 0.0, h);
    return s * (mass(t, rest) - mass(a, rest));
  };
  f.grad = [profile, d, h, a](std::span<const double> x, std::span<double> g) {
    std::array<double, kMaxDim> rest{};
    const double t = std::clamp(x[0], 0.0, h);
    // d/dx_1: slice of f_{e,h} at u_1 = x_1 over [0,|x'|].
    if (x[0] <= 0.0 || x[0] >= h) {
      g[0] = 0.0;
    } else {
      for (int j = 1; j < d; ++j) rest[j - 1] = std::min(std::abs(x[j]), h);
      g[0] = sign_product(x, 0) *
             extremal_box_mass(*profile, std::span<const double>(rest.data(), static_cast<std::size_t>(d - 1)), t);
    }
    for (int i = 1; i < d; ++i) {
      const double xi = std::abs(x[i]);
      if (xi >= h) {
        g[i] = 0.0;
        continue;
      }
      int n = 1;
      for (int j = 1; j < d; ++j) {
        if (j != i) rest[n++] = std::min(std::abs(x[j]), h);
      }
      const std::span<const double> view(rest.data(), static_cast<std::size_t>(n));
      double s = 1.0;
      for (int j = 1; j < d; ++j) {
        if (j == i) continue;
        if (x[j] == 0.0) s = 0.0;
        if (x[j] < 0.0) s = -s;
      }
      rest[0] = t;
      const double upper = extremal_box_mass(*profile, view, xi);
      rest[0] = a;
      const double lower = extremal_box_mass(*profile, view, xi);
      g[i] = s * (upper - lower);
    }
  };
  std::array<double, kMaxDim> full{};
  std::fill(full.begin(), full.begin() + d, h);
  const double top = mass(h, full);
  const double bottom = mass(a, full);
  f.smoothness = Smoothness::smooth;
  f.sup_norm = std::max(std::abs(bottom), std::abs(top - bottom));
  f.lipschitz = std::sqrt(static_cast<double>(d)) * profile->peak() * std::pow(h, d - 1);
  f.mixed_derivative = std::make_shared<const TestFunction>(extremal_f(params));
  return f;
}

}  // namespace lkn
