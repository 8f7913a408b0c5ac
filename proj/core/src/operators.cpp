#include "lkn/operators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "lkn/errors.hpp"

namespace lkn {

QuadratureResult steklov(const TestFunction& f, const InequalityParams& params, std::span<const double> x,
                         const QuadratureOptions& opts) {
  QuadratureResult r = integrate_sector(f, params, x, opts);
  const double norm = std::pow(params.h(), params.d()) * params.sector_vol();
  r.value /= norm;
  r.error_estimate /= norm;
  return r;
}

DifferenceScheme DifferenceScheme::for_cone(const ConeSpec& cone, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("DifferenceScheme: step must be positive");
  DifferenceScheme s;
  s.h = h;
  s.modes.assign(static_cast<std::size_t>(cone.dim), DiffMode::central);
  std::fill(s.modes.begin(), s.modes.begin() + cone.m, DiffMode::forward);
  return s;
}

DifferenceScheme DifferenceScheme::for_params(const InequalityParams& params) {
  return for_cone(params.cone(), params.h());
}

int DifferenceScheme::forward_count() const {
  return static_cast<int>(std::count(modes.begin(), modes.end(), DiffMode::forward));
}

double DifferenceScheme::normalizer() const {
  return std::ldexp(std::pow(h, dim()), dim() - forward_count());
}

double corner_sum(const TestFunction& F, const DifferenceScheme& scheme, std::span<const double> x) {
  const int d = scheme.dim();
  if (d < 1 || d > kMaxDim || static_cast<int>(x.size()) != d || F.dim != d) {
    throw std::invalid_argument("corner_sum: dimension mismatch");
  }
  // Bit i set: the "+" stencil point on axis i.
  std::array<double, kMaxDim> lower{}, upper{}, point{};
  for (int i = 0; i < d; ++i) {
    upper[i] = x[i] + scheme.h;
    lower[i] = scheme.modes[i] == DiffMode::forward ? x[i] : x[i] - scheme.h;
    point[i] = lower[i];
  }
  const std::span<const double> view(point.data(), static_cast<std::size_t>(d));
  const unsigned count = 1u << d;
  double sum = 0.0;
  unsigned previous = 0;
  for (unsigned k = 0; k < count; ++k) {
    const unsigned gray = k ^ (k >> 1);
    const unsigned changed = gray ^ previous;
    if (changed != 0) {
      const int axis = std::countr_zero(changed);
      point[axis] = (gray >> axis) & 1u ? upper[axis] : lower[axis];
    }
    previous = gray;
    // Sign is (-1)^{number of "-" points}.
    const int minus = d - std::popcount(gray);
    sum += (minus & 1) ? -F.eval(view) : F.eval(view);
  }
  return sum;
}

double mixed_difference(const TestFunction& F, const DifferenceScheme& scheme, std::span<const double> x) {
  return corner_sum(F, scheme, x) / scheme.normalizer();
}

double mixed_difference_norm(const DifferenceScheme& scheme) {
  return std::ldexp(std::pow(scheme.h, -scheme.dim()), scheme.forward_count());
}

TestFunction sign_corner_witness(const DifferenceScheme& scheme, std::span<const double> x) {
  const int d = scheme.dim();
  std::vector<double> centre(x.begin(), x.end());
  for (int i = 0; i < d; ++i) {
    if (scheme.modes[i] == DiffMode::forward) centre[i] += 0.5 * scheme.h;
  }
  TestFunction f;
  f.id = "sign_corner_witness";
  f.dim = d;
  f.eval = [centre](std::span<const double> y) {
    double s = 1.0;
    for (std::size_t i = 0; i < centre.size(); ++i) {
      if (y[i] < centre[i]) s = -s;
    }
    return s;
  };
  f.grad = [](std::span<const double>, std::span<double> g) { std::fill(g.begin(), g.end(), 0.0); };
  f.smoothness = Smoothness::lipschitz;
  f.sup_norm = 1.0;
  return f;
}

FubiniCheck fubini_identity_check(const TestFunction& f, const InequalityParams& params, std::span<const double> x,
                                  const QuadratureOptions& opts) {
  if (!f.mixed_derivative) throw std::invalid_argument("fubini_identity_check: '" + f.id + "' has no mixed derivative");
  if (params.body().family() != BodyFamily::box || !params.body().unit_axes()) {
    throw DomainError("fubini_identity_check: needs the unit box K = (-1,1)^d");
  }
  FubiniCheck out;
  const QuadratureResult r = integrate_sector(*f.mixed_derivative, params, x, opts);
  out.integral = r.value;
  out.quad_error = r.error_estimate;
  out.corners = corner_sum(f, DifferenceScheme::for_params(params), x);
  out.residual = std::abs(out.integral - out.corners);
  return out;
}

}  // namespace lkn
