#include "lkn/registry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "lkn/errors.hpp"
#include "lkn/extremal.hpp"

namespace lkn {
namespace {

double ipow(double z, int n) {
  if (n < 0) return 0.0;
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

// exp(1/(z^2-1)) and its first two z-derivatives.
std::array<double, 3> bump_jet(double z) {
  if (!(std::abs(z) < 1.0)) return {0.0, 0.0, 0.0};
  const double w = z * z - 1.0;
  const double psi1 = -2.0 * z / (w * w);
  const double psi2 = (6.0 * z * z + 2.0) / (w * w * w);
  const double b = std::exp(1.0 / w);
  return {b, psi1 * b, (psi2 + psi1 * psi1) * b};
}

std::string factor_label(const Factor& f) {
  std::ostringstream out;
  out << to_string(f.kind) << "(";
  if (f.kind != FactorKind::monomial) out << "c=" << f.center << ",r=" << f.radius;
  if (f.kind != FactorKind::bump) out << (f.kind == FactorKind::poly_bump ? ",k=" : "k=") << f.power;
  out << ")";
  return out.str();
}

struct FactorSet {
  std::vector<Factor> factors;

  // Fills jets[i] for every axis.
  void jets(std::span<const double> x, std::array<std::array<double, 3>, kMaxDim>& out) const {
    for (std::size_t i = 0; i < factors.size(); ++i) out[i] = factors[i].jet(x[i]);
  }
};

// Product of jets[i][order[i]], skipping axis `skip`.
double product(const std::array<std::array<double, 3>, kMaxDim>& jets, int d, int order, int skip) {
  double p = 1.0;
  for (int i = 0; i < d; ++i) {
    if (i != skip) p *= jets[i][order];
  }
  return p;
}

double product_lipschitz(const std::vector<double>& sup_value, const std::vector<double>& sup_slope) {
  const int d = static_cast<int>(sup_value.size());
  double sum = 0.0;
  for (int j = 0; j < d; ++j) {
    double term = sup_slope[j];
    for (int i = 0; i < d; ++i) {
      if (i != j) term *= sup_value[i];
    }
    sum += term * term;
  }
  return std::sqrt(sum);
}

// Sign changes of the given jet component on (lo, hi): scan, then bisect.
std::vector<double> sign_changes(const Factor& f, int order, double lo, double hi) {
  constexpr int kSamples = 2001;
  auto sign = [&](double x) {
    const double v = f.jet(x)[order];
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
  };
  std::vector<double> out;
  double prev_x = lo;
  int prev = 0;
  for (int i = 1; i < kSamples; ++i) {
    const double x = lo + (hi - lo) * i / (kSamples - 1);
    const int s = sign(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) {
      double a = prev_x;
      double b = x;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        (sign(mid) == prev ? a : b) = mid;
      }
      out.push_back(0.5 * (a + b));
    }
    prev = s;
    prev_x = x;
  }
  return out;
}

// Break points of |grad| for the product of jet[order] factors.
std::vector<double> axis_breaks(const Factor& f, int order) {
  const double lo = f.center - f.radius;
  const double hi = f.center + f.radius;
  std::vector<double> out = sign_changes(f, order, lo, hi);
  const std::vector<double> more = sign_changes(f, order + 1, lo, hi);
  out.insert(out.end(), more.begin(), more.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string to_string(FactorKind kind) {
  switch (kind) {
    case FactorKind::bump: return "bump";
    case FactorKind::poly_bump: return "poly_bump";
    case FactorKind::monomial: return "monomial";
  }
  return "?";
}

std::array<double, 3> Factor::jet(double x) const {
  switch (kind) {
    case FactorKind::monomial: {
      const double k = power;
      return {ipow(x, power), k * ipow(x, power - 1), k * (k - 1.0) * ipow(x, power - 2)};
    }
    case FactorKind::bump: {
      const auto b = bump_jet((x - center) / radius);
      return {b[0], b[1] / radius, b[2] / (radius * radius)};
    }
    case FactorKind::poly_bump: {
      const double z = (x - center) / radius;
      const auto b = bump_jet(z);
      const int k = power;
      const double u0 = ipow(z, k) * b[0];
      const double u1 = k * ipow(z, k - 1) * b[0] + ipow(z, k) * b[1];
      const double u2 = k * (k - 1.0) * ipow(z, k - 2) * b[0] + 2.0 * k * ipow(z, k - 1) * b[1] + ipow(z, k) * b[2];
      return {ipow(radius, k) * u0, ipow(radius, k - 1) * u1, std::pow(radius, k - 2) * u2};
    }
  }
  return {0.0, 0.0, 0.0};
}

double Factor::sup_abs(int order, bool positive_only) const {
  if (kind == FactorKind::monomial) {
    if (order > power) return 0.0;
    if (order == power) {
      double v = 1.0;
      for (int i = 2; i <= power; ++i) v *= i;
      return v;
    }
    return kInf;
  }
  double lo = center - radius;
  const double hi = center + radius;
  if (positive_only) lo = std::max(lo, 0.0);
  if (!(hi > lo)) return 0.0;
  if (kind == FactorKind::bump && order == 0 && lo < center) return std::exp(-1.0);

  auto value = [&](double x) { return std::abs(jet(x)[order]); };
  constexpr int kSamples = 4001;
  const double step = (hi - lo) / (kSamples - 1);
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < kSamples; ++i) {
    const double v = value(lo + i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double a = lo + std::max(best - 1, 0) * step;
  double b = lo + std::min(best + 1, kSamples - 1) * step;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a);
  double e = a + phi * (b - a);
  double fc = value(c);
  double fe = value(e);
  for (int it = 0; it < 80; ++it) {
    if (fc > fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - phi * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + phi * (b - a);
      fe = value(e);
    }
  }
  return std::max({best_value, fc, fe});
}

TestFunction product_function(const std::vector<Factor>& factors, const ConvexBody& body, const ConeSpec& cone) {
  const int d = body.dim();
  if (static_cast<int>(factors.size()) != d || cone.dim != d) {
    throw std::invalid_argument("product_function: need one factor per axis");
  }
  for (const Factor& f : factors) {
    if (f.kind != FactorKind::monomial && !(f.radius > 0.0)) throw DomainError("product_function: radius must be positive");
    if (f.power < 0) throw DomainError("product_function: power must be nonnegative");
  }
  auto set = std::make_shared<const FactorSet>(FactorSet{factors});

  std::vector<double> sup0(d), sup1(d), sup2(d);
  bool compact = true;
  bool nonnegative = true;
  std::vector<double> corner(d);
  for (int i = 0; i < d; ++i) {
    const Factor& f = factors[i];
    const bool positive = i < cone.m;
    sup0[i] = f.sup_abs(0, positive);
    sup1[i] = f.sup_abs(1, positive);
    sup2[i] = f.sup_abs(2, positive);
    compact = compact && f.compact();
    nonnegative = nonnegative && (f.kind == FactorKind::bump || f.power % 2 == 0);
    if (f.compact()) corner[i] = std::max(std::abs(f.center - f.radius), std::abs(f.center + f.radius));
  }
  auto product_of = [](const std::vector<double>& v) {
    double p = 1.0;
    for (double x : v) p *= x;
    return p;
  };

  std::ostringstream id;
  for (int i = 0; i < d; ++i) id << (i ? "*" : "") << factor_label(factors[i]);

  TestFunction f;
  f.id = id.str();
  f.dim = d;
  f.eval = [set, d](std::span<const double> x) {
    double p = 1.0;
    for (int i = 0; i < d && p != 0.0; ++i) p *= set->factors[i].jet(x[i])[0];
    return p;
  };
  f.grad = [set, d](std::span<const double> x, std::span<double> g) {
    std::array<std::array<double, 3>, kMaxDim> jets{};
    set->jets(x, jets);
    for (int j = 0; j < d; ++j) g[j] = jets[j][1] * product(jets, d, 0, j);
  };
  f.support_radius = compact ? body.gauge(corner) : kInf;
  f.smoothness = Smoothness::smooth;
  f.sup_norm = product_of(sup0);
  f.nonnegative = nonnegative;
  if (std::isfinite(product_lipschitz(sup0, sup1))) f.lipschitz = product_lipschitz(sup0, sup1);
  if (compact) {
    for (int i = 0; i < d; ++i) {
      f.factors.push_back([set, i](double t) { return set->factors[i].jet(t)[0]; });
      f.factor_support.push_back({factors[i].center - factors[i].radius, factors[i].center + factors[i].radius});
      f.axis_breaks.push_back(axis_breaks(factors[i], 0));
    }
  }

  auto mixed = std::make_shared<TestFunction>();
  mixed->id = "mixed[" + f.id + "]";
  mixed->dim = d;
  mixed->eval = [set, d](std::span<const double> x) {
    double p = 1.0;
    for (int i = 0; i < d && p != 0.0; ++i) p *= set->factors[i].jet(x[i])[1];
    return p;
  };
  mixed->grad = [set, d](std::span<const double> x, std::span<double> g) {
    std::array<std::array<double, 3>, kMaxDim> jets{};
    set->jets(x, jets);
    for (int j = 0; j < d; ++j) g[j] = jets[j][2] * product(jets, d, 1, j);
  };
  mixed->support_radius = f.support_radius;
  mixed->smoothness = Smoothness::smooth;
  mixed->sup_norm = product_of(sup1);
  if (std::isfinite(product_lipschitz(sup1, sup2))) mixed->lipschitz = product_lipschitz(sup1, sup2);
  if (compact) {
    mixed->factor_support = f.factor_support;
    for (int i = 0; i < d; ++i) {
      mixed->factors.push_back([set, i](double t) { return set->factors[i].jet(t)[1]; });
      mixed->axis_breaks.push_back(axis_breaks(factors[i], 1));
    }
  }
  f.mixed_derivative = std::move(mixed);
  return f;
}

TestFunction tensor_bump(const InequalityParams& params, double center, double radius) {
  return product_function(std::vector<Factor>(params.d(), Factor{FactorKind::bump, center, radius, 0}), params.body(),
                          params.cone());
}

TestFunction tensor_poly_bump(const InequalityParams& params, double center, double radius, int power) {
  return product_function(std::vector<Factor>(params.d(), Factor{FactorKind::poly_bump, center, radius, power}),
                          params.body(), params.cone());
}

TestFunction monomial_product(const InequalityParams& params, int power) {
  return product_function(std::vector<Factor>(params.d(), Factor{FactorKind::monomial, 0.0, 1.0, power}),
                          params.body(), params.cone());
}

TestFunction random_registry_function(const InequalityParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Factor> factors(params.d());
  for (int i = 0; i < params.d(); ++i) {
    Factor& f = factors[i];
    f.radius = 0.3 + 0.7 * unit(rng);
    const double pick = unit(rng);
    f.kind = pick < 0.7 ? FactorKind::bump : FactorKind::poly_bump;
    f.power = f.kind == FactorKind::bump ? 0 : (pick < 0.85 ? 1 : 2);
    f.center = i < params.m() ? f.radius * (1.0 + unit(rng)) : unit(rng) - 0.5;
  }
  TestFunction f = product_function(factors, params.body(), params.cone());
  const double lambda = 0.5 + 1.5 * unit(rng);
  TestFunction out = scaled(f, lambda);
  std::ostringstream id;
  id << "random(seed=" << seed << "):" << out.id;
  out.id = id.str();
  return out;
}

TestFunction make_function(const FunctionSpec& spec, const InequalityParams& params) {
  const InequalityParams own = spec.h0 > 0.0 ? params.with_h(spec.h0) : params;
  TestFunction f;
  if (spec.name == "extremal") {
    f = extremal_f(own);
  } else if (spec.name == "ostrowski_extremal") {
    f = ostrowski_extremal(own);
  } else if (spec.name == "F") {
    f = antiderivative_F(own);
  } else if (spec.name == "G") {
    f = antiderivative_G(own);
  } else if (spec.name == "bump") {
    f = tensor_bump(params, spec.center, spec.radius);
  } else if (spec.name == "poly_bump") {
    f = tensor_poly_bump(params, spec.center, spec.radius, spec.power);
  } else if (spec.name == "monomial") {
    f = monomial_product(params, spec.power);
  } else {
    throw std::invalid_argument("unknown function '" + spec.name + "'");
  }
  return spec.scale == 1.0 ? f : scaled(f, spec.scale);
}

std::vector<std::string> registry_names() {
  return {"extremal", "ostrowski_extremal", "F", "G", "bump", "poly_bump", "monomial"};
}

}  // namespace lkn
