#include "lkn/certify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "lkn/errors.hpp"
#include "lkn/extremal.hpp"
#include "lkn/operators.hpp"

namespace lkn {
namespace {

// L_p norm of |grad f|_{K°} over radius * K ∩ C for products on box bodies:
// the integrand is smooth on each sub-box cut at the axis breaks.
std::optional<NormEstimate> piecewise_gradient_norm(const TestFunction& f, const InequalityParams& params,
                                                    double radius, const QuadratureOptions& quad) {
  const ConvexBody& body = params.body();
  const int d = params.d();
  const double p = params.p();
  if (body.family() != BodyFamily::box || std::isinf(p) || f.axis_breaks.size() != static_cast<std::size_t>(d) ||
      f.factor_support.size() != static_cast<std::size_t>(d)) {
    return std::nullopt;
  }
  std::vector<std::vector<double>> cuts(d);
  for (int i = 0; i < d; ++i) {
    const double s = body.semi_axes()[i];
    const double lo = std::max(i < params.m() ? 0.0 : -radius * s, f.factor_support[i][0]);
    const double hi = std::min(radius * s, f.factor_support[i][1]);
    NormEstimate zero;
    if (!(lo < hi)) return zero;
    cuts[i].push_back(lo);
    for (double t : f.axis_breaks[i]) {
      if (t > lo && t < hi) cuts[i].push_back(t);
    }
    cuts[i].push_back(hi);
  }

  const ScalarField field = gradient_dual_norm_field(f, body);
  auto power = [&field, p](std::span<const double> x) {
    const double v = std::abs(field(x));
    return v == 0.0 ? 0.0 : std::pow(v, p);
  };
  double sum = 0.0;
  double err = 0.0;
  std::size_t evaluations = 0;
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> lo(d), hi(d);
  while (true) {
    for (int i = 0; i < d; ++i) {
      lo[i] = cuts[i][idx[i]];
      hi[i] = cuts[i][idx[i] + 1];
    }
    const QuadratureResult r = integrate_box(ScalarField(power), lo, hi, quad);
    sum += r.value;
    err += r.error_estimate;
    evaluations += r.evaluations;
    int k = 0;
    while (k < d && ++idx[k] + 1 == cuts[k].size()) idx[k++] = 0;
    if (k == d) break;
  }
  NormEstimate out;
  out.evaluations = evaluations;
  if (sum > 0.0) {
    out.value = std::pow(sum, 1.0 / p);
    out.error_estimate = out.value * err / (p * sum);
  }
  return out;
}

Certificate start(InequalityId id, const TestFunction& f, const InequalityParams& params, const CertifyOptions& opts) {
  Certificate c;
  c.inequality = id;
  c.params = params;
  c.function_id = f.id;
  c.holds_slack = opts.holds_slack;
  c.sharpness_tol = opts.sharpness_tol;
  c.quad_tol = opts.quad.tol;
  c.max_depth = opts.quad.max_depth;
  c.seed = opts.seed;
  return c;
}

void require_compact(const TestFunction& f, const char* who) {
  if (!f.compactly_supported()) throw DomainError(std::string(who) + ": '" + f.id + "' has unbounded support");
}

void require_unit_box(const InequalityParams& params, const char* who) {
  if (params.body().family() != BodyFamily::box || !params.body().unit_axes()) {
    throw DomainError(std::string(who) + ": needs the unit box K = (-1,1)^d");
  }
}

std::vector<double> origin(int d) { return std::vector<double>(static_cast<std::size_t>(d), 0.0); }

SeminormOptions seminorm_options(const CertifyOptions& opts) {
  SeminormOptions s = opts.seminorm;
  s.quad = opts.quad;
  return s;
}

// ⌋f⌈_h, or ||f||_{L_1(C)} when requested.
SeminormEstimate seminorm_for(const TestFunction& f, const InequalityParams& params, bool sup_over_h,
                              const CertifyOptions& opts) {
  if (opts.l1_seminorm) {
    if (!f.nonnegative) throw DomainError("L1 substitution needs a nonnegative function");
    const QuadratureResult r = integrate_sector(f.eval, params.body(), params.cone(), f.support_radius,
                                                origin(params.d()), opts.quad);
    SeminormEstimate s;
    s.value = std::abs(r.value);
    s.error_estimate = r.error_estimate;
    s.evaluations = r.evaluations;
    s.maximizer = origin(params.d());
    s.exact_maximizer = true;
    s.h_at_max = kInf;
    return s;
  }
  return sup_over_h ? seminorm_sup(f, params, seminorm_options(opts)) : seminorm_h(f, params, seminorm_options(opts));
}

double golden_max(const std::function<double(double)>& f, double a, double b, int samples) {
  const double step = (b - a) / (samples - 1);
  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < samples; ++i) {
    const double v = f(a + i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = a + std::max(best - 1, 0) * step;
  double hi = a + std::min(best + 1, samples - 1) * step;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double c = hi - phi * (hi - lo);
    const double e = lo + phi * (hi - lo);
    const double fc = f(c);
    const double fe = f(e);
    best_value = std::max({best_value, fc, fe});
    (fc > fe ? hi : lo) = fc > fe ? e : c;
  }
  return best_value;
}

}  // namespace

std::string to_string(InequalityId id) {
  switch (id) {
    case InequalityId::ostrowski: return "ostrowski";
    case InequalityId::nagy_additive: return "nagy_additive";
    case InequalityId::nagy_multiplicative: return "nagy_multiplicative";
    case InequalityId::charge_additive: return "charge_additive";
    case InequalityId::charge_multiplicative: return "charge_multiplicative";
    case InequalityId::mixed_additive: return "mixed_additive";
    case InequalityId::mixed_multiplicative: return "mixed_multiplicative";
    case InequalityId::operator_bound: return "operator_bound";
  }
  return "?";
}

InequalityId inequality_from_string(const std::string& name) {
  for (InequalityId id : {InequalityId::ostrowski, InequalityId::nagy_additive, InequalityId::nagy_multiplicative,
                          InequalityId::charge_additive, InequalityId::charge_multiplicative,
                          InequalityId::mixed_additive, InequalityId::mixed_multiplicative,
                          InequalityId::operator_bound}) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown inequality '" + name + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality_within_tol: return "equality_within_tol";
    case Verdict::violated: return "violated";
  }
  return "?";
}

std::string to_string(OperatorInstance instance) {
  switch (instance) {
    case OperatorInstance::function: return "function";
    case OperatorInstance::charge: return "charge";
    case OperatorInstance::mixed: return "mixed";
  }
  return "?";
}

OperatorInstance operator_instance_from_string(const std::string& name) {
  if (name == "function") return OperatorInstance::function;
  if (name == "charge") return OperatorInstance::charge;
  if (name == "mixed") return OperatorInstance::mixed;
  throw std::invalid_argument("unknown operator instance '" + name + "' (expected function, charge or mixed)");
}

std::optional<double> Certificate::term(const std::string& name) const {
  for (const auto& [key, value] : rhs_terms) {
    if (key == name) return value;
  }
  return std::nullopt;
}

void decide(Certificate& cert, bool allow_equality) {
  if (cert.rhs == 0.0) {
    cert.ratio = cert.lhs == 0.0 ? 0.0 : kInf;
  } else {
    cert.ratio = cert.lhs / cert.rhs;
  }
  if (cert.lhs > cert.rhs * (1.0 + cert.holds_slack) + cert.quad_error) {
    cert.verdict = Verdict::violated;
  } else if (allow_equality && cert.rhs > 0.0 && std::abs(cert.ratio - 1.0) <= cert.sharpness_tol) {
    cert.verdict = Verdict::equality_within_tol;
  } else {
    cert.verdict = Verdict::holds;
  }
}

NormEstimate sup_norm(const TestFunction& f, const InequalityParams& params, const CertifyOptions& opts) {
  if (f.sup_norm) {
    NormEstimate out;
    out.value = *f.sup_norm;
    return out;
  }
  require_compact(f, "sup_norm");
  NormOptions n = opts.norm;
  n.seed = opts.seed;
  n.lipschitz = f.lipschitz;
  NormEstimate out = sup_estimate(f.eval, params.body(), params.cone(), f.support_radius, n);
  out.error_estimate = out.inflation;
  return out;
}

NormEstimate gradient_norm(const TestFunction& f, const InequalityParams& params, double radius,
                           const CertifyOptions& opts) {
  if (!std::isfinite(radius)) throw DomainError("gradient_norm: '" + f.id + "' has unbounded support");
  const double p = params.p();
  NormEstimate out;
  if (f.radial_gradient) {
    if (std::isinf(p)) {
      out.value = golden_max(f.radial_gradient, radius * 1e-9, radius * (1.0 - 1e-12), 2001);
      return out;
    }
    const QuadratureResult r =
        radial_integral(f.radial_gradient, params.with_h(radius), p, f.radial_gradient_singularity);
    out.evaluations = r.evaluations;
    if (r.value > 0.0) {
      out.value = std::pow(r.value, 1.0 / p);
      out.error_estimate = out.value * r.error_estimate / (p * r.value);
    }
    return out;
  }
  if (!f.grad) throw std::invalid_argument("gradient_norm: '" + f.id + "' has no gradient");
  {
    QuadratureOptions q = opts.quad;
    q.best_effort = true;
    if (auto piecewise = piecewise_gradient_norm(f, params, radius, q)) return *piecewise;
  }
  NormOptions n = opts.norm;
  n.quad = opts.quad;
  // |grad f|_{K°} has kinks wherever a gradient component changes sign, and
  // tensor cubature converges slowly across them; 1e-6 is reachable.
  n.quad.tol = std::max(opts.quad.tol, 1e-6);
  // In d >= 3 even that can be out of reach; the unconverged error estimate
  // then goes into the certificate.
  n.quad.max_evaluations = std::min<std::size_t>(n.quad.max_evaluations, 4'000'000);
  n.quad.best_effort = true;
  n.seed = opts.seed;
  return lp_norm(gradient_dual_norm_field(f, params.body()), params.body(), params.cone(), p, radius, n);
}

Certificate certify_ostrowski(const TestFunction& f, const InequalityParams& params, const CertifyOptions& opts) {
  Certificate c = start(InequalityId::ostrowski, f, params, opts);
  const std::vector<double> x0 = origin(params.d());
  const double value = f.eval(x0);
  const QuadratureResult average = steklov(f, params, x0, opts.quad);
  const NormEstimate grad = gradient_norm(f, params, params.h(), opts);
  const double kernel = kernel_norm(params);

  c.lhs = std::abs(value - average.value);
  c.rhs = kernel * grad.value;
  c.quad_error = average.error_estimate + kernel * grad.error_estimate;
  c.rhs_terms = {{"kernel_norm", kernel},
                 {"grad_norm", grad.value},
                 {"f_at_origin", value},
                 {"steklov_average", average.value}};
  decide(c);
  return c;
}

Certificate certify_nagy_additive(const TestFunction& f, const InequalityParams& params, const CertifyOptions& opts) {
  require_compact(f, "certify_nagy_additive");
  Certificate c = start(InequalityId::nagy_additive, f, params, opts);
  const NormEstimate sup = sup_norm(f, params, opts);
  const NormEstimate grad = gradient_norm(f, params, f.support_radius, opts);
  const SeminormEstimate semi = seminorm_for(f, params, false, opts);
  const double kernel = kernel_norm(params);
  const double factor = 1.0 / (params.sector_vol() * std::pow(params.h(), params.d()));

  c.lhs = sup.value;
  c.rhs = kernel * grad.value + factor * semi.value;
  c.quad_error = sup.error_estimate + kernel * grad.error_estimate + factor * semi.error_estimate;
  c.rhs_terms = {{"kernel_norm", kernel},
                 {"grad_norm", grad.value},
                 {"kernel_term", kernel * grad.value},
                 {"seminorm_factor", factor},
                 {"seminorm", semi.value},
                 {"seminorm_term", factor * semi.value}};
  decide(c);
  return c;
}

Certificate certify_nagy_multiplicative(const TestFunction& f, const InequalityParams& params,
                                        const CertifyOptions& opts) {
  require_compact(f, "certify_nagy_multiplicative");
  Certificate c = start(InequalityId::nagy_multiplicative, f, params, opts);
  const int d = params.d();
  const double p = params.p();
  const double mu = params.sector_vol();
  const NormEstimate sup = sup_norm(f, params, opts);
  const NormEstimate grad = gradient_norm(f, params, f.support_radius, opts);
  const SeminormEstimate semi = seminorm_for(f, params, true, opts);
  const double alpha = alpha_exponent(d, p);

  c.lhs = sup.value;
  c.rhs_terms = {{"constant_a", constant_a(d, p)},
                 {"alpha", alpha},
                 {"sector_vol", mu},
                 {"seminorm", semi.value},
                 {"grad_norm", grad.value}};
  if (grad.value == 0.0 || semi.value == 0.0) {
    if (sup.value > 0.0) {
      throw DomainError("certify_nagy_multiplicative: zero gradient or seminorm for a nonzero function; the "
                        "multiplicative form is degenerate");
    }
    c.rhs = 0.0;
    c.quad_error = sup.error_estimate;
    decide(c);
    return c;
  }
  c.rhs = multiplicative_nagy_rhs(d, p, mu, semi.value, grad.value);
  c.quad_error = sup.error_estimate +
                 c.rhs * ((1.0 - alpha) * semi.error_estimate / semi.value + alpha * grad.error_estimate / grad.value);
  const double h_star = optimal_h(d, p, mu, semi.value, grad.value);
  const double additive = additive_nagy_rhs(d, p, mu, h_star, semi.value, grad.value);
  // Infinite for the L1 limit; omitted then.
  if (std::isfinite(semi.h_at_max)) c.rhs_terms.emplace_back("seminorm_h_at_max", semi.h_at_max);
  c.rhs_terms.emplace_back("optimal_h", h_star);
  c.rhs_terms.emplace_back("additive_rhs_at_optimal_h", additive);
  c.rhs_terms.emplace_back("balance_residual", std::abs(additive - c.rhs) / c.rhs);
  decide(c);
  return c;
}

Certificate certify_charge(const ChargeDensity& nu, const InequalityParams& params, Form form,
                           const CertifyOptions& opts) {
  Certificate c = form == Form::additive ? certify_nagy_additive(nu.density, params, opts)
                                         : certify_nagy_multiplicative(nu.density, params, opts);
  c.inequality = form == Form::additive ? InequalityId::charge_additive : InequalityId::charge_multiplicative;
  return c;
}

Certificate certify_mixed(const TestFunction& f, const InequalityParams& params, Form form,
                          const CertifyOptions& opts) {
  require_unit_box(params, "certify_mixed");
  if (!f.mixed_derivative) throw DomainError("certify_mixed: '" + f.id + "' has no closed-form mixed derivative");
  const TestFunction& mixed = *f.mixed_derivative;
  require_compact(mixed, "certify_mixed");
  Certificate c =
      start(form == Form::additive ? InequalityId::mixed_additive : InequalityId::mixed_multiplicative, f, params, opts);
  const int d = params.d();
  const int m = params.m();
  const double p = params.p();
  const double h = params.h();

  const NormEstimate lhs = sup_norm(mixed, params, opts);
  const NormEstimate grad = gradient_norm(mixed, params, mixed.support_radius, opts);
  if (!f.sup_norm && !f.compactly_supported()) throw DomainError("certify_mixed: sup of '" + f.id + "' is unknown");
  const NormEstimate sup_f = sup_norm(f, params, opts);
  if (!std::isfinite(sup_f.value)) throw DomainError("certify_mixed: '" + f.id + "' is unbounded");
  const double d_over_p = std::isinf(p) ? 0.0 : d / p;
  c.lhs = lhs.value;

  if (form == Form::additive) {
    const double kernel = constant_A(d, p) * std::pow(h, 1.0 - d_over_p) * std::exp2((m - d) * (std::isinf(p) ? 0.0 : 1.0 / p));
    const double op_norm = std::ldexp(std::pow(h, -d), m);
    c.rhs = kernel * grad.value + op_norm * sup_f.value;
    c.quad_error = lhs.error_estimate + kernel * grad.error_estimate + op_norm * sup_f.error_estimate;
    c.rhs_terms = {{"kernel_norm", kernel},
                   {"grad_norm", grad.value},
                   {"kernel_term", kernel * grad.value},
                   {"operator_norm", op_norm},
                   {"sup_f", sup_f.value},
                   {"sup_term", op_norm * sup_f.value}};
  } else {
    const double alpha = alpha_exponent(d, p);
    const double constant = constant_a(d, p) * std::exp2(alpha * (static_cast<double>(m) / d - d_over_p));
    c.rhs_terms = {{"constant_a", constant_a(d, p)},
                   {"alpha", alpha},
                   {"constant", constant},
                   {"sup_f", sup_f.value},
                   {"grad_norm", grad.value}};
    if (grad.value == 0.0 || sup_f.value == 0.0) {
      if (lhs.value > 0.0) throw DomainError("certify_mixed: degenerate multiplicative form");
      c.rhs = 0.0;
    } else {
      c.rhs = constant * std::pow(sup_f.value, 1.0 - alpha) * std::pow(grad.value, alpha);
      c.quad_error = lhs.error_estimate + c.rhs * ((1.0 - alpha) * sup_f.error_estimate / sup_f.value +
                                                   alpha * grad.error_estimate / grad.value);
    }
  }
  // Sharpness is only known for m = 0 and m = 1.
  decide(c, m <= 1);
  return c;
}

Certificate certify_operator_bound(OperatorInstance instance, const TestFunction& f, const InequalityParams& params,
                                   const CertifyOptions& opts) {
  Certificate base;
  std::string x_term;
  std::string s_term;
  switch (instance) {
    case OperatorInstance::function:
      base = certify_nagy_additive(f, params, opts);
      s_term = "seminorm_factor";
      x_term = "seminorm";
      break;
    case OperatorInstance::charge:
      base = certify_charge(ChargeDensity{f}, params, Form::additive, opts);
      s_term = "seminorm_factor";
      x_term = "seminorm";
      break;
    case OperatorInstance::mixed:
      base = certify_mixed(f, params, Form::additive, opts);
      s_term = "operator_norm";
      x_term = "sup_f";
      break;
  }
  Certificate c = base;
  c.inequality = InequalityId::operator_bound;
  c.function_id = to_string(instance) + ":" + base.function_id;
  const double u = *base.term("kernel_norm");
  const double b = *base.term("grad_norm");
  const double s = *base.term(s_term);
  const double x = *base.term(x_term);
  c.rhs_terms = {{"U", u}, {"norm_Bx", b}, {"U_term", u * b}, {"norm_S", s}, {"norm_x", x}, {"S_term", s * x}};
  return c;
}

std::vector<Certificate> sweep_h(const TestFunction& f, const InequalityParams& params, std::span<const double> h_grid,
                                 const CertifyOptions& opts, int threads) {
  std::vector<Certificate> out(h_grid.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < h_grid.size(); i = next++) {
      try {
        out[i] = certify_nagy_additive(f, params.with_h(h_grid[i]), opts);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(h_grid.size(), 1)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<SharpnessCase> sharpness_suite(const CertifyOptions& opts) {
  struct Setting {
    int d;
    double p;
    double h;
    int m;
  };
  const std::array<Setting, 3> settings{{{1, kInf, 1.0, 0}, {2, 3.0, 1.0, 1}, {3, 4.0, 0.5, 2}}};
  auto make = [](int d, double p, double h, int m) {
    return InequalityParams(p, h, ConvexBody::box(d), ConeSpec(d, m));
  };
  auto label = [](const std::string& what, int d, double p, double h, int m) {
    std::ostringstream s;
    s << what << " d=" << d << " p=" << (std::isinf(p) ? std::string("inf") : std::to_string(static_cast<int>(p)))
      << " h=" << h << " m=" << m;
    return s.str();
  };

  std::vector<SharpnessCase> out;
  auto add = [&](std::string name, Certificate c) {
    const bool ok = c.verdict == Verdict::equality_within_tol;
    out.push_back({std::move(name), std::move(c), ok});
  };
  for (const Setting& s : settings) {
    const InequalityParams params = make(s.d, s.p, s.h, s.m);
    add(label("ostrowski", s.d, s.p, s.h, s.m), certify_ostrowski(ostrowski_extremal(params), params, opts));
    const TestFunction fe = extremal_f(params);
    add(label("nagy_additive", s.d, s.p, s.h, s.m), certify_nagy_additive(fe, params, opts));
    add(label("nagy_multiplicative", s.d, s.p, s.h, s.m), certify_nagy_multiplicative(fe, params, opts));
    add(label("charge_additive", s.d, s.p, s.h, s.m), certify_charge({fe}, params, Form::additive, opts));
    add(label("charge_multiplicative", s.d, s.p, s.h, s.m), certify_charge({fe}, params, Form::multiplicative, opts));
  }
  for (int m = 0; m <= 1; ++m) {
    for (int d = 1; d <= 2; ++d) {
      for (double p : {d + 1.0, kInf}) {
        const InequalityParams params = make(d, p, 1.0, m);
        const TestFunction F = m == 0 ? antiderivative_F(params) : antiderivative_G(params);
        const std::string what = m == 0 ? "mixed F" : "mixed G";
        add(label(what + " additive", d, p, 1.0, m), certify_mixed(F, params, Form::additive, opts));
        add(label(what + " multiplicative", d, p, 1.0, m), certify_mixed(F, params, Form::multiplicative, opts));
      }
    }
  }
  {
    const InequalityParams params = make(2, 3.0, 1.0, 1);
    const TestFunction fe = extremal_f(params);
    add(label("operator function", 2, 3.0, 1.0, 1), certify_operator_bound(OperatorInstance::function, fe, params, opts));
    add(label("operator charge", 2, 3.0, 1.0, 1), certify_operator_bound(OperatorInstance::charge, fe, params, opts));
    add(label("operator mixed G", 2, 3.0, 1.0, 1),
        certify_operator_bound(OperatorInstance::mixed, antiderivative_G(params), params, opts));
    const InequalityParams full = make(2, 3.0, 1.0, 0);
    add(label("operator mixed F", 2, 3.0, 1.0, 0),
        certify_operator_bound(OperatorInstance::mixed, antiderivative_F(full), full, opts));
  }
  return out;
}

}  // namespace lkn
