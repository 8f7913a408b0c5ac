#include "lkn/constants.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "lkn/errors.hpp"

namespace lkn {

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (!(p > 1.0)) throw DomainError("conjugate exponent requires p > 1");
  return p / (p - 1.0);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_fn: arguments must be positive");
  using boost::math::lgamma;
  return std::exp(lgamma(a) + lgamma(b) - lgamma(a + b));
}

void require_p_above_d(int d, double p) {
  if (!(p > d)) {
    std::ostringstream msg;
    msg << "inequality requires p > d (got p=" << p << ", d=" << d << ")";
    throw DomainError(msg.str());
  }
}

InequalityParams::InequalityParams(double p, double h, ConvexBody body, ConeSpec cone)
    : p_(p), h_(h), body_(std::move(body)), cone_(cone) {
  if (body_.dim() != cone_.dim) throw std::invalid_argument("InequalityParams: body and cone dimensions differ");
  require_p_above_d(body_.dim(), p_);
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw DomainError("InequalityParams: need finite h > 0");
  p_conj_ = conjugate_exponent(p_);
  sector_vol_ = sector_volume(body_, cone_);
}

InequalityParams InequalityParams::with_h(double h) const { return InequalityParams(p_, h, body_, cone_); }

double constant_A(int d, double p) {
  require_p_above_d(d, p);
  const double pc = conjugate_exponent(p);
  const double first = 1.0 - (d - 1) * pc / d;
  // Near p = d the first argument tends to 0, so stay in log space.
  using boost::math::lgamma;
  const double log_beta = lgamma(first) + lgamma(pc + 1.0) - lgamma(first + pc + 1.0);
  return std::exp(log_beta / pc) / d;
}

double alpha_exponent(int d, double p) {
  require_p_above_d(d, p);
  if (std::isinf(p)) return static_cast<double>(d) / (d + 1);
  return p * d / (p + (p - 1.0) * d);
}

double constant_a(int d, double p) {
  require_p_above_d(d, p);
  const double alpha = alpha_exponent(d, p);
  const double A = constant_A(d, p);
  if (std::isinf(p)) return std::pow(A / d, alpha) * (d + 1.0);
  return std::pow((p - d) * A / (p * d), alpha) * (p * d / (p - d) + 1.0);
}

double kernel_g(const InequalityParams& params, double u) {
  const double h = params.h();
  if (!(u > 0.0) || !(u <= h)) throw DomainError("kernel_g: argument must lie in (0, h)");
  const int d = params.d();
  const double t = u / h;
  // u^{1-d} - u/h^d = u^{1-d} (1 - (u/h)^d); the factored form keeps the
  // endpoint zero exact.
  return std::pow(u, 1.0 - d) * (1.0 - std::pow(t, d)) / (d * params.sector_vol());
}

double kernel_norm(const InequalityParams& params) {
  const int d = params.d();
  const double p = params.p();
  const double A = constant_A(d, p);
  if (std::isinf(p)) return A * params.h();
  return A * std::pow(params.h(), 1.0 - d / p) * std::pow(params.sector_vol(), -1.0 / p);
}

double optimal_h(int d, double p, double sector_vol, double seminorm, double grad_norm) {
  require_p_above_d(d, p);
  if (!(grad_norm > 0.0)) {
    throw DomainError("optimal_h: zero gradient norm; function is constant a.e. and the multiplicative form is degenerate");
  }
  if (!(seminorm > 0.0)) throw DomainError("optimal_h: seminorm must be positive");
  const double A = constant_A(d, p);
  const double pc = conjugate_exponent(p);
  // pd/(p-d) -> d as p -> inf.
  const double lead = std::isinf(p) ? static_cast<double>(d) : p * d / (p - d);
  const double base = lead * std::pow(sector_vol, -1.0 / pc) * seminorm / (A * grad_norm);
  return std::pow(base, pc / (pc + d));
}

double additive_nagy_rhs(int d, double p, double sector_vol, double h, double seminorm, double grad_norm) {
  const double A = constant_A(d, p);
  const double kernel =
      std::isinf(p) ? A * h : A * std::pow(sector_vol, -1.0 / p) * std::pow(h, 1.0 - d / p);
  return kernel * grad_norm + seminorm / (sector_vol * std::pow(h, d));
}

double multiplicative_nagy_rhs(int d, double p, double sector_vol, double seminorm, double grad_norm) {
  const double alpha = alpha_exponent(d, p);
  return constant_a(d, p) * std::pow(sector_vol, -alpha / d) * std::pow(seminorm, 1.0 - alpha) *
         std::pow(grad_norm, alpha);
}

}  // namespace lkn
