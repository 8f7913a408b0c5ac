#pragma once

#include <limits>

#include "lkn/geometry.hpp"

namespace lkn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// p' = p / (p - 1), with p' = 1 at p = inf.
double conjugate_exponent(double p);

// Euler Beta function through log-Gamma. Throws DomainError for a, b <= 0.
double beta_fn(double a, double b);

// The parameter bundle shared by every inequality: exponent p in (d, inf],
// averaging radius h, body K and cone C. Derived quantities are cached.
class InequalityParams {
 public:
  InequalityParams(double p, double h, ConvexBody body, ConeSpec cone);

  int d() const { return body_.dim(); }
  int m() const { return cone_.m; }
  double p() const { return p_; }
  double h() const { return h_; }
  const ConvexBody& body() const { return body_; }
  const ConeSpec& cone() const { return cone_; }

  double p_conj() const { return p_conj_; }
  // mu(K ∩ C).
  double sector_vol() const { return sector_vol_; }

  InequalityParams with_h(double h) const;

 private:
  double p_;
  double h_;
  ConvexBody body_;
  ConeSpec cone_;
  double p_conj_;
  double sector_vol_;
};

// Throws DomainError unless d < p <= inf.
void require_p_above_d(int d, double p);

// A(d,p) = d^{-1} B(1 - (d-1)p'/d, p'+1)^{1/p'}.
double constant_A(int d, double p);

// alpha = pd / (p + (p-1)d), equal to d/(d+1) at p = inf.
double alpha_exponent(int d, double p);

// a(d,p) = ((p-d) A / (pd))^alpha * (pd/(p-d) + 1), with the p = inf limits
// (p-d)/(pd) -> 1/d and pd/(p-d) -> d taken explicitly.
double constant_a(int d, double p);

// g_h(u) = (u^{1-d} - u/h^d) / (d mu(K∩C)) on 0 < u < h.
double kernel_g(const InequalityParams& params, double u);

// ||g_h(|.|_K)||_{L_{p'}(hK∩C)} = A h^{1-d/p} mu(K∩C)^{-1/p}.
double kernel_norm(const InequalityParams& params);

// The h that minimizes the additive bound
//   A mu^{-1/p} h^{1-d/p} G + mu^{-1} h^{-d} N
// for seminorm N and gradient norm G. Throws DomainError when G == 0.
double optimal_h(int d, double p, double sector_vol, double seminorm, double grad_norm);

// Right-hand side of the additive bound at a given h.
double additive_nagy_rhs(int d, double p, double sector_vol, double h, double seminorm, double grad_norm);

// a(d,p) mu^{-alpha/d} N^{1-alpha} G^alpha.
double multiplicative_nagy_rhs(int d, double p, double sector_vol, double seminorm, double grad_norm);

}  // namespace lkn
