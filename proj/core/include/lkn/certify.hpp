#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lkn/constants.hpp"
#include "lkn/numerics.hpp"
#include "lkn/test_function.hpp"

namespace lkn {

enum class InequalityId {
  ostrowski,
  nagy_additive,
  nagy_multiplicative,
  charge_additive,
  charge_multiplicative,
  mixed_additive,
  mixed_multiplicative,
  operator_bound,
};

enum class Verdict { holds, equality_within_tol, violated };

enum class Form { additive, multiplicative };

std::string to_string(InequalityId id);
InequalityId inequality_from_string(const std::string& name);
std::string to_string(Verdict v);

struct CertifyOptions {
  QuadratureOptions quad;
  SeminormOptions seminorm;
  NormOptions norm;
  // violated iff lhs > rhs (1 + holds_slack) + quad_error.
  double holds_slack = 1e-9;
  // equality_within_tol iff |lhs/rhs - 1| <= sharpness_tol.
  double sharpness_tol = 1e-3;
  // Replace the seminorm by ||f||_{L_1(C)} (nonnegative f only).
  bool l1_seminorm = false;
  std::uint64_t seed = 0;
};

struct Certificate {
  InequalityId inequality = InequalityId::nagy_additive;
  InequalityParams params{kInf, 1.0, ConvexBody::box(1), ConeSpec(1, 0)};
  std::string function_id;
  double lhs = 0.0;
  double rhs = 0.0;
  // Named pieces of the right-hand side and the constants used, in
  // insertion order.
  std::vector<std::pair<std::string, double>> rhs_terms;
  double quad_error = 0.0;
  double ratio = 0.0;
  Verdict verdict = Verdict::holds;
  double holds_slack = 1e-9;
  double sharpness_tol = 1e-3;
  double quad_tol = 1e-8;
  int max_depth = 12;
  std::uint64_t seed = 0;

  std::optional<double> term(const std::string& name) const;
};

// Fills ratio and verdict from lhs, rhs and quad_error. With
// allow_equality == false the verdict is never equality_within_tol.
void decide(Certificate& cert, bool allow_equality = true);

// ||f||_{L_inf(C)}: the recorded sup when there is one, otherwise a sampled
// lower bound over the support (error = Lipschitz inflation).
NormEstimate sup_norm(const TestFunction& f, const InequalityParams& params, const CertifyOptions& opts);

// || |grad f|_{K°} ||_{L_p(radius K ∩ C)}, through the radial reduction when
// f carries a radial gradient profile.
NormEstimate gradient_norm(const TestFunction& f, const InequalityParams& params, double radius,
                           const CertifyOptions& opts);

// |f(0) - S_h f(0)| <= ||g_h(|.|_K)||_{p'} || |grad f|_{K°} ||_{L_p(hK∩C)}.
Certificate certify_ostrowski(const TestFunction& f, const InequalityParams& params, const CertifyOptions& opts = {});

// ||f||_inf <= ||g_h||_{p'} || |grad f|_{K°} ||_p + mu^{-1} h^{-d} seminorm_h(f).
Certificate certify_nagy_additive(const TestFunction& f, const InequalityParams& params,
                                  const CertifyOptions& opts = {});

// ||f||_inf <= a mu^{-alpha/d} seminorm(f)^{1-alpha} || |grad f|_{K°} ||_p^alpha.
// params.h is ignored; the balancing h and the additive bound there are
// recorded as rhs terms.
Certificate certify_nagy_multiplicative(const TestFunction& f, const InequalityParams& params,
                                        const CertifyOptions& opts = {});

// A charge nu on C represented by its density D nu with respect to Lebesgue
// measure. The charge seminorms are identified with those of the density.
struct ChargeDensity {
  TestFunction density;
};

Certificate certify_charge(const ChargeDensity& nu, const InequalityParams& params, Form form,
                           const CertifyOptions& opts = {});

// ||∂_I f||_inf <= A h^{1-d/p} 2^{(m-d)/p} || |grad ∂_I f|_{K°} ||_p + 2^m h^{-d} ||f||_inf
// and its multiplicative form; unit box only. For m >= 2 the verdict is at
// most `holds`.
Certificate certify_mixed(const TestFunction& f, const InequalityParams& params, Form form,
                          const CertifyOptions& opts = {});

// ||Ax|| <= U(A,S) ||Bx|| + ||S|| ||x|| for the three concrete (A, B, S)
// triples: f -> f with S_h, charges with their normalized sector measure,
// and f -> ∂_I f with the mixed difference operator.
enum class OperatorInstance { function, charge, mixed };
std::string to_string(OperatorInstance instance);
OperatorInstance operator_instance_from_string(const std::string& name);

Certificate certify_operator_bound(OperatorInstance instance, const TestFunction& f, const InequalityParams& params,
                                   const CertifyOptions& opts = {});

// Additive certificates of f for every h in the grid, in grid order. Grid
// points are processed on up to `threads` threads.
std::vector<Certificate> sweep_h(const TestFunction& f, const InequalityParams& params, std::span<const double> h_grid,
                                 const CertifyOptions& opts = {}, int threads = 1);

// One row per known equality case: the Ostrowski, Nagy, charge and mixed
// extremal constructions and the operator-bound instances built on them.
struct SharpnessCase {
  std::string name;
  Certificate certificate;
  bool passed = false;
};
std::vector<SharpnessCase> sharpness_suite(const CertifyOptions& opts = {});

nlohmann::ordered_json to_json(const Certificate& cert);
nlohmann::ordered_json params_to_json(const InequalityParams& params);

}  // namespace lkn
