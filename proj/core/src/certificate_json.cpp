#include <cmath>
#include <stdexcept>

#include "lkn/certify.hpp"

namespace lkn {
namespace {

double finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw std::runtime_error("certificate field '" + what + "' is not finite");
  return v;
}

}  // namespace

nlohmann::ordered_json params_to_json(const InequalityParams& params) {
  nlohmann::ordered_json body;
  body["family"] = to_string(params.body().family());
  if (params.body().family() == BodyFamily::lq_ball) body["q"] = params.body().q();
  body["semi_axes"] = std::vector<double>(params.body().semi_axes().begin(), params.body().semi_axes().end());

  nlohmann::ordered_json out;
  out["d"] = params.d();
  out["m"] = params.m();
  if (std::isinf(params.p())) {
    out["p"] = "inf";
  } else {
    out["p"] = params.p();
  }
  out["p_conj"] = params.p_conj();
  out["h"] = params.h();
  out["sector_vol"] = params.sector_vol();
  out["body"] = body;
  out["cone"] = {{"d", params.cone().dim}, {"m", params.cone().m}};
  return out;
}

nlohmann::ordered_json to_json(const Certificate& cert) {
  nlohmann::ordered_json params = params_to_json(cert.params);
  params["function"] = cert.function_id;

  nlohmann::ordered_json terms = nlohmann::ordered_json::object();
  for (const auto& [name, value] : cert.rhs_terms) terms[name] = finite(value, name);

  nlohmann::ordered_json out;
  out["inequality"] = to_string(cert.inequality);
  out["params"] = params;
  out["lhs"] = finite(cert.lhs, "lhs");
  out["rhs"] = finite(cert.rhs, "rhs");
  out["rhs_terms"] = terms;
  out["quad_error"] = finite(cert.quad_error, "quad_error");
  out["ratio"] = finite(cert.ratio, "ratio");
  out["verdict"] = to_string(cert.verdict);
  out["tolerances"] = {{"holds_slack", cert.holds_slack},
                       {"sharpness_tol", cert.sharpness_tol},
                       {"quad_tol", cert.quad_tol},
                       {"max_depth", cert.max_depth}};
  out["seed"] = cert.seed;
  return out;
}

}  // namespace lkn
