#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lkn/certify.hpp"
#include "lkn/constants.hpp"
#include "lkn/errors.hpp"
#include "lkn/extremal.hpp"
#include "lkn/geometry.hpp"
#include "lkn/registry.hpp"

namespace lkn::cli {
namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  int d = 1;
  std::string p = "inf";
  double h = 1.0;
  int m = 0;
  std::string body = "box";
  double q = 2.0;
  std::vector<double> semi_axes;
  double tol = 1e-8;
  int max_depth = 12;
  double sharpness_tol = 1e-3;
  std::string format = "json";
  std::uint64_t seed = 0;

  std::string ineq = "nagy_additive";
  std::string instance = "function";
  FunctionSpec function;
  bool l1 = false;

  int points = 101;
  std::vector<double> h_grid;
  double h_min = 0.125;
  double h_max = 8.0;
  int h_count = 25;
};

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--d", cfg.d, "dimension")->check(CLI::Range(1, kMaxDim));
  app->add_option("--p", cfg.p, "exponent p in (d, inf]; accepts 'inf'");
  app->add_option("--h", cfg.h, "averaging radius h > 0");
  app->add_option("--m", cfg.m, "number of half-line factors of the cone")->check(CLI::NonNegativeNumber);
  app->add_option("--body", cfg.body, "convex body family")->check(CLI::IsMember({"box", "lq_ball"}));
  app->add_option("--q", cfg.q, "exponent of the l_q ball");
  app->add_option("--semi-axes", cfg.semi_axes, "axis scalings of the body")->delimiter(',');
  app->add_option("--tol", cfg.tol, "relative quadrature tolerance");
  app->add_option("--max-depth", cfg.max_depth, "cubature bisections per axis")->check(CLI::Range(1, 60));
  app->add_option("--sharpness-tol", cfg.sharpness_tol, "|ratio - 1| accepted as equality");
  app->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--seed", cfg.seed, "seed for sampled norms and searches");
}

void add_function(CLI::App* app, RunConfig& cfg) {
  app->add_option("--function", cfg.function.name, "test function")->check(CLI::IsMember(registry_names()));
  app->add_option("--h0", cfg.function.h0, "h the extremal construction is built for (default: --h)");
  app->add_option("--scale", cfg.function.scale, "multiply the function by this factor");
  app->add_option("--center", cfg.function.center, "bump centre (all axes)");
  app->add_option("--radius", cfg.function.radius, "bump radius (all axes)");
  app->add_option("--power", cfg.function.power, "polynomial power")->check(CLI::NonNegativeNumber);
  app->add_flag("--l1", cfg.l1, "use ||f||_1 in place of the seminorm (nonnegative f)");
}

InequalityParams make_params(const RunConfig& cfg) {
  if (cfg.m > cfg.d) throw std::invalid_argument("--m must not exceed --d");
  if (!cfg.semi_axes.empty() && static_cast<int>(cfg.semi_axes.size()) != cfg.d) {
    throw std::invalid_argument("--semi-axes needs exactly d values");
  }
  const double p = parse_exponent(cfg.p);
  ConvexBody body = cfg.body == "box" ? ConvexBody::box(cfg.d, cfg.semi_axes)
                                      : ConvexBody::lq_ball(cfg.d, cfg.q, cfg.semi_axes);
  return InequalityParams(p, cfg.h, std::move(body), ConeSpec(cfg.d, cfg.m));
}

CertifyOptions make_options(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  if (!(cfg.sharpness_tol >= 0.0)) throw std::invalid_argument("--sharpness-tol must be nonnegative");
  CertifyOptions opts;
  opts.quad.tol = cfg.tol;
  opts.quad.max_depth = cfg.max_depth;
  opts.seminorm.quad = opts.quad;
  opts.norm.quad = opts.quad;
  opts.sharpness_tol = cfg.sharpness_tol;
  opts.seed = cfg.seed;
  opts.norm.seed = cfg.seed;
  opts.l1_seminorm = cfg.l1;
  return opts;
}

int sweep_threads() {
  if (const char* env = std::getenv("LKN_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw std::invalid_argument("LKN_THREADS must be a positive integer");
    }
  }
  return 1;
}

std::string format_number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  const InequalityParams params = make_params(cfg);
  const int d = params.d();
  const double p = params.p();
  json j;
  j["params"] = params_to_json(params);
  j["A"] = constant_A(d, p);
  j["alpha"] = alpha_exponent(d, p);
  j["a"] = constant_a(d, p);
  j["p_conj"] = params.p_conj();
  j["sector_vol"] = params.sector_vol();
  j["kernel_norm"] = kernel_norm(params);
  if (cfg.format == "csv") {
    out << "name,value\n";
    for (const char* key : {"A", "alpha", "a", "p_conj", "sector_vol", "kernel_norm"}) {
      out << key << "," << format_number(j[key].get<double>()) << "\n";
    }
  } else {
    out << j.dump(2) << "\n";
  }
  return kOk;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
  const InequalityParams params = make_params(cfg);
  if (cfg.points < 2) throw std::invalid_argument("--points must be at least 2");
  const RadialProfile profile(params);
  QuadratureOptions quad = radial_quadrature_options();
  const QuadratureResult sup = extremal_sup(params, quad);
  if (cfg.format == "csv") {
    out << "# sup=" << format_number(sup.value) << "\n";
    out << "r,profile\n";
    for (int i = 0; i < cfg.points; ++i) {
      const double r = params.h() * i / (cfg.points - 1);
      out << format_number(r) << "," << format_number(profile(r)) << "\n";
    }
    return kOk;
  }
  json j;
  j["params"] = params_to_json(params);
  j["sup"] = sup.value;
  j["sup_closed_form"] = profile.peak();
  j["sup_error_estimate"] = sup.error_estimate;
  json rows = json::array();
  for (int i = 0; i < cfg.points; ++i) {
    const double r = params.h() * i / (cfg.points - 1);
    rows.push_back({r, profile(r)});
  }
  j["profile"] = rows;
  out << j.dump(2) << "\n";
  return kOk;
}

Certificate certify_one(const RunConfig& cfg, const TestFunction& f, const InequalityParams& params,
                        const CertifyOptions& opts) {
  switch (inequality_from_string(cfg.ineq)) {
    case InequalityId::ostrowski: return certify_ostrowski(f, params, opts);
    case InequalityId::nagy_additive: return certify_nagy_additive(f, params, opts);
    case InequalityId::nagy_multiplicative: return certify_nagy_multiplicative(f, params, opts);
    case InequalityId::charge_additive: return certify_charge({f}, params, Form::additive, opts);
    case InequalityId::charge_multiplicative: return certify_charge({f}, params, Form::multiplicative, opts);
    case InequalityId::mixed_additive: return certify_mixed(f, params, Form::additive, opts);
    case InequalityId::mixed_multiplicative: return certify_mixed(f, params, Form::multiplicative, opts);
    case InequalityId::operator_bound:
      return certify_operator_bound(operator_instance_from_string(cfg.instance), f, params, opts);
  }
  throw std::invalid_argument("unknown inequality");
}

void write_certificates_csv(const std::vector<Certificate>& certs, std::ostream& out) {
  out << "inequality,h,lhs,rhs,quad_error,ratio,verdict\n";
  for (const Certificate& c : certs) {
    out << to_string(c.inequality) << "," << format_number(c.params.h()) << "," << format_number(c.lhs) << ","
        << format_number(c.rhs) << "," << format_number(c.quad_error) << "," << format_number(c.ratio) << ","
        << to_string(c.verdict) << "\n";
  }
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  const InequalityParams params = make_params(cfg);
  const CertifyOptions opts = make_options(cfg);
  const TestFunction f = make_function(cfg.function, params);
  const Certificate cert = certify_one(cfg, f, params, opts);
  if (cfg.format == "csv") {
    write_certificates_csv({cert}, out);
  } else {
    out << to_json(cert).dump(2) << "\n";
  }
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const InequalityParams params = make_params(cfg);
  const CertifyOptions opts = make_options(cfg);
  const TestFunction f = make_function(cfg.function, params);
  std::vector<double> grid = cfg.h_grid;
  if (grid.empty()) {
    if (!(cfg.h_min > 0.0) || !(cfg.h_max > cfg.h_min) || cfg.h_count < 2) {
      throw std::invalid_argument("need 0 < --h-min < --h-max and --h-count >= 2");
    }
    for (int i = 0; i < cfg.h_count; ++i) {
      grid.push_back(cfg.h_min * std::pow(cfg.h_max / cfg.h_min, static_cast<double>(i) / (cfg.h_count - 1)));
    }
  }
  const std::vector<Certificate> certs = sweep_h(f, params, grid, opts, sweep_threads());
  if (cfg.format == "csv") {
    write_certificates_csv(certs, out);
    return kOk;
  }
  json arr = json::array();
  for (const Certificate& c : certs) arr.push_back(to_json(c));
  out << arr.dump(2) << "\n";
  return kOk;
}

int cmd_sharpness(const RunConfig& cfg, std::ostream& out) {
  const CertifyOptions opts = make_options(cfg);
  const std::vector<SharpnessCase> rows = sharpness_suite(opts);
  const bool all = std::all_of(rows.begin(), rows.end(), [](const SharpnessCase& r) { return r.passed; });
  if (cfg.format == "json") {
    json arr = json::array();
    for (const SharpnessCase& r : rows) {
      json j;
      j["case"] = r.name;
      j["passed"] = r.passed;
      j["certificate"] = to_json(r.certificate);
      arr.push_back(j);
    }
    out << arr.dump(2) << "\n";
  } else {
    out << "case,ratio,verdict,result\n";
    for (const SharpnessCase& r : rows) {
      out << r.name << "," << format_number(r.certificate.ratio) << "," << to_string(r.certificate.verdict) << ","
          << (r.passed ? "PASS" : "FAIL") << "\n";
    }
  }
  return all ? kOk : kSharpnessFailed;
}

}  // namespace

double parse_exponent(const std::string& text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "inf" || lower == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse exponent '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument("cannot parse exponent '" + text + "'");
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Averaged-difference constants, extremal functions and inequality certificates on cones", "lkn"};
  // -h would collide with --h.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1, 1);

  CLI::App* constants = app.add_subcommand("constants", "print A, alpha, a, p', mu(K∩C) and the kernel norm");
  add_common(constants, cfg);

  CLI::App* profile = app.add_subcommand("extremal-profile", "tabulate the radial profile of the extremal function");
  add_common(profile, cfg);
  profile->add_option("--points", cfg.points, "number of r samples on [0, h]");

  CLI::App* certify = app.add_subcommand("certify", "certify one inequality on one test function");
  add_common(certify, cfg);
  add_function(certify, cfg);
  certify->add_option("--ineq", cfg.ineq, "inequality")
      ->check(CLI::IsMember({"ostrowski", "nagy_additive", "nagy_multiplicative", "charge_additive",
                             "charge_multiplicative", "mixed_additive", "mixed_multiplicative", "operator_bound"}));
  certify->add_option("--instance", cfg.instance, "operator_bound instance")
      ->check(CLI::IsMember({"function", "charge", "mixed"}));

  CLI::App* sweep = app.add_subcommand("sweep-h", "additive certificates over a grid of h");
  add_common(sweep, cfg);
  add_function(sweep, cfg);
  sweep->add_option("--h-grid", cfg.h_grid, "explicit h values")->delimiter(',');
  sweep->add_option("--h-min", cfg.h_min, "smallest h of the logarithmic grid");
  sweep->add_option("--h-max", cfg.h_max, "largest h of the logarithmic grid");
  sweep->add_option("--h-count", cfg.h_count, "number of grid points");

  CLI::App* sharpness = app.add_subcommand("sharpness", "run every known equality case and print a pass/fail table");
  add_common(sharpness, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (sharpness->parsed() && !sharpness->count("--format")) cfg.format = "csv";

  try {
    if (constants->parsed()) return cmd_constants(cfg, out);
    if (profile->parsed()) return cmd_profile(cfg, out);
    if (certify->parsed()) return cmd_certify(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    if (sharpness->parsed()) return cmd_sharpness(cfg, out);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const QuadratureError& e) {
    err << "quadrature error: " << e.what() << "\n";
    return kQuadrature;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace lkn::cli
