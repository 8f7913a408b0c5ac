#include "lkn/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "lkn/errors.hpp"

namespace lkn {
namespace {

// Maps the unit cube onto hK ∩ C (shifted by x0) and sums the integrand over
// all orthant/pyramid pieces, Jacobians included.
class SectorMap {
 public:
  SectorMap(const ScalarField& f, const ConvexBody& body, const ConeSpec& cone, double h,
            std::span<const double> x0, int grading)
      : f_(f), body_(body), d_(body.dim()), m_(cone.m), h_(h), grading_(grading) {
    if (body.dim() != cone.dim) throw std::invalid_argument("integrate_sector: body and cone dimensions differ");
    if (x0.size() != static_cast<std::size_t>(d_)) throw std::invalid_argument("integrate_sector: base point dimension mismatch");
    if (!(h > 0.0)) throw std::invalid_argument("integrate_sector: need h > 0");
    std::copy(x0.begin(), x0.end(), x0_.begin());
    axes_volume_ = 1.0;
    for (int i = 0; i < d_; ++i) axes_volume_ *= body.semi_axes()[i];
  }

  double operator()(std::span<const double> v) const {
    const double w = v[0];
    const double t = grading_ == 1 ? w : std::pow(w, grading_);
    const double dt = grading_ == 1 ? 1.0 : grading_ * std::pow(w, grading_ - 1);
    if (t == 0.0) return 0.0;

    std::array<double, kMaxDim> dir{};
    std::array<double, kMaxDim> y{};
    std::array<double, kMaxDim> x{};
    const std::span<const double> xv(x.data(), static_cast<std::size_t>(d_));
    const std::span<const double> dv(dir.data(), static_cast<std::size_t>(d_));
    const auto semi = body_.semi_axes();
    const int free_axes = d_ - m_;
    const int orthants = 1 << free_axes;

    double total = 0.0;
    for (int i = 0; i < d_; ++i) {
      for (int j = 0, k = 1; j < d_; ++j) dir[j] = j == i ? 1.0 : v[k++];
      const double tau = h_ / body_.unit_gauge_positive(dv);
      const double r = t * tau;
      for (int j = 0; j < d_; ++j) y[j] = r * dir[j] * semi[j];
      double piece = 0.0;
      for (int mask = 0; mask < orthants; ++mask) {
        for (int j = 0; j < d_; ++j) {
          const bool flip = j >= m_ && ((mask >> (j - m_)) & 1);
          x[j] = x0_[j] + (flip ? -y[j] : y[j]);
        }
        piece += f_(xv);
      }
      total += piece * std::pow(tau, d_) ;
    }
    return total * dt * std::pow(t, d_ - 1) * axes_volume_;
  }

 private:
  const ScalarField& f_;
  const ConvexBody& body_;
  int d_;
  int m_;
  double h_;
  int grading_;
  std::array<double, kMaxDim> x0_{};
  double axes_volume_;
};

int default_grid_cap(int d) {
  switch (d) {
    case 1: return 257;
    case 2: return 33;
    case 3: return 11;
    default: return 7;
  }
}

// Fixed tensor rule over [0,1]^dim.
double fixed_unit(const UnitIntegrand& f, int dim, int order, int cells) {
  const GaussRule& rule = gauss_legendre(order);
  const int per_axis = order * cells;
  std::vector<double> nodes(per_axis), weights(per_axis);
  for (int c = 0; c < cells; ++c) {
    for (int i = 0; i < order; ++i) {
      const double half = 0.5 / cells;
      nodes[c * order + i] = (c + 0.5) / cells + half * rule.nodes[i];
      weights[c * order + i] = half * rule.weights[i];
    }
  }
  std::array<int, kMaxDim> idx{};
  std::array<double, kMaxDim> point{};
  const std::span<const double> view(point.data(), static_cast<std::size_t>(dim));
  double sum = 0.0;
  while (true) {
    double w = 1.0;
    for (int k = 0; k < dim; ++k) {
      point[k] = nodes[idx[k]];
      w *= weights[idx[k]];
    }
    sum += w * f(view);
    int k = 0;
    while (k < dim && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == dim) break;
  }
  return sum;
}

// Compass search maximizing |value(x)| over base points x in the closure of C.
struct SearchResult {
  std::vector<double> x;
  double value;
};

template <class Objective>
SearchResult compass_search(Objective&& objective, std::vector<double> x, double fx, std::span<const double> step0,
                            int m, int halvings) {
  const int d = static_cast<int>(x.size());
  std::vector<double> step(step0.begin(), step0.end());
  for (int level = 0; level <= halvings; ++level) {
    bool improved = true;
    int moves = 0;
    while (improved && moves < 32) {
      improved = false;
      for (int k = 0; k < d && !improved; ++k) {
        for (double dir : {1.0, -1.0}) {
          std::vector<double> trial = x;
          trial[k] += dir * step[k];
          if (k < m && trial[k] < 0.0) continue;
          const double ft = objective(trial);
          if (ft > fx) {
            x = std::move(trial);
            fx = ft;
            improved = true;
            ++moves;
            break;
          }
        }
      }
    }
    for (double& s : step) s *= 0.5;
  }
  return {std::move(x), fx};
}


bool separable_on_box(const TestFunction& f, const InequalityParams& params) {
  return params.body().family() == BodyFamily::box && static_cast<int>(f.factors.size()) == params.d() &&
         f.factor_support.size() == f.factors.size();
}

struct AxisSup {
  double value = 0.0;
  double error = 0.0;
  double x = 0.0;
  std::size_t evaluations = 0;
};

// sup over admissible x of |∫_J(x) phi|, with J(x) = [x, x+L] and x >= 0 on
// a half-line axis, J(x) = [x-L, x+L] on a full axis.
AxisSup axis_sup(const std::function<double(double)>& phi, std::array<double, 2> support, double L, bool half_line) {
  QuadratureOptions q;
  q.tol = 1e-12;
  q.abs_tol = 1e-300;
  q.max_depth = 40;
  AxisSup out;
  auto integral = [&](double x, double& err) {
    const double a = std::max(half_line ? x : x - L, support[0]);
    const double b = std::min(x + L, support[1]);
    if (!(b > a)) {
      err = 0.0;
      return 0.0;
    }
    const QuadratureResult r = integrate_interval(phi, a, b, q);
    out.evaluations += r.evaluations;
    err = r.error_estimate;
    return std::abs(r.value);
  };
  double lo = half_line ? std::max(0.0, support[0] - L) : support[0] - L;
  double hi = half_line ? std::max(0.0, support[1]) : support[1] + L;
  if (!(hi > lo)) return out;

  constexpr int kScan = 129;
  const double step = (hi - lo) / (kScan - 1);
  std::vector<double> values(kScan);
  for (int i = 0; i < kScan; ++i) {
    double err = 0.0;
    values[i] = integral(lo + i * step, err);
    if (values[i] > out.value) {
      out.value = values[i];
      out.error = err;
      out.x = lo + i * step;
    }
  }
  // Golden-section refinement around the three best local maxima of the scan.
  std::vector<int> peaks;
  for (int i = 0; i < kScan; ++i) {
    const bool left = i == 0 || values[i] >= values[i - 1];
    const bool right = i == kScan - 1 || values[i] >= values[i + 1];
    if (left && right && values[i] > 0.0) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return values[a] > values[b]; });
  if (peaks.size() > 3) peaks.resize(3);
  const double phi_ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i : peaks) {
    double a = lo + std::max(i - 1, 0) * step;
    double b = lo + std::min(i + 1, kScan - 1) * step;
    double e1 = 0.0;
    double e2 = 0.0;
    double c = b - phi_ratio * (b - a);
    double e = a + phi_ratio * (b - a);
    double fc = integral(c, e1);
    double fe = integral(e, e2);
    for (int it = 0; it < 50 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
      if (fc > fe) {
        b = e;
        e = c;
        fe = fc;
        e2 = e1;
        c = b - phi_ratio * (b - a);
        fc = integral(c, e1);
      } else {
        a = c;
        c = e;
        fc = fe;
        e1 = e2;
        e = a + phi_ratio * (b - a);
        fe = integral(e, e2);
      }
    }
    if (fc > out.value) {
      out.value = fc;
      out.error = e1;
      out.x = c;
    }
    if (fe > out.value) {
      out.value = fe;
      out.error = e2;
      out.x = e;
    }
  }
  return out;
}

// For f = prod_i phi_i and K a box, the sector x + hK∩C is a box too, so
// the sector integral is a product of one-dimensional integrals and the sup
// over x splits axis by axis.
SeminormEstimate separable_seminorm_h(const TestFunction& f, const InequalityParams& params) {
  const int d = params.d();
  const auto semi = params.body().semi_axes();
  SeminormEstimate out;
  out.maximizer.assign(d, 0.0);
  out.value = 1.0;
  double rel_err = 0.0;
  for (int i = 0; i < d; ++i) {
    const AxisSup s = axis_sup(f.factors[i], f.factor_support[i], params.h() * semi[i], i < params.m());
    out.evaluations += s.evaluations;
    out.maximizer[i] = s.x;
    out.value *= s.value;
    if (s.value > 0.0) rel_err += s.error / s.value;
  }
  out.error_estimate = out.value * rel_err;
  return out;
}

}  // namespace

QuadratureResult integrate_sector(const ScalarField& f, const ConvexBody& body, const ConeSpec& cone, double h,
                                  std::span<const double> x0, const QuadratureOptions& opts) {
  const SectorMap map(f, body, cone, h, x0, std::max(1, opts.radial_grading));
  return cubature_unit(std::cref(map), body.dim(), opts);
}

QuadratureResult integrate_sector(const TestFunction& f, const InequalityParams& params,
                                  std::span<const double> x0, const QuadratureOptions& opts) {
  if (f.dim != params.d()) throw std::invalid_argument("integrate_sector: function dimension mismatch");
  const ConvexBody& body = params.body();
  // About the origin the radial map lines up with the level sets of
  // gauge-radial functions.
  const bool radial_at_origin = f.radially_decreasing && std::all_of(x0.begin(), x0.end(), [](double v) { return v == 0.0; });
  if (body.family() != BodyFamily::box || radial_at_origin) {
    return integrate_sector(f.eval, body, params.cone(), params.h(), x0, opts);
  }

  // Box sectors are boxes. Clipping to the support keeps thin slivers of it
  // from hiding between the nodes of a coarse cell.
  const int d = params.d();
  const double h = params.h();
  const double R = f.support_radius;
  std::vector<double> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    const double s = body.semi_axes()[i];
    lo[i] = i < params.m() ? x0[i] : x0[i] - h * s;
    hi[i] = x0[i] + h * s;
    if (std::isfinite(R)) {
      lo[i] = std::max(lo[i], -R * s);
      hi[i] = std::min(hi[i], R * s);
    }
    if (!f.factor_support.empty()) {
      lo[i] = std::max(lo[i], f.factor_support[i][0]);
      hi[i] = std::min(hi[i], f.factor_support[i][1]);
    }
    if (!(lo[i] < hi[i])) return {};
  }
  // Kinks clipping a cell corner can also slip between the nodes; the missed
  // mass scales like the cube of the seed cell width.
  QuadratureOptions q = opts;
  if (f.smoothness == Smoothness::lipschitz) q.min_depth = std::max(q.min_depth, d <= 2 ? 3 : 2);
  return integrate_box(f.eval, lo, hi, q);
}

double integrate_sector_fixed(const ScalarField& f, const ConvexBody& body, const ConeSpec& cone, double h,
                              std::span<const double> x0, int order, int cells) {
  const SectorMap map(f, body, cone, h, x0, 1);
  return fixed_unit(std::cref(map), body.dim(), order, cells);
}

QuadratureResult integrate_box(const ScalarField& f, std::span<const double> lo, std::span<const double> hi,
                               const QuadratureOptions& opts) {
  if (lo.size() != hi.size() || lo.empty() || lo.size() > static_cast<std::size_t>(kMaxDim)) {
    throw std::invalid_argument("integrate_box: bad corner dimensions");
  }
  const int d = static_cast<int>(lo.size());
  double jac = 1.0;
  for (int i = 0; i < d; ++i) jac *= hi[i] - lo[i];
  if (jac == 0.0) return {};
  std::array<double, kMaxDim> a{}, w{};
  for (int i = 0; i < d; ++i) {
    a[i] = lo[i];
    w[i] = hi[i] - lo[i];
  }
  auto mapped = [&](std::span<const double> u) {
    std::array<double, kMaxDim> x{};
    for (int i = 0; i < d; ++i) x[i] = a[i] + w[i] * u[i];
    return f(std::span<const double>(x.data(), static_cast<std::size_t>(d)));
  };
  try {
    QuadratureResult r = cubature_unit(mapped, d, opts);
    r.value *= jac;
    r.error_estimate *= std::abs(jac);
    return r;
  } catch (const QuadratureError& e) {
    const QuadratureResult& p = e.partial();
    throw QuadratureError(e.what(), {p.value * jac, p.error_estimate * std::abs(jac), p.evaluations});
  }
}

QuadratureOptions radial_quadrature_options() {
  QuadratureOptions opts;
  opts.tol = 1e-12;
  opts.abs_tol = 0.0;
  opts.max_depth = 60;
  opts.radial_grading = 4;
  return opts;
}

QuadratureResult radial_integral(const std::function<double(double)>& profile, const InequalityParams& params,
                                 double exponent, double singular_order, const QuadratureOptions& opts) {
  const int d = params.d();
  // t^{d-1} t^{-singular_order * exponent} must be integrable at 0.
  if (d - 1 - singular_order * exponent <= -1.0) {
    throw DomainError("radial_integral: non-integrable singularity at the origin (is p <= d?)");
  }
  const double h = params.h();
  // After t = h w^k the integrand behaves like w^{k e - 1}, e = d - order *
  // exponent; grade hard enough that this is at least linear.
  const double e = d - singular_order * exponent;
  const int k = std::max({1, opts.radial_grading, static_cast<int>(std::ceil(2.0 / e))});
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double s = std::pow(w, k);
    const double t = h * s;
    if (t <= 0.0) return 0.0;
    const double prof = profile(t);
    if (prof == 0.0) return 0.0;
    const double val = exponent == 1.0 ? prof : std::pow(prof, exponent);
    return std::pow(t, d - 1) * val * h * k * std::pow(w, k - 1);
  };
  QuadratureResult r = integrate_interval(integrand, 0.0, 1.0, opts);
  const double scale = d * params.sector_vol();
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

NormEstimate sup_estimate(const ScalarField& field, const ConvexBody& body, const ConeSpec& cone, double radius,
                          const NormOptions& opts) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("sup_estimate: need a finite positive radius");
  const int d = body.dim();
  const SectorSample sample = sample_sector(body, cone, radius, std::max<std::size_t>(opts.sup_samples, 1), opts.seed);
  NormEstimate out;
  out.samples = sample.size();

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) ranked.emplace_back(std::abs(field(sample.point(i))), i);
  out.evaluations = sample.size();
  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(std::max(opts.refine_starts, 0)), ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + starts, ranked.end(), std::greater<>());
  double best = ranked.empty() ? 0.0 : ranked.front().first;

  auto objective = [&](const std::vector<double>& x) {
    ++out.evaluations;
    if (!cone.contains(x) || !(body.gauge(x) < radius)) return -1.0;
    return std::abs(field(x));
  };
  std::vector<double> step(d);
  for (int i = 0; i < d; ++i) step[i] = 0.05 * radius * body.semi_axes()[i];
  for (std::size_t s = 0; s < starts; ++s) {
    auto p = sample.point(ranked[s].second);
    const SearchResult r =
        compass_search(objective, std::vector<double>(p.begin(), p.end()), ranked[s].first, step, cone.m, 20);
    best = std::max(best, r.value);
  }
  out.value = best;
  if (opts.lipschitz) {
    // Fill-distance proxy for a low-discrepancy set of this size.
    const double vol = sector_volume(body, cone) * std::pow(radius, d);
    out.inflation = *opts.lipschitz * std::pow(vol / static_cast<double>(std::max<std::size_t>(out.samples, 1)), 1.0 / d);
  }
  return out;
}

NormEstimate lp_norm(const ScalarField& field, const ConvexBody& body, const ConeSpec& cone, double p,
                     double support_radius, const NormOptions& opts) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: need p >= 1");
  if (!std::isfinite(support_radius)) throw DomainError("lp_norm: infinite support");
  if (std::isinf(p)) return sup_estimate(field, body, cone, support_radius, opts);

  auto power = [&field, p](std::span<const double> x) {
    const double v = std::abs(field(x));
    if (v == 0.0) return 0.0;
    return p == 1.0 ? v : (p == 2.0 ? v * v : std::pow(v, p));
  };
  const std::array<double, kMaxDim> origin{};
  const QuadratureResult r = integrate_sector(ScalarField(power), body, cone, support_radius,
                                              std::span<const double>(origin.data(), static_cast<std::size_t>(body.dim())),
                                              opts.quad);
  NormEstimate out;
  out.evaluations = r.evaluations;
  if (r.value <= 0.0) return out;
  out.value = std::pow(r.value, 1.0 / p);
  out.error_estimate = out.value * r.error_estimate / (p * r.value);
  return out;
}

SeminormEstimate seminorm_h(const TestFunction& f, const InequalityParams& params, const SeminormOptions& opts) {
  const int d = params.d();
  const double h = params.h();
  SeminormEstimate out;
  out.maximizer.assign(d, 0.0);

  if (f.nonnegative && f.radially_decreasing) {
    // The superlevel sets of f are the sets rK ∩ C, so among all sets of
    // measure mu(hK∩C) the integral is largest on hK ∩ C itself.
    const QuadratureResult r = integrate_sector(f, params, out.maximizer, opts.quad);
    out.value = std::abs(r.value);
    out.error_estimate = r.error_estimate;
    out.evaluations = r.evaluations;
    out.exact_maximizer = true;
    return out;
  }
  if (!f.compactly_supported()) throw DomainError("seminorm_h: '" + f.id + "' has unbounded support");
  if (separable_on_box(f, params)) return separable_seminorm_h(f, params);

  const double R = f.support_radius;
  const int m = params.m();
  const auto semi = params.body().semi_axes();
  const int cap = opts.max_grid_per_axis > 0 ? opts.max_grid_per_axis : default_grid_cap(d);
  std::vector<double> lo(d), pitch(d);
  std::vector<int> count(d);
  for (int i = 0; i < d; ++i) {
    const double hi = (R + (i < m ? 0.0 : h)) * semi[i];
    lo[i] = i < m ? 0.0 : -hi;
    const double range = hi - lo[i];
    const double nominal = opts.pitch_fraction * h * semi[i];
    count[i] = std::clamp(static_cast<int>(std::floor(range / nominal)) + 1, 2, cap);
    pitch[i] = range / (count[i] - 1);
  }

  const ScalarField& eval = f.eval;
  auto coarse = [&](std::span<const double> x) {
    return std::abs(integrate_sector_fixed(eval, params.body(), params.cone(), h, x, opts.coarse_order, opts.coarse_cells));
  };

  std::vector<std::pair<double, std::vector<double>>> scored;
  std::vector<int> idx(d, 0);
  std::vector<double> x(d);
  while (true) {
    for (int i = 0; i < d; ++i) x[i] = lo[i] + idx[i] * pitch[i];
    scored.emplace_back(coarse(x), x);
    int k = 0;
    while (k < d && ++idx[k] == count[k]) idx[k++] = 0;
    if (k == d) break;
  }
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(opts.refine_candidates, 1)), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });

  // Pattern search on the cheap rule, then one adaptive integral at each
  // local optimum. The result is an attained value, hence a lower bound.
  auto objective = [&](const std::vector<double>& base) { return coarse(base); };
  out.value = -1.0;
  for (std::size_t c = 0; c < keep; ++c) {
    const SearchResult r = compass_search(objective, scored[c].second, scored[c].first, pitch, m, 8);
    if (opts.coarse_only) {
      if (r.value > out.value) {
        out.value = r.value;
        out.maximizer = r.x;
      }
      continue;
    }
    const QuadratureResult q = integrate_sector(eval, params.body(), params.cone(), h, r.x, opts.quad);
    out.evaluations += q.evaluations;
    if (std::abs(q.value) > out.value) {
      out.value = std::abs(q.value);
      out.error_estimate = q.error_estimate;
      out.maximizer = r.x;
    }
  }
  return out;
}

SeminormEstimate seminorm_sup(const TestFunction& f, const InequalityParams& params, const SeminormOptions& opts,
                              std::span<const double> h_grid) {
  if (!f.compactly_supported()) throw DomainError("seminorm_sup: '" + f.id + "' has unbounded support");
  SeminormEstimate out;
  const int d = params.d();
  out.maximizer.assign(d, 0.0);
  const double R = f.support_radius;

  if (f.nonnegative) {
    // h -> sector integrals increase to the full integral over C.
    const QuadratureResult r = integrate_sector(f.eval, params.body(), params.cone(), R, out.maximizer, opts.quad);
    out.value = std::abs(r.value);
    out.error_estimate = r.error_estimate;
    out.evaluations = r.evaluations;
    out.exact_maximizer = true;
    out.h_at_max = kInf;
    return out;
  }

  const bool separable = separable_on_box(f, params);
  std::vector<double> grid(h_grid.begin(), h_grid.end());
  if (grid.empty() && separable) {
    // Cheap enough for a wider and denser scan.
    const double a = std::log(R / 64.0);
    const double b = std::log(4.0 * R);
    for (int i = 0; i < 65; ++i) grid.push_back(std::exp(a + (b - a) * i / 64));
  } else if (grid.empty()) {
    const int n = std::max(opts.h_grid_points, 2);
    const double a = std::log(R / 16.0);
    const double b = std::log(2.0 * R);
    for (int i = 0; i < n; ++i) grid.push_back(std::exp(a + (b - a) * i / (n - 1)));
  }

  // Cheap scan: coarse grid search only.
  SeminormOptions scan = opts;
  scan.refine_candidates = 1;
  scan.coarse_only = true;
  if (scan.max_grid_per_axis == 0) scan.max_grid_per_axis = std::min(default_grid_cap(d), 9);
  std::size_t best = 0;
  double best_value = -1.0;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SeminormEstimate s = seminorm_h(f, params.with_h(grid[i]), scan);
    values[i] = s.value;
    out.evaluations += s.evaluations;
    if (s.value > best_value) {
      best_value = s.value;
      best = i;
    }
  }

  // Golden-section refinement between the neighbours of the best grid point.
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min(best + 1, grid.size() - 1)];
  double best_h = grid[best];
  if (b > a) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    auto value_at = [&](double hh) {
      const SeminormEstimate s = seminorm_h(f, params.with_h(hh), scan);
      out.evaluations += s.evaluations;
      if (s.value > best_value) {
        best_value = s.value;
        best_h = hh;
      }
      return s.value;
    };
    double c = b - phi * (b - a);
    double e = a + phi * (b - a);
    double fc = value_at(c);
    double fe = value_at(e);
    for (int it = 0; it < 10; ++it) {
      if (fc > fe) {
        b = e;
        e = c;
        fe = fc;
        c = b - phi * (b - a);
        fc = value_at(c);
      } else {
        a = c;
        c = e;
        fc = fe;
        e = a + phi * (b - a);
        fe = value_at(e);
      }
    }
  }

  const SeminormEstimate final = seminorm_h(f, params.with_h(best_h), opts);
  out.evaluations += final.evaluations;
  out.value = final.value;
  out.error_estimate = final.error_estimate;
  out.maximizer = final.maximizer;
  out.h_at_max = best_h;
  return out;
}

}  // namespace lkn
