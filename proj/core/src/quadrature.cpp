#include "lkn/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <queue>

namespace lkn {
namespace {

constexpr int kMaxCubatureDim = 8;
constexpr int kMaxRuleOrder = 64;

GaussRule build_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

int default_order(int dim) {
  switch (dim) {
    case 1: return 10;
    case 2: return 7;
    case 3: return 5;
    case 4: return 4;
    default: return 3;
  }
}

struct Cell {
  std::array<double, kMaxCubatureDim> lo{};
  std::array<double, kMaxCubatureDim> hi{};
  std::array<int, kMaxCubatureDim> depth{};
  double coarse = 0.0;
  double fine = 0.0;
  double fine_abs = 0.0;  // same rule applied to |f|
  double err = 0.0;
  double left = 0.0;
  double right = 0.0;
  int axis = -1;  // -1: cannot be split further
  bool alive = true;
};

class Cubature {
 public:
  Cubature(const UnitIntegrand& f, int dim, const QuadratureOptions& opts)
      : f_(f), dim_(dim), opts_(opts), rule_(gauss_legendre(default_order(dim))) {}

  QuadratureResult run() {
    seed_cells();
    double total_value = 0.0;
    double total_abs = 0.0;
    double total_err = 0.0;
    resum(total_value, total_abs, total_err);
    std::size_t splits = 0;
    while (total_err > target(total_value, total_abs)) {
      if (evaluations_ > opts_.max_evaluations) {
        if (opts_.best_effort) break;
        fail("evaluation budget exhausted", total_value, total_err);
      }
      const std::size_t idx = pop_worst();
      if (idx == kNone) {
        if (opts_.best_effort) break;
        fail("refinement cap reached", total_value, total_err);
      }
      Cell parent = cells_[idx];
      cells_[idx].alive = false;
      Cell a = parent;
      Cell b = parent;
      const int k = parent.axis;
      const double mid = 0.5 * (parent.lo[k] + parent.hi[k]);
      a.hi[k] = mid;
      b.lo[k] = mid;
      a.depth[k] += 1;
      b.depth[k] += 1;
      a.coarse = parent.left;
      b.coarse = parent.right;
      analyze(a);
      analyze(b);
      total_value += a.fine + b.fine - parent.fine;
      total_abs += a.fine_abs + b.fine_abs - parent.fine_abs;
      total_err += a.err + b.err - parent.err;
      push(std::move(a));
      push(std::move(b));
      if (++splits % 1024 == 0) resum(total_value, total_abs, total_err);
    }
    resum(total_value, total_abs, total_err);
    return {total_value, total_err, evaluations_};
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Relative to ∫|f| when that is larger, so integrals that nearly cancel
  // still terminate.
  double target(double value, double abs_value) const {
    return std::max(opts_.abs_tol, opts_.tol * std::max(std::abs(value), abs_value));
  }

  [[noreturn]] void fail(const char* why, double value, double err) const {
    throw QuadratureError(std::string("cubature did not converge: ") + why + " (error estimate " +
                              std::to_string(err) + ", value " + std::to_string(value) + ")",
                          QuadratureResult{value, err, evaluations_});
  }

  void resum(double& value, double& abs_value, double& err) const {
    value = 0.0;
    abs_value = 0.0;
    err = 0.0;
    for (const Cell& c : cells_) {
      if (!c.alive) continue;
      value += c.fine;
      abs_value += c.fine_abs;
      err += c.err;
    }
  }

  // Rule applied to f and to |f|.
  std::pair<double, double> tensor(const std::array<double, kMaxCubatureDim>& lo,
                                   const std::array<double, kMaxCubatureDim>& hi) {
    const int n = static_cast<int>(rule_.nodes.size());
    std::array<std::array<double, kMaxRuleOrder>, kMaxCubatureDim> xs;
    std::array<std::array<double, kMaxRuleOrder>, kMaxCubatureDim> ws;
    for (int k = 0; k < dim_; ++k) {
      const double half = 0.5 * (hi[k] - lo[k]);
      const double mid = 0.5 * (hi[k] + lo[k]);
      for (int i = 0; i < n; ++i) {
        xs[k][i] = mid + half * rule_.nodes[i];
        ws[k][i] = half * rule_.weights[i];
      }
    }
    std::array<int, kMaxCubatureDim> idx{};
    std::array<double, kMaxCubatureDim> point{};
    for (int k = 0; k < dim_; ++k) point[k] = xs[k][0];
    const std::span<const double> view(point.data(), static_cast<std::size_t>(dim_));
    double sum = 0.0;
    double sum_abs = 0.0;
    while (true) {
      double w = 1.0;
      for (int k = 0; k < dim_; ++k) w *= ws[k][idx[k]];
      const double v = w * f_(view);
      sum += v;
      sum_abs += std::abs(v);
      ++evaluations_;
      int k = 0;
      while (k < dim_) {
        if (++idx[k] < n) {
          point[k] = xs[k][idx[k]];
          break;
        }
        idx[k] = 0;
        point[k] = xs[k][0];
        ++k;
      }
      if (k == dim_) break;
    }
    return {sum, sum_abs};
  }

  void analyze(Cell& c) {
    double worst = -1.0;
    double worst_splittable = -1.0;
    c.axis = -1;
    for (int k = 0; k < dim_; ++k) {
      const double mid = 0.5 * (c.lo[k] + c.hi[k]);
      auto hi = c.hi;
      auto lo = c.lo;
      hi[k] = mid;
      lo[k] = mid;
      const auto [l, l_abs] = tensor(c.lo, hi);
      const auto [r, r_abs] = tensor(lo, c.hi);
      const double e = std::abs(c.coarse - (l + r));
      if (e > worst) {
        worst = e;
        c.fine = l + r;
        c.fine_abs = l_abs + r_abs;
      }
      if (c.depth[k] < opts_.max_depth && e > worst_splittable) {
        worst_splittable = e;
        c.axis = k;
        c.left = l;
        c.right = r;
      }
    }
    c.err = worst;
  }

  void seed_cells() {
    const int level = std::clamp(opts_.min_depth, 1, opts_.max_depth);
    const int per_axis = 1 << level;
    const double width = 1.0 / per_axis;
    std::array<int, kMaxCubatureDim> idx{};
    while (true) {
      Cell c;
      for (int k = 0; k < dim_; ++k) {
        c.lo[k] = idx[k] * width;
        c.hi[k] = (idx[k] + 1) * width;
        c.depth[k] = level;
      }
      c.coarse = tensor(c.lo, c.hi).first;
      analyze(c);
      push(std::move(c));
      int k = 0;
      while (k < dim_ && ++idx[k] == per_axis) idx[k++] = 0;
      if (k == dim_) break;
    }
  }

  void push(Cell c) {
    cells_.push_back(std::move(c));
    const std::size_t idx = cells_.size() - 1;
    if (cells_[idx].axis >= 0) queue_.push({cells_[idx].err, idx});
  }

  std::size_t pop_worst() {
    while (!queue_.empty()) {
      const auto [err, idx] = queue_.top();
      queue_.pop();
      if (cells_[idx].alive) return idx;
    }
    return kNone;
  }

  const UnitIntegrand& f_;
  int dim_;
  QuadratureOptions opts_;
  const GaussRule& rule_;
  std::vector<Cell> cells_;
  std::priority_queue<std::pair<double, std::size_t>> queue_;
  std::size_t evaluations_ = 0;
};

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > kMaxRuleOrder) throw std::invalid_argument("gauss_legendre: order out of range");
  static std::array<GaussRule, kMaxRuleOrder + 1> cache;
  static std::array<std::once_flag, kMaxRuleOrder + 1> flags;
  std::call_once(flags[n], [n] { cache[n] = build_gauss_legendre(n); });
  return cache[n];
}

QuadratureResult cubature_unit(const UnitIntegrand& f, int dim, const QuadratureOptions& opts) {
  if (dim < 1 || dim > kMaxCubatureDim) throw std::invalid_argument("cubature_unit: dimension out of range");
  return Cubature(f, dim, opts).run();
}

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts) {
  if (a == b) return {};
  const double width = b - a;
  auto mapped = [&](std::span<const double> u) { return f(a + width * u[0]); };
  QuadratureResult r;
  try {
    r = cubature_unit(mapped, 1, opts);
  } catch (const QuadratureError& e) {
    QuadratureResult p = e.partial();
    throw QuadratureError(e.what(), {p.value * width, p.error_estimate * std::abs(width), p.evaluations});
  }
  r.value *= width;
  r.error_estimate *= std::abs(width);
  return r;
}

}  // namespace lkn
