#include "lkn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "lkn/halton.hpp"

namespace lkn {
namespace {

void check_dim(int expected, std::size_t got, const char* what) {
  if (static_cast<std::size_t>(expected) != got) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (expected " +
                                std::to_string(expected) + ", got " + std::to_string(got) + ")");
  }
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

std::string to_string(BodyFamily family) {
  return family == BodyFamily::box ? "box" : "lq_ball";
}

BodyFamily body_family_from_string(const std::string& name) {
  if (name == "box") return BodyFamily::box;
  if (name == "lq_ball") return BodyFamily::lq_ball;
  throw std::invalid_argument("unknown body family '" + name + "' (expected box or lq_ball)");
}

ConvexBody::ConvexBody(BodyFamily family, int dim, double q, std::vector<double> semi_axes)
    : family_(family), dim_(dim), q_(q), q_conj_(0.0), semi_axes_(std::move(semi_axes)) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("ConvexBody: dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }
  if (semi_axes_.empty()) semi_axes_.assign(static_cast<std::size_t>(dim), 1.0);
  check_dim(dim, semi_axes_.size(), "ConvexBody semi_axes");
  for (double s : semi_axes_) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("ConvexBody: semi-axes must be positive");
  }
  if (family_ == BodyFamily::lq_ball) {
    if (!(q_ >= 1.0) || !std::isfinite(q_)) throw std::invalid_argument("ConvexBody: l_q ball needs finite q >= 1");
    q_conj_ = q_ == 1.0 ? std::numeric_limits<double>::infinity() : q_ / (q_ - 1.0);
  }
}

ConvexBody ConvexBody::box(int dim, std::vector<double> semi_axes) {
  return ConvexBody(BodyFamily::box, dim, 0.0, std::move(semi_axes));
}

ConvexBody ConvexBody::lq_ball(int dim, double q, std::vector<double> semi_axes) {
  return ConvexBody(BodyFamily::lq_ball, dim, q, std::move(semi_axes));
}

bool ConvexBody::unit_axes() const {
  return std::all_of(semi_axes_.begin(), semi_axes_.end(), [](double s) { return s == 1.0; });
}

double ConvexBody::gauge(std::span<const double> x) const {
  check_dim(dim_, x.size(), "gauge");
  double largest = 0.0;
  for (int i = 0; i < dim_; ++i) largest = std::max(largest, std::abs(x[i]) / semi_axes_[i]);
  if (family_ == BodyFamily::box || largest == 0.0) return largest;
  if (q_ == 1.0) {
    double sum = 0.0;
    for (int i = 0; i < dim_; ++i) sum += std::abs(x[i]) / semi_axes_[i];
    return sum;
  }
  // Scaled by the largest component so large q cannot overflow.
  double sum = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double r = std::abs(x[i]) / semi_axes_[i] / largest;
    sum += q_ == 2.0 ? r * r : std::pow(r, q_);
  }
  return largest * (q_ == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / q_));
}

double ConvexBody::unit_gauge_positive(std::span<const double> x) const {
  if (family_ == BodyFamily::box) return *std::max_element(x.begin(), x.end());
  if (q_ == 1.0) {
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum;
  }
  const double largest = *std::max_element(x.begin(), x.end());
  if (largest == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : x) {
    const double r = v / largest;
    sum += q_ == 2.0 ? r * r : std::pow(r, q_);
  }
  return largest * (q_ == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / q_));
}

double ConvexBody::dual_norm(std::span<const double> z) const {
  check_dim(dim_, z.size(), "dual_norm");
  if (family_ == BodyFamily::box) {
    double sum = 0.0;
    for (int i = 0; i < dim_; ++i) sum += semi_axes_[i] * std::abs(z[i]);
    return sum;
  }
  double largest = 0.0;
  for (int i = 0; i < dim_; ++i) largest = std::max(largest, semi_axes_[i] * std::abs(z[i]));
  if (std::isinf(q_conj_) || largest == 0.0) return largest;
  if (q_conj_ == 1.0) {
    double sum = 0.0;
    for (int i = 0; i < dim_; ++i) sum += semi_axes_[i] * std::abs(z[i]);
    return sum;
  }
  double sum = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double r = semi_axes_[i] * std::abs(z[i]) / largest;
    sum += q_conj_ == 2.0 ? r * r : std::pow(r, q_conj_);
  }
  return largest * (q_conj_ == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / q_conj_));
}

void ConvexBody::gauge_gradient(std::span<const double> x, std::span<double> out) const {
  check_dim(dim_, x.size(), "gauge_gradient");
  check_dim(dim_, out.size(), "gauge_gradient");
  std::fill(out.begin(), out.end(), 0.0);
  if (family_ == BodyFamily::box || q_ == 1.0) {
    if (family_ == BodyFamily::box) {
      int arg = 0;
      double best = -1.0;
      for (int i = 0; i < dim_; ++i) {
        const double r = std::abs(x[i]) / semi_axes_[i];
        if (r > best) {
          best = r;
          arg = i;
        }
      }
      out[arg] = sign_of(x[arg]) / semi_axes_[arg];
    } else {
      for (int i = 0; i < dim_; ++i) {
        if (x[i] != 0.0) out[i] = sign_of(x[i]) / semi_axes_[i];
      }
    }
    return;
  }
  const double g = gauge(x);
  if (g == 0.0) return;
  for (int i = 0; i < dim_; ++i) {
    const double r = std::abs(x[i]) / semi_axes_[i] / g;
    out[i] = sign_of(x[i]) * (q_ == 2.0 ? r : std::pow(r, q_ - 1.0)) / semi_axes_[i];
  }
}

void ConvexBody::support_point(std::span<const double> z, std::span<double> out) const {
  check_dim(dim_, z.size(), "support_point");
  check_dim(dim_, out.size(), "support_point");
  std::fill(out.begin(), out.end(), 0.0);
  if (family_ == BodyFamily::box) {
    for (int i = 0; i < dim_; ++i) out[i] = semi_axes_[i] * sign_of(z[i]);
    return;
  }
  const double norm = dual_norm(z);
  if (norm == 0.0) {
    out[0] = semi_axes_[0];
    return;
  }
  if (std::isinf(q_conj_)) {
    int arg = 0;
    for (int i = 1; i < dim_; ++i) {
      if (semi_axes_[i] * std::abs(z[i]) > semi_axes_[arg] * std::abs(z[arg])) arg = i;
    }
    out[arg] = semi_axes_[arg] * sign_of(z[arg]);
    return;
  }
  for (int i = 0; i < dim_; ++i) {
    const double w = semi_axes_[i] * std::abs(z[i]) / norm;
    out[i] = semi_axes_[i] * sign_of(z[i]) * std::pow(w, q_conj_ - 1.0);
  }
}

double ConvexBody::volume() const {
  double prod = 1.0;
  for (double s : semi_axes_) prod *= 2.0 * s;
  if (family_ == BodyFamily::box) return prod;
  // Dirichlet: vol(B_q^d) = (2 Gamma(1 + 1/q))^d / Gamma(1 + d/q).
  const double log_ratio = dim_ * boost::math::lgamma(1.0 + 1.0 / q_) - boost::math::lgamma(1.0 + dim_ / q_);
  return prod * std::exp(log_ratio);
}

ConeSpec::ConeSpec(int d, int orthants) : dim(d), m(orthants) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("ConeSpec: dimension out of range");
  if (orthants < 0 || orthants > d) throw std::invalid_argument("ConeSpec: need 0 <= m <= d");
}

bool ConeSpec::contains(std::span<const double> x) const {
  check_dim(dim, x.size(), "ConeSpec::contains");
  for (int i = 0; i < m; ++i) {
    if (!(x[i] > 0.0)) return false;
  }
  return true;
}

double gauge(const ConvexBody& body, std::span<const double> x) { return body.gauge(x); }

double dual_norm(const ConvexBody& body, std::span<const double> z) { return body.dual_norm(z); }

double sector_volume(const ConvexBody& body, const ConeSpec& cone) {
  if (body.dim() != cone.dim) throw std::invalid_argument("sector_volume: body and cone dimensions differ");
  // Axis symmetry: every orthant carries an equal share of vol(K).
  return std::ldexp(body.volume(), -cone.m);
}

double SectorSample::volume_estimate() const {
  if (trials == 0) return 0.0;
  return box_volume * static_cast<double>(size()) / static_cast<double>(trials);
}

SectorSample sample_sector(const ConvexBody& body, const ConeSpec& cone, double h, std::size_t n,
                           std::uint64_t seed) {
  if (body.dim() != cone.dim) throw std::invalid_argument("sample_sector: body and cone dimensions differ");
  if (n < 1) throw std::invalid_argument("sample_sector: need n >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("sample_sector: need h > 0");

  const int d = body.dim();
  std::vector<double> lo(d), width(d);
  double box_volume = 1.0;
  for (int i = 0; i < d; ++i) {
    const double extent = h * body.semi_axes()[i];
    lo[i] = i < cone.m ? 0.0 : -extent;
    width[i] = i < cone.m ? extent : 2.0 * extent;
    box_volume *= width[i];
  }

  SectorSample out;
  out.dim = d;
  out.box_volume = box_volume;
  out.coords.reserve(n * static_cast<std::size_t>(d));

  HaltonSequence seq(d, seed);
  std::vector<double> u(d), x(d);
  constexpr std::size_t kMinTrials = 1000;
  constexpr double kMinEfficiency = 1e-3;
  while (out.size() < n) {
    seq.next(u);
    ++out.trials;
    for (int i = 0; i < d; ++i) x[i] = lo[i] + width[i] * u[i];
    if (cone.contains(x) && body.gauge(x) < h) out.coords.insert(out.coords.end(), x.begin(), x.end());
    if (out.trials >= kMinTrials &&
        static_cast<double>(out.size()) < kMinEfficiency * static_cast<double>(out.trials)) {
      throw std::runtime_error("sample_sector: rejection efficiency below 1e-3 (degenerate body?)");
    }
  }
  return out;
}

}  // namespace lkn
