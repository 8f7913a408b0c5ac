#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lkn {

// Upper bound on the ambient dimension. Tensor cubature cost grows like n^d,
// so everything above 4 is impractical anyway; the slack is for tests.
inline constexpr int kMaxDim = 6;

enum class BodyFamily { box, lq_ball };

std::string to_string(BodyFamily family);
BodyFamily body_family_from_string(const std::string& name);

// Origin-symmetric convex body K, either an axis-scaled box
//   K = prod_i (-s_i, s_i)
// or an axis-scaled l_q ball
//   K = { x : sum_i |x_i / s_i|^q < 1 },  q >= 1.
// Gauge and dual norm are closed form for both families.
class ConvexBody {
 public:
  static ConvexBody box(int dim, std::vector<double> semi_axes = {});
  static ConvexBody lq_ball(int dim, double q, std::vector<double> semi_axes = {});

  BodyFamily family() const { return family_; }
  int dim() const { return dim_; }
  // Exponent of the l_q family; 0 for boxes.
  double q() const { return q_; }
  std::span<const double> semi_axes() const { return semi_axes_; }
  bool unit_axes() const;

  // |x|_K = inf{ lambda > 0 : x in lambda K }.
  double gauge(std::span<const double> x) const;

  // |z|_{K°} = sup{ (x, z) : |x|_K <= 1 }.
  double dual_norm(std::span<const double> z) const;

  // Gradient of the gauge at x != 0. It lies on the dual unit sphere, so
  // dual_norm(gradient) == 1. At box ties the lowest maximizing axis wins.
  void gauge_gradient(std::span<const double> x, std::span<double> out) const;

  // A point x with |x|_K = 1 and (x, z) = |z|_{K°}.
  void support_point(std::span<const double> z, std::span<double> out) const;

  // Gauge of the body with unit semi-axes, evaluated on x >= 0 componentwise.
  double unit_gauge_positive(std::span<const double> x) const;

  // Lebesgue measure of K.
  double volume() const;

 private:
  ConvexBody(BodyFamily family, int dim, double q, std::vector<double> semi_axes);

  BodyFamily family_;
  int dim_;
  double q_;
  double q_conj_;
  std::vector<double> semi_axes_;
};

// Open cone C = R_+^m x R^{d-m}.
struct ConeSpec {
  int dim = 1;
  int m = 0;

  ConeSpec() = default;
  ConeSpec(int dim, int m);

  bool contains(std::span<const double> x) const;
  // Number of full orthants making up C, i.e. 2^{d-m}.
  int orthant_count() const { return 1 << (dim - m); }
};

double gauge(const ConvexBody& body, std::span<const double> x);
double dual_norm(const ConvexBody& body, std::span<const double> z);

// mu(K ∩ C). Callers scale by h^d for mu(hK ∩ C).
double sector_volume(const ConvexBody& body, const ConeSpec& cone);

// Points laid out row-major, `dim` coordinates per point.
struct SectorSample {
  int dim = 0;
  std::vector<double> coords;
  std::size_t trials = 0;
  double box_volume = 0.0;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / static_cast<std::size_t>(dim); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  // Rejection estimate of mu(hK ∩ C).
  double volume_estimate() const;
};

// Seeded low-discrepancy points in hK ∩ C, drawn by rejection from the
// bounding box of the sector. Throws std::runtime_error when the acceptance
// rate drops below 1e-3.
SectorSample sample_sector(const ConvexBody& body, const ConeSpec& cone, double h, std::size_t n,
                           std::uint64_t seed);

}  // namespace lkn
