#include "lkn/halton.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lkn {
namespace {

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(std::uint64_t i, unsigned base) {
  const double inv_base = 1.0 / base;
  double factor = inv_base;
  double result = 0.0;
  while (i > 0) {
    result += static_cast<double>(i % base) * factor;
    i /= base;
    factor *= inv_base;
  }
  return result;
}

}  // namespace

HaltonSequence::HaltonSequence(int dim, std::uint64_t seed) {
  if (dim < 1 || dim > static_cast<int>(std::size(kPrimes))) {
    throw std::invalid_argument("HaltonSequence: unsupported dimension");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int k = 0; k < dim; ++k) {
    bases_.push_back(kPrimes[k]);
    shift_.push_back(uni(rng));
  }
}

void HaltonSequence::next(std::span<double> out) {
  for (std::size_t k = 0; k < bases_.size(); ++k) {
    double v = radical_inverse(index_, bases_[k]) + shift_[k];
    out[k] = v - std::floor(v);
  }
  ++index_;
}

}  // namespace lkn
