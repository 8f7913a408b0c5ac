#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lkn {

// Halton sequence in [0,1)^dim with a seeded Cranley-Patterson rotation.
// The same (dim, seed) always yields the same stream.
class HaltonSequence {
 public:
  HaltonSequence(int dim, std::uint64_t seed);

  void next(std::span<double> out);
  std::uint64_t index() const { return index_; }

 private:
  std::vector<unsigned> bases_;
  std::vector<double> shift_;
  std::uint64_t index_ = 1;
};

}  // namespace lkn
