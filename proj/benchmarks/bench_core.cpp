#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lkn/certify.hpp"
#include "lkn/constants.hpp"
#include "lkn/extremal.hpp"
#include "lkn/numerics.hpp"
#include "lkn/operators.hpp"
#include "lkn/registry.hpp"

using namespace lkn;

namespace {

InequalityParams box_params(int d, double p, double h, int m) {
  return InequalityParams(p, h, ConvexBody::box(d), ConeSpec(d, m));
}

void BM_KernelNorm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const InequalityParams params = box_params(d, d + 1.0, 0.7, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_norm(params));
}
BENCHMARK(BM_KernelNorm)->DenseRange(1, 3);

void BM_RadialProfileBuild(benchmark::State& state) {
  const InequalityParams params = box_params(3, 4.0, 1.0, 1);
  for (auto _ : state) {
    RadialProfile profile(params);
    benchmark::DoNotOptimize(profile.peak());
  }
}
BENCHMARK(BM_RadialProfileBuild)->Unit(benchmark::kMillisecond);

void BM_RadialProfileLookup(benchmark::State& state) {
  const RadialProfile profile(box_params(3, 4.0, 1.0, 1));
  double r = 0.0;
  for (auto _ : state) {
    r = r > 0.999 ? 1e-3 : r + 0.0137;
    benchmark::DoNotOptimize(profile(r));
  }
}
BENCHMARK(BM_RadialProfileLookup);

void BM_ExtremalBoxMass(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const RadialProfile profile(box_params(d, kInf, 1.0, 0));
  const std::vector<double> b(d, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(extremal_box_mass(profile, b));
}
BENCHMARK(BM_ExtremalBoxMass)->DenseRange(1, 3);

void BM_CubatureGaussian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const std::vector<double> lo(d, -1.0), hi(d, 1.0);
  auto f = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::exp(-s);
  };
  QuadratureOptions q;
  q.tol = 1e-10;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_box(f, lo, hi, q).value);
}
BENCHMARK(BM_CubatureGaussian)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_SeminormProduct(benchmark::State& state) {
  const InequalityParams params = box_params(3, 4.0, 0.5, 1);
  const TestFunction f = random_registry_function(params, 7);
  for (auto _ : state) benchmark::DoNotOptimize(seminorm_h(f, params, {}).value);
}
BENCHMARK(BM_SeminormProduct)->Unit(benchmark::kMillisecond);

void BM_MixedDifference(benchmark::State& state) {
  const InequalityParams params = box_params(2, kInf, 0.4, 1);
  const TestFunction G = antiderivative_G(box_params(2, kInf, 1.0, 1));
  const DifferenceScheme scheme = DifferenceScheme::for_params(params);
  const std::vector<double> x{0.3, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(mixed_difference(G, scheme, x));
}
BENCHMARK(BM_MixedDifference);

void BM_CertifyNagyAdditive(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const InequalityParams params = box_params(d, d + 1.0, 1.0, 1);
  const TestFunction f = random_registry_function(params, 3);
  for (auto _ : state) benchmark::DoNotOptimize(certify_nagy_additive(f, params).ratio);
}
BENCHMARK(BM_CertifyNagyAdditive)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_SharpnessSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sharpness_suite().size());
}
BENCHMARK(BM_SharpnessSuite)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
