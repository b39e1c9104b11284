#include <benchmark/benchmark.h>

#include <memory>

#include "photontail/asymptotics.hpp"
#include "photontail/groundstate.hpp"
#include "photontail/hamiltonian.hpp"
#include "photontail/pullthrough.hpp"
#include "photontail/surrogate.hpp"

using namespace photontail;

namespace {

ModelConfig desk(int n_max) {
  ModelConfig c;
  c.n_max = n_max;
  return c;
}

const SpectralSurrogate& desk_surrogate() {
  static const SpectralSurrogate s =
      SpectralSurrogate::from_model(std::make_shared<const AssembledModel>(assemble(desk(2))));
  return s;
}

void BM_Assemble(benchmark::State& state) {
  const ModelConfig c = desk(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(c));
}
BENCHMARK(BM_Assemble)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_GroundState(benchmark::State& state) {
  const AssembledModel m = assemble(desk(static_cast<int>(state.range(0))));
  state.counters["dim"] = static_cast<double>(m.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(m));
}
BENCHMARK(BM_GroundState)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_PhotonAmplitude(benchmark::State& state) {
  const auto& s = desk_surrogate();
  double r = 0.5;
  for (auto _ : state) {
    // a fresh |k| each time, so the resolvent cache does not hide the work
    r += 1e-7;
    benchmark::DoNotOptimize(photon_amplitude(s, Vec3(0.3, -0.2, 1.0).normalized() * r));
  }
}
BENCHMARK(BM_PhotonAmplitude)->Unit(benchmark::kMicrosecond);

void BM_BFieldContour(benchmark::State& state) {
  const auto& s = desk_surrogate();
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(b_field(s, Vec3(0.0, r, 0.0)));
}
BENCHMARK(BM_BFieldContour)->Arg(10)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_AHat(benchmark::State& state) {
  const auto& s = desk_surrogate();
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a_hat(s, Vec3(0.0, r, 0.0)));
}
BENCHMARK(BM_AHat)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
