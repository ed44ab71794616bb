#include <benchmark/benchmark.h>

#include "nilshift/bfm/bfm.hpp"
#include "nilshift/peterson/peterson.hpp"

using namespace nilshift;

namespace {

std::shared_ptr<const QHModule> module_of(const std::string& name) {
  return std::make_shared<const QHModule>(QHModule::build(ToricData::catalog(name)));
}

// Braid word A1 A2 A1 in SU3: exercises the twisted product with rational coefficients.
void BM_ConvolveBraidSU3(benchmark::State& state) {
  auto d = RootDatum::parse("SU3");
  auto A1 = demazure(d, 0), A2 = demazure(d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(convolve(A1, A2), A1));
}
BENCHMARK(BM_ConvolveBraidSU3);

void BM_SymmetrizerSU3(benchmark::State& state) {
  auto d = RootDatum::parse("SU3");
  auto z = NilHeckeElement::basis(AffineWeylElement::translation(d, {1, 0}));
  for (auto _ : state) benchmark::DoNotOptimize(symmetrize(z));
}
BENCHMARK(BM_SymmetrizerSU3);

void BM_QuantumCohomology(benchmark::State& state, const char* name) {
  for (auto _ : state) benchmark::DoNotOptimize(QHModule::build(ToricData::catalog(name)));
}
BENCHMARK_CAPTURE(BM_QuantumCohomology, CP2, "CP2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_QuantumCohomology, Bl3, "Bl3")->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state, const char* name, const char* group) {
  auto m = module_of(name);
  auto a = GroupAction::make(*m, group);
  for (auto _ : state) benchmark::DoNotOptimize(solve(m, a));
}
BENCHMARK_CAPTURE(BM_Solve, CP1_SU2, "CP1", "SU2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, CP2, "CP2", "T")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, CP3, "CP3", "T")->Unit(benchmark::kMillisecond);

void BM_Validate(benchmark::State& state, const char* name) {
  auto m = module_of(name);
  auto s = solve(m, GroupAction::make(*m, "T"));
  for (auto _ : state) benchmark::DoNotOptimize(validate(s));
}
BENCHMARK_CAPTURE(BM_Validate, CP2, "CP2")->Unit(benchmark::kMillisecond);

void BM_Peterson(benchmark::State& state) {
  auto m = module_of("CP1xCP1");
  auto s = solve(m, GroupAction::make(*m, "T"));
  for (auto _ : state) {
    PetersonTable t;
    benchmark::DoNotOptimize(peterson_homomorphism_check(s, t, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Peterson)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Annihilator(benchmark::State& state, const char* name) {
  auto m = module_of(name);
  auto mod = pontryagin_module(u0_datum(m, GroupAction::make(*m, "T")));
  for (auto _ : state) benchmark::DoNotOptimize(annihilator_ideal(mod));
}
BENCHMARK_CAPTURE(BM_Annihilator, CP2, "CP2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Annihilator, Bl3, "Bl3")->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
