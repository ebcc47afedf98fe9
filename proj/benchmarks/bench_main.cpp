#include <benchmark/benchmark.h>

#include "gencontact/builders.hpp"
#include "gencontact/builtins.hpp"
#include "gencontact/expression.hpp"
#include "gencontact/integrability.hpp"
#include "gencontact/mixed_pair.hpp"
#include "gencontact/scenario.hpp"
#include "gencontact/tduality.hpp"

using namespace gencontact;

namespace {

void BM_SphereRingProduct(benchmark::State& state) {
  const ModelPtr m = builtin_model("s3");
  const FunctionElement u = parse_scalar("x1^3 - 3*x1*x2^2 + i*x4^2*x3", Scope(m));
  const FunctionElement v = parse_scalar("x4^3 + 2*x2*x4 - x1", Scope(m));
  for (auto _ : state) benchmark::DoNotOptimize(u * v);
}
BENCHMARK(BM_SphereRingProduct);

void BM_DorfmanFormal(benchmark::State& state) {
  const ModelPtr m = builtin_model("s3-formal");
  const GenSection x = parse_section("-nu1 - f*V2 - g*V3", Scope(m));
  const GenSection y = parse_section("nu3 - g*V1 - i*(-nu2 + f*V1)", Scope(m));
  for (auto _ : state) benchmark::DoNotOptimize(dorfman(*m, x, y));
}
BENCHMARK(BM_DorfmanFormal);

void BM_NormalityCubic(benchmark::State& state) {
  const BuiltStructure s = builtin_example("s3-family", {{"h", "z^3"}});
  for (auto _ : state) benchmark::DoNotOptimize(normality_check(s.triple));
}
BENCHMARK(BM_NormalityCubic)->Unit(benchmark::kMillisecond);

void BM_IntegrabilityFormal(benchmark::State& state) {
  const BuiltStructure s = builtin_example("s3-family", {});
  for (auto _ : state) benchmark::DoNotOptimize(integrability_check(s.pair));
}
BENCHMARK(BM_IntegrabilityFormal)->Unit(benchmark::kMillisecond);

void BM_CourantAxioms(benchmark::State& state) {
  const ModelPtr m = builtin_model(state.range(0) == 0 ? "heisenberg" : "triple-contact-7d");
  const auto gens = GenSection::generators(*m);
  for (auto _ : state) benchmark::DoNotOptimize(courant_axioms_check(*m, gens));
  state.SetLabel(m->name());
}
BENCHMARK(BM_CourantAxioms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MixedPair(benchmark::State& state) {
  const BuiltStructure s = builtin_example("s3-family", {{"h", "z*w"}});
  for (auto _ : state) benchmark::DoNotOptimize(mixed_pair_of(s));
}
BENCHMARK(BM_MixedPair)->Unit(benchmark::kMillisecond);

void BM_HopfDual(benchmark::State& state) {
  const TDualPair d = builtin_dual_pair("hopf");
  const BuiltStructure s = builtin_example("s3-family", {{"model", "s3-invariant"}, {"f", "f"}, {"g", "g"}});
  const MixedPair mp = mixed_pair_of(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau_f(d, mp.rho2));
    benchmark::DoNotOptimize(dualize(d, s.pair));
  }
}
BENCHMARK(BM_HopfDual)->Unit(benchmark::kMicrosecond);

void BM_ShippedScenario(benchmark::State& state) {
  const auto text = builtin_scenario("s3_strong_integrability")->text;
  for (auto _ : state) {
    const Scenario s = load_scenario(text);
    benchmark::DoNotOptimize(run_scenario(s));
  }
}
BENCHMARK(BM_ShippedScenario)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
