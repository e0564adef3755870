#include <benchmark/benchmark.h>

#include "mvl/calculus.hpp"
#include "mvl/interpolation.hpp"
#include "mvl/registry.hpp"
#include "mvl/sampling.hpp"

using namespace mvl;

namespace {

// Argument 0 runs the serial reference, 1 the OpenMP sweep.
void BM_ProveVsSemantics(benchmark::State& state) {
  const Calculus c = registry::calculus("r-pp");
  const auto models = registry::declared_models("r-pp");
  const auto seqs = random_sequents(20241, 200, sig_pp());
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    AgreementReport r = prove_vs_semantics(c, models, seqs, {}, parallel);
    benchmark::DoNotOptimize(r.agree);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seqs.size()));
}
BENCHMARK(BM_ProveVsSemantics)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SemanticsVsSemantics(benchmark::State& state) {
  const auto lhs = std::vector<PNMatrix>{registry::matrix("m-leq")};
  const auto rhs = registry::matrix_class("pp6h-prime");
  const auto seqs = random_sequents(515, 100, sig_pp_imp());
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    AgreementReport r = semantics_vs_semantics(lhs, rhs, seqs, parallel);
    benchmark::DoNotOptimize(r.agree);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seqs.size()));
}
BENCHMARK(BM_SemanticsVsSemantics)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CipCertificate(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    CipReport r = cip_failure_certificate(parallel);
    benchmark::DoNotOptimize(r.passing_both);
  }
}
BENCHMARK(BM_CipCertificate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
