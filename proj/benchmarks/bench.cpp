#include "gaclutter/corr_map.hpp"
#include "gaclutter/corr_models.hpp"
#include "gaclutter/field_gen.hpp"
#include "gaclutter/ga0.hpp"

#include <benchmark/benchmark.h>

using namespace gaclutter;

namespace {

void BM_quantile(benchmark::State& state) {
    const ga0::GA0Params p{-3.0, 1.0, static_cast<int>(state.range(0))};
    double t = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ga0::quantile(p, t));
        t += 0.001;
        if (t >= 0.999) t = 0.001;
    }
}
BENCHMARK(BM_quantile)->Arg(1)->Arg(3);

void BM_rho_of_tau(benchmark::State& state) {
    const corr_map::CorrMapKey key{-3.0, 1};
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(corr_map::rho_of_tau(key, 0.5, order));
}
BENCHMARK(BM_rho_of_tau)->Arg(32)->Arg(64)->Arg(128);

void BM_build_lookup(benchmark::State& state) {
    const corr_map::CorrMapKey key{-3.0, 1};
    for (auto _ : state)
        benchmark::DoNotOptimize(corr_map::build_lookup(key, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_build_lookup)->Arg(33)->Arg(129)->Unit(benchmark::kMillisecond);

void BM_tau_of_rho(benchmark::State& state) {
    const corr_map::CorrMapKey key{-3.0, 1};
    const auto& lookup = corr_map::shared_lookup(key);
    double rho = -0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(corr_map::tau_of_rho(key, rho, lookup));
        rho += 0.01;
        if (rho > 0.9) rho = -0.7;
    }
}
BENCHMARK(BM_tau_of_rho);

void BM_simulate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    field_gen::SimulationConfig config;
    config.params = {-3.0, 1.0, 1};
    config.corr = field_gen::extend_rho(
        corr_models::materialize_r1({0.4, 2, 0.001}, n), n);
    config.mask_policy = field_gen::MaskPolicy::clamp_negative;
    corr_map::shared_lookup({-3.0, 1});  // exclude one-time table build
    std::uint64_t seed = 0;
    for (auto _ : state) {
        config.seed = seed++;
        benchmark::DoNotOptimize(field_gen::simulate(config));
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_simulate)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_pearson(benchmark::State& state) {
    const auto noise = field_gen::white_noise(512, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(corr_models::pearson_estimate(noise.values, 4));
}
BENCHMARK(BM_pearson)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
