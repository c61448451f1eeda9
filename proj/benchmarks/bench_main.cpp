#include <ceda/binning.hpp>
#include <ceda/censor_test.hpp>
#include <ceda/coxph.hpp>
#include <ceda/mfs.hpp>
#include <ceda/redistribution.hpp>
#include <ceda/simgen.hpp>

#include <benchmark/benchmark.h>

namespace {

ceda::Dataset simulated(std::size_t n) {
    ceda::SimConfig cfg;
    cfg.n = n;
    cfg.censor_rate = 0.3;
    cfg.seed = 99;
    return ceda::generate(cfg).data;
}

ceda::BinningScheme scheme_for(const ceda::Dataset& d) {
    ceda::TimeBinning tb;
    return ceda::make_time_scheme(d, tb);
}

void BM_DenseCascade(benchmark::State& state) {
    const auto data = simulated(static_cast<std::size_t>(state.range(0)));
    const auto scheme = scheme_for(data);
    for (auto _ : state) {
        const auto w = ceda::build_weight_matrix(data);
        benchmark::DoNotOptimize(ceda::bin_weights(w, scheme, data.size()).mass.sum());
    }
}
BENCHMARK(BM_DenseCascade)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ClosedFormBinned(benchmark::State& state) {
    const auto data = simulated(static_cast<std::size_t>(state.range(0)));
    const auto scheme = scheme_for(data);
    for (auto _ : state) benchmark::DoNotOptimize(ceda::bin_weights(data, scheme).mass.sum());
}
BENCHMARK(BM_ClosedFormBinned)->Arg(500)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_MfsThreeOrders(benchmark::State& state) {
    const auto data = simulated(10000);
    ceda::CovariateBinning cov;
    cov.bins = 10;
    const auto codes = ceda::encode_features(data, ceda::build_coders(data, cov));
    const auto binned = ceda::bin_weights(data, scheme_for(data));
    ceda::MfsOptions opt;
    opt.workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ceda::run_mfs(binned, codes, opt).size());
}
BENCHMARK(BM_MfsThreeOrders)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CensorTest(benchmark::State& state) {
    const auto data = simulated(2000);
    std::vector<double> edges{0.0, 0.5, 1.0, 1.5, 10.0};
    const ceda::BinningScheme scheme(edges);
    ceda::CensorTestOptions opt;
    opt.n_sim = 2000;
    for (auto _ : state) benchmark::DoNotOptimize(ceda::run_censor_test(data, scheme, opt).not_rejected);
}
BENCHMARK(BM_CensorTest)->Unit(benchmark::kMillisecond);

void BM_CoxFit(benchmark::State& state) {
    const auto data = simulated(10000);
    for (auto _ : state) benchmark::DoNotOptimize(ceda::fit_cox(data, data.feature_names()).loglik);
}
BENCHMARK(BM_CoxFit)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
