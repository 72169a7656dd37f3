// SPDX-License-Identifier: Apache-2.0
#include "risfso/meijer_g.hpp"
#include "risfso/montecarlo.hpp"
#include "risfso/planner.hpp"
#include "risfso/stats.hpp"

#include <benchmark/benchmark.h>

using namespace risfso;

namespace {

ScenarioConfig combo(Strategy s, Regime r)
{
    ScenarioConfig c;
    c.strategy = s;
    c.regime = r;
    return c;
}

void BM_MeijerG(benchmark::State& state)
{
    const MeijerGSpec s{3, 1, 2, 4, {-1.0, 4.25}, {3.75, 4.2, 2.9, -2.0}};
    double z = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(meijer_g(s, z));
        z = z < 50.0 ? z * 1.1 : 0.5;
    }
}
BENCHMARK(BM_MeijerG);

void BM_OutageClosedForm(benchmark::State& state)
{
    const auto s = static_cast<Strategy>(state.range(0));
    const auto r = static_cast<Regime>(state.range(1));
    const ScenarioConfig cfg = combo(s, r);
    const std::vector<Branch> b = active_branches(cfg, reference_time(cfg));
    const double th = 0.1 * average_snr(b);
    for (auto _ : state) {
        benchmark::DoNotOptimize(outage_closed_form(b, th, s, r).p_out);
    }
    state.SetLabel(to_string(s) + "/" + to_string(r) + " branches=" + std::to_string(b.size()));
}
BENCHMARK(BM_OutageClosedForm)
    ->ArgsProduct({{static_cast<long>(Strategy::Direct), static_cast<long>(Strategy::FOR),
                    static_cast<long>(Strategy::Relay)},
                   {static_cast<long>(Regime::WeakLN), static_cast<long>(Regime::ModerateStrongGG)}})
    ->Unit(benchmark::kMicrosecond);

void BM_SimulateSnr(benchmark::State& state)
{
    const ScenarioConfig cfg = combo(Strategy::FOR, Regime::ModerateStrongGG);
    const double t = reference_time(cfg);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_snr(cfg, t, static_cast<std::size_t>(state.range(0)), RngStream{1, stream++}).mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSnr)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RequiredSnr(benchmark::State& state)
{
    const ScenarioConfig cfg = combo(Strategy::FOR, Regime::WeakLN);
    for (auto _ : state) {
        benchmark::DoNotOptimize(required_snr(cfg, 1e-3));
    }
}
BENCHMARK(BM_RequiredSnr)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
