#include "fcmppt/anfis.hpp"
#include "fcmppt/converter.hpp"
#include "fcmppt/fuzzy.hpp"
#include "fcmppt/mlp.hpp"
#include "fcmppt/oracle.hpp"
#include "fcmppt/scenario.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace fcmppt;

const StackParams kStack{};
const ConverterParams kConv{};

void BM_StackVoltage(benchmark::State& state) {
    OperatingConditions cond{328.15, 12.0, 60.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(stack_voltage(kStack, cond));
        cond.current_I = cond.current_I < 120.0 ? cond.current_I + 0.1 : 10.0;
    }
}
BENCHMARK(BM_StackVoltage);

void BM_FindMpp(benchmark::State& state) {
    double T = 313.15;
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_mpp(kStack, T, 12.0));
        T = T < 343.0 ? T + 0.01 : 313.15;
    }
}
BENCHMARK(BM_FindMpp);

void BM_ConverterStep(benchmark::State& state) {
    ConverterState s;
    s.duty = 0.6;
    s.inductor_current = 40.0;
    s.output_voltage = 150.0;
    for (auto _ : state) {
        s = converter_step(kConv, s, 60.0, kConv.plant_dt);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_ConverterStep);

void BM_FuzzyEvaluate(benchmark::State& state) {
    FuzzySystem fs = FuzzySystem::mppt_default(0.01);
    double e = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(fs, e, 0.3 * e));
        e = e < 1.0 ? e + 1e-3 : -1.0;
    }
}
BENCHMARK(BM_FuzzyEvaluate);

void BM_AnfisForward(benchmark::State& state) {
    AnfisModel m = AnfisModel::initial({});
    for (int r = 0; r < 9; ++r) m.consequents[r] = {0.2, -0.1, 0.05 * r};
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(anfis_forward(m, t, 1.0 - t));
        t = t < 1.0 ? t + 1e-4 : 0.0;
    }
}
BENCHMARK(BM_AnfisForward);

void BM_MlpForward(benchmark::State& state) {
    MlpArch arch{8};
    std::vector<double> w(arch.weight_count(), 0.3);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mlp_forward(arch, w, t, 1.0 - t));
        t = t < 1.0 ? t + 1e-4 : 0.0;
    }
}
BENCHMARK(BM_MlpForward);

void BM_ScenarioSecond(benchmark::State& state) {
    SimSetup setup;
    setup.stack = kStack;
    setup.converter = kConv;
    setup.fuzzy = FuzzySystem::mppt_default(0.01);
    setup.reference_cfg.gain_e = 1.5;
    setup.conventional_cfg.gain_e = 0.02;
    setup.conventional_cfg.gain_ce = 0.02;
    setup.conventional_cfg.gain_dd = 0.2;

    OracleVmaxEstimator oracle(kStack);
    Scenario sc;
    sc.duration = 1.0;
    sc.profile_T.points = {{0.0, 328.15}};
    sc.profile_lambda.points = {{0.0, 12.0}};
    sc.method = TrackerMethod::Anfis;

    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scenario(sc, setup, &oracle));
    }
}
BENCHMARK(BM_ScenarioSecond)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
