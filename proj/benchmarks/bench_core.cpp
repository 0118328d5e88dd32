#include "cryowire/catalog.hpp"
#include "cryowire/noise.hpp"
#include "cryowire/optimizer.hpp"
#include "cryowire/physics.hpp"
#include "cryowire/thermal.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace cryowire;

namespace {

const Frequency k6GHz = Frequency::from_ghz(6.0);

ThermalLink smf28() {
    ThermalLink link;
    link.kind = LinkKind::fiber;
    link.name = "smf28";
    link.hot_stage = "RT";
    link.cold_stage = "4K";
    link.length_m = 1.0;
    const double silica_a = M_PI / 4.0 * 125e-6 * 125e-6;
    link.layers = {{"silica", silica_a},
                   {"ptfe", M_PI / 4.0 * 250e-6 * 250e-6 - silica_a}};
    return link;
}

void BM_BoseEinstein(benchmark::State& state) {
    double t = 0.006;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bose_einstein_occupation(t, k6GHz));
        t = t < 300.0 ? t * 1.001 : 0.006;
    }
}
BENCHMARK(BM_BoseEinstein);

void BM_ConductionLoad(benchmark::State& state) {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& materials = MaterialLibrary::bundled();
    const ThermalLink link = smf28();
    for (auto _ : state) {
        benchmark::DoNotOptimize(conduction_load(link, fridge, materials));
    }
}
BENCHMARK(BM_ConductionLoad);

void BM_QubitNoiseChain(benchmark::State& state) {
    PhotonicFrontEnd front;
    front.mean_photocurrent_a = 1.4e-6;
    const CryoAmplifier amp = CryoAmplifier::none();
    const StageAttenuator cp{"CP", AttenuationFactor::from_db(20.0), 0.082};
    const StageAttenuator mxc{"MXC", AttenuationFactor::from_db(20.0), 0.006};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qubit_noise_full(front, amp, cp, mxc, k6GHz));
    }
}
BENCHMARK(BM_QubitNoiseChain);

void BM_OptimizeAttenuationSplit(benchmark::State& state) {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const double step = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_attenuation_split(
            fridge, {"4K", "CP", "MXC"}, step, PowerLevel::from_dbm(-70.0),
            NoiseTarget::occupation(1e-3, k6GHz), 0.33));
    }
}
BENCHMARK(BM_OptimizeAttenuationSplit)->Arg(5)->Arg(2)->Arg(1);

void BM_MinPhotocurrent(benchmark::State& state) {
    PhotonicFrontEnd front;
    const PowerLevel pq = PowerLevel::from_dbm(-70.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_photocurrent(front, CryoAmplifier::none(),
                                                  NoiseTarget::current_asd(0.7e-12, k6GHz), pq));
    }
}
BENCHMARK(BM_MinPhotocurrent);

void BM_CompareBuiltins(benchmark::State& state) {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& materials = MaterialLibrary::bundled();
    std::vector<Architecture> archs;
    for (const auto& name : builtin_architecture_names()) {
        archs.push_back(builtin_architecture(name, fridge, materials));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(compare_architectures(archs, fridge, 0.33, materials));
    }
}
BENCHMARK(BM_CompareBuiltins);

}  // namespace

BENCHMARK_MAIN();
