// Serial vs OpenMP timings for the data-parallel kernels.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "adtarget/info_model.hpp"
#include "adtarget/scenarios.hpp"
#include "oracles.hpp"

using namespace adtarget;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    volatile double sink = 0.0;

    report("monte carlo (1e6 x M=10)",
           time_ms([&] { sink = serial::informed_fraction_monte_carlo(0.1, 10, 1'000'000, 1).estimate; }, 3),
           time_ms([&] { sink = informed_fraction_monte_carlo(0.1, 10, 1'000'000, 1).estimate; }, 3));

    SweepSpec spec{ScenarioParams{}, SweepPath::parse("w1"), {}};
    for (int i = 1; i < 200; ++i) spec.values.push_back(i / 200.0);
    report("sweep (199 points)", time_ms([&] { sink = serial::sweep(spec).size(); }, 1),
           time_ms([&] { sink = sweep(spec).size(); }, 1));

    const MarketScenario base;
    report("grid oracle (5001 x 501)",
           time_ms([&] { sink = oracles::grid_max_targeted_profit_serial(base, 10.152, 50.0, 5.0, 0.01).profit; }, 3),
           time_ms([&] { sink = oracles::grid_max_targeted_profit(base, 10.152, 50.0, 5.0, 0.01).profit; }, 3));
    (void)sink;
    return 0;
}
