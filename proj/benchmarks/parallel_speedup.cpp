// Times the OpenMP trial loop against the sequential reference and checks
// that both produce byte-identical records.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyproc/bench.hpp"
#include "hyproc/io.hpp"

using namespace hyproc;

namespace {

template <typename F>
double seconds(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

} // namespace

int main() {
    BenchmarkConfig cfg;
    cfg.dims = {2, 4};
    cfg.sizes = {5, 8, 10};
    cfg.trials = 150;
    cfg.noise_sigma = 1e-2;
    cfg.seed = 17;

    BenchmarkRun serial;
    BenchmarkRun parallel;
    const double t_serial = seconds([&] { serial = run_benchmark_serial(cfg); });
    const double t_parallel = seconds([&] { parallel = run_benchmark(cfg); });

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "trials          " << serial.records.size() << "\n";
    std::cout << "threads         " << threads << "\n";
    std::cout << "serial          " << t_serial << " s\n";
    std::cout << "parallel        " << t_parallel << " s\n";
    std::cout << "speedup         " << t_serial / t_parallel << "x\n";

    if (trials_to_csv(serial.records) != trials_to_csv(parallel.records)) {
        std::cout << "MISMATCH: parallel records differ from the serial reference\n";
        return 1;
    }
    std::cout << "records identical across implementations\n";
    return 0;
}
