// Serial reference vs OpenMP kernels.
//
//   qmeas_bench [repetitions] [jobs]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "qmeas/kernels.hpp"
#include "qmeas/random.hpp"
#include "qmeas/separability.hpp"

using namespace qm;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm-up
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count() / reps;
}

void row(const std::string& name, double serial, double parallel) {
    std::printf("%-34s %12.3f %12.3f %9.2fx\n", name.c_str(), serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 5;
    const int jobs = argc > 2 ? std::atoi(argv[2]) : 0;
    kernels::set_jobs(jobs);
    std::printf("threads: %d, repetitions: %d\n", kernels::jobs(), reps);
    std::printf("%-34s %12s %12s %10s\n", "kernel", "serial ms", "parallel ms", "speedup");

    Rng rng = stream_for(1, 0);
    volatile double sink = 0;

    {
        const Matrix a = random_hermitian(32, rng), b = random_hermitian(16, rng);
        row("kron 32x32 (x) 16x16", time_ms([&] { sink = sink + kernels::kron_serial(a, b)(0, 0).real(); }, reps),
            time_ms([&] { sink = sink + kernels::kron_parallel(a, b)(0, 0).real(); }, reps));
    }
    {
        const Factorization f({2, 2, 2, 2, 2, 2, 2, 2});
        const Matrix m = random_mixed_state(f.total(), 4, rng);
        const std::vector<std::size_t> keep{0, 3, 5};
        row("partial trace 2^8 keep 3",
            time_ms([&] { sink = sink + kernels::partial_trace_serial(m, f, keep)(0, 0).real(); }, reps),
            time_ms([&] { sink = sink + kernels::partial_trace_parallel(m, f, keep)(0, 0).real(); }, reps));
    }
    {
        // The serial reference forms |psi><psi|, so keep this one small.
        const Factorization f(std::vector<std::size_t>(10, 2));
        const Vector psi = random_pure_state(f.total(), rng);
        const std::vector<std::size_t> keep{1, 4, 7};
        row("reduced state 2^10 keep 3",
            time_ms([&] { sink = sink + kernels::reduced_from_pure_serial(psi, f, keep)(0, 0).real(); }, reps),
            time_ms([&] { sink = sink + kernels::reduced_from_pure_parallel(psi, f, keep)(0, 0).real(); }, reps));
    }
    {
        const Factorization f(std::vector<std::size_t>(16, 2));
        const Vector psi = random_pure_state(f.total(), rng);
        row("controlled shift 2^16",
            time_ms([&] { sink = sink + kernels::controlled_shift_serial(psi, f, 0, 15)(0).real(); }, reps),
            time_ms([&] { sink = sink + kernels::controlled_shift_parallel(psi, f, 0, 15)(0).real(); }, reps));
    }
    {
        ConjectureConfig cfg;
        cfg.trials = 2000;
        row("conjecture harness 2000 trials",
            time_ms([&] { sink = sink + conjecture_trial_serial(cfg).max_cond_eig; }, 1),
            time_ms([&] { sink = sink + conjecture_trial(cfg).max_cond_eig; }, 1));
    }
    return 0;
}
