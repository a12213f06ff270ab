// Benchmark of the OpenMP kernels against their serial reference
// implementations. The parallel versions use fixed block/stream partitions,
// so the outputs must agree bitwise; the table reports both timing and the
// maximum deviation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "logfano/sampler.hpp"
#include "logfano/selberg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Row {
    const char* name;
    double serial_ms, parallel_ms, diff;
};

void print(const Row& r) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx   max|diff| = %.3g\n", r.name, r.serial_ms,
                r.parallel_ms, r.serial_ms / r.parallel_ms, r.diff);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run the serial code path\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const long long N = 200000;
        double v = 2.0 / (static_cast<double>(N) + 2.0);
        logfano::WeightTriple w{v, v, v};
        double t0 = now_ms();
        double a = logfano::selberg_logZ_serial(w, N);
        double t1 = now_ms();
        double b = logfano::selberg_logZ(w, N);
        double t2 = now_ms();
        print({"selberg_logZ (N=2e5)", t1 - t0, t2 - t1, std::fabs(a - b)});
    }

    {
        const int N = 4000;
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        logfano::SphereConfig c;
        for (int i = 0; i < N; ++i) {
            double t = 2.0 * u(rng) - 1.0, ph = 2.0 * M_PI * u(rng);
            double st = std::sqrt(1.0 - t * t);
            c.points.push_back({st * std::cos(ph), st * std::sin(ph), t});
        }
        double t0 = now_ms();
        double a = logfano::energy_serial(c, 0.0);
        double t1 = now_ms();
        double b = logfano::energy(c, 0.0);
        double t2 = now_ms();
        print({"pair energy (N=4000)", t1 - t0, t2 - t1, std::fabs(a - b)});
    }

    {
        logfano::WeightTriple w{0.8, 0.7, 0.2};
        double t0 = now_ms();
        auto a = logfano::mc_oracle_serial(w, 2, 400000, 99);
        double t1 = now_ms();
        auto b = logfano::mc_oracle(w, 2, 400000, 99);
        double t2 = now_ms();
        print({"mc_oracle (N=2, 4e5)", t1 - t0, t2 - t1,
               std::fabs(a.estimate_logZ - b.estimate_logZ)});
    }

    return 0;
}
