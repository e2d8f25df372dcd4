// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: Gram construction, eigenvalue extraction, series
// reductions and the Monte-Carlo experiment. Prints one table row per
// kernel with timings and the observed result gap.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "kadec/frames.hpp"
#include "kadec/linalg.hpp"
#include "kadec/parallel.hpp"
#include "kadec/rng.hpp"
#include "kadec/series.hpp"
#include "kadec/types.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start)
        .count();
}

void report(const char* kernel, const char* size, double serial_ms,
            double parallel_ms, double gap) {
    std::printf("%-28s %-12s %10.2f %10.2f %8.2fx   %.3e\n", kernel, size,
                serial_ms, parallel_ms, serial_ms / parallel_ms, gap);
}

} // namespace

int main() {
    std::printf("threads: %d\n\n", kadec::par::thread_budget());
    std::printf("%-28s %-12s %10s %10s %9s   %s\n", "kernel", "size",
                "serial/ms", "omp/ms", "speedup", "max |gap|");

    // exponential Gram construction
    {
        kadec::rng::Stream stream(1);
        std::vector<double> mu(768);
        for (auto& m : mu) m = stream.uniform(-400.0, 400.0);

        auto start = clock_type::now();
        const auto serial = kadec::frames::reference::exp_gram(mu);
        const double serial_ms = ms_since(start);

        start = clock_type::now();
        const auto parallel = kadec::frames::exp_gram(mu);
        const double parallel_ms = ms_since(start);

        double gap = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i)
            for (std::size_t j = 0; j < mu.size(); ++j)
                gap = std::max(gap, std::abs(parallel.entries(i, j) -
                                             serial.entries(i, j)));
        report("exp_gram", "768x768", serial_ms, parallel_ms, gap);
    }

    // model-orbit Gram construction
    {
        kadec::rng::Stream stream(2);
        std::vector<double> points(64);
        for (auto& p : points) p = stream.uniform(-3.0, 3.0);
        const kadec::rep::DiagonalRep model(points, kadec::SpectrumInterval(3.0));
        kadec::rep::ModuleVector generator(64);
        for (auto& z : generator) z = stream.complex_box();
        std::vector<double> samples(256);
        for (auto& s : samples) s = stream.uniform(-40.0, 40.0);
        const kadec::frames::OrbitSystem system{
            kadec::frames::ModelOrbit{model, generator, samples}};

        auto start = clock_type::now();
        const auto serial = kadec::frames::reference::orbit_gram(system);
        const double serial_ms = ms_since(start);

        start = clock_type::now();
        const auto parallel = kadec::frames::orbit_gram(system);
        const double parallel_ms = ms_since(start);

        double gap = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
            for (std::size_t j = 0; j < samples.size(); ++j)
                gap = std::max(gap, std::abs(parallel.entries(i, j) -
                                             serial.entries(i, j)));
        report("orbit_gram", "256x256 d=64", serial_ms, parallel_ms, gap);
    }

    // Hermitian eigenvalues: Householder/QL (threaded) vs Jacobi (serial)
    {
        kadec::rng::Stream stream(3);
        const std::size_t n = 320;
        kadec::linalg::Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            a(i, i) = stream.uniform(-2.0, 2.0);
            for (std::size_t j = i + 1; j < n; ++j) {
                a(i, j) = stream.complex_box();
                a(j, i) = std::conj(a(i, j));
            }
        }
        auto start = clock_type::now();
        const auto slow = kadec::linalg::reference::hermitian_eigenvalues(a);
        const double serial_ms = ms_since(start);

        start = clock_type::now();
        const auto fast = kadec::linalg::hermitian_eigenvalues(a);
        const double parallel_ms = ms_since(start);

        double gap = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            gap = std::max(gap, std::fabs(fast[k] - slow[k]));
        report("hermitian_eigenvalues", "320x320", serial_ms, parallel_ms, gap);
    }

    // series coefficient mass
    {
        const kadec::series::Coefficients coeffs(0.21);
        const auto trunc = kadec::series::make_truncation(coeffs, 20000000);

        auto start = clock_type::now();
        const double serial = kadec::series::reference::coefficient_mass(coeffs, trunc);
        const double serial_ms = ms_since(start);

        start = clock_type::now();
        const double parallel = kadec::series::coefficient_mass(coeffs, trunc);
        const double parallel_ms = ms_since(start);

        report("series coefficient_mass", "M=2e7", serial_ms, parallel_ms,
               std::fabs(serial - parallel));
    }

    // Monte-Carlo perturbation experiment (parallel over trials)
    {
        kadec::frames::ExperimentConfig config;
        config.base.resize(64);
        for (int i = 0; i < 64; ++i) config.base[i] = i - 32;
        config.declared = kadec::FrameBounds(2.0 * 3.141592653589793,
                                             2.0 * 3.141592653589793);
        config.spec = kadec::SpectrumInterval(3.141592653589793);
        config.delta = 0.2;
        config.trials = 400;
        config.seed = 4;

        auto start = clock_type::now();
        const auto report_a = kadec::frames::perturbation_experiment(config);
        const double parallel_ms = ms_since(start);
        std::printf("%-28s %-12s %10s %10.2f %9s   violations=%d\n",
                    "perturbation_experiment", "N=64 t=400", "-", parallel_ms,
                    "-", report_a.violations);
    }
    return 0;
}
