#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace kadec::rng {

// splitmix64 generator with pinned arithmetic: seeded runs reproduce
// bit-for-bit regardless of platform, standard library or thread count.
// Trial streams are derived from (seed, trial) so Monte-Carlo loops can be
// parallelized without changing their output.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    static Stream for_trial(std::uint64_t seed, std::uint64_t trial) {
        Stream mixer(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
        return Stream(mixer.next());
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // [0, 1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double gaussian() {
        // Box-Muller; uses (0, 1] for the log argument.
        double u = 1.0 - uniform01();
        double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) *
               std::cos(6.283185307179586476925286766559 * v);
    }

    std::complex<double> complex_gaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

    std::complex<double> complex_box() {
        double re = uniform(-1.0, 1.0);
        double im = uniform(-1.0, 1.0);
        return {re, im};
    }

private:
    std::uint64_t state_;
};

} // namespace kadec::rng
