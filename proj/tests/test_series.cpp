#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "kadec/bounds.hpp"
#include "kadec/rng.hpp"
#include "kadec/series.hpp"

using namespace kadec;
namespace ks = kadec::series;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("delta = 0 yields the zero decomposition") {
    const ks::Coefficients coeffs(0.0);
    CHECK(coeffs.constant() == 0.0);
    CHECK(coeffs.cosine(1) == 0.0);
    CHECK(coeffs.sine(7) == 0.0);
    const ks::Truncation trunc = ks::make_truncation(coeffs, 100);
    CHECK(ks::evaluate_partial(coeffs, 1.3, trunc) == std::complex<double>(0, 0));
    CHECK(ks::coefficient_mass(coeffs, trunc) == 0.0);
}

TEST_CASE("coefficients match the frozen closed-form evaluations at 0.2") {
    const ks::Coefficients coeffs(0.2);
    CHECK(coeffs.constant() ==
          doctest::Approx(0.064510716211360967).epsilon(1e-13));
    CHECK(coeffs.cosine(1) ==
          doctest::Approx(-0.077957440315719919).epsilon(1e-13));
    CHECK(coeffs.sine(1) ==
          doctest::Approx(-0.49051068076236559).epsilon(1e-13));
    // signs alternate and magnitudes decay like 1/v^2
    CHECK(coeffs.cosine(2) > 0.0);
    CHECK(coeffs.sine(2) > 0.0);
    CHECK(std::fabs(coeffs.cosine(100)) < std::fabs(coeffs.cosine(10)) / 50.0);
}

TEST_CASE("coefficient domain validation") {
    CHECK_THROWS_AS(ks::Coefficients(0.5), std::domain_error);
    CHECK_THROWS_AS(ks::Coefficients(-0.71), std::domain_error);
    CHECK_NOTHROW(ks::Coefficients(-0.49));
    const ks::Coefficients coeffs(0.1);
    CHECK_THROWS_AS(ks::make_truncation(coeffs, 1), std::domain_error);
    CHECK_THROWS_AS(coeffs.cosine(0), std::domain_error);
    const ks::Truncation trunc = ks::make_truncation(coeffs, 10);
    CHECK_THROWS_AS(ks::evaluate_partial(coeffs, 3.2, trunc), std::domain_error);
    CHECK_THROWS_AS(ks::evaluate_partial(coeffs, -3.2, trunc), std::domain_error);
}

TEST_CASE("tail bound is rigorous and O(delta/M)") {
    for (double d : {0.01, 0.1, 0.24, 0.4}) {
        const ks::Coefficients coeffs(d);
        for (long m : {100L, 10000L, 100000L}) {
            const ks::Truncation trunc = ks::make_truncation(coeffs, m);
            CHECK(trunc.tail_bound <= 3.0 * d / static_cast<double>(m));
            // the bound really dominates the discarded mass
            double discarded = 0.0;
            for (long v = m + 1; v <= m + 40000; ++v)
                discarded +=
                    std::fabs(coeffs.cosine(v)) + std::fabs(coeffs.sine(v));
            CHECK(discarded <= trunc.tail_bound);
        }
    }
}

TEST_CASE("cancellation at t = 0: the constant offsets the cosine series") {
    const ks::Coefficients coeffs(0.2);
    const ks::Truncation trunc = ks::make_truncation(coeffs, 10000);
    const std::complex<double> value = ks::evaluate_partial(coeffs, 0.0, trunc);
    CHECK(std::abs(value) <= trunc.tail_bound);
    CHECK(value.imag() == 0.0);
}

TEST_CASE("partial sums approximate 1 - e^{i delta t} within the tail bracket") {
    const ks::Coefficients coeffs(0.1);
    const ks::Truncation trunc = ks::make_truncation(coeffs, 10000);
    const std::complex<double> value =
        ks::evaluate_partial(coeffs, 0.5 * pi, trunc);
    // frozen target: 1 - e^{i 0.05 pi}
    const std::complex<double> target(0.012311659404862274,
                                      -0.15643446504023087);
    CHECK(std::abs(value - target) <= trunc.tail_bound + 1e-12);
}

TEST_CASE("pointwise convergence on random (delta, t) pairs") {
    rng::Stream stream(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const double d = stream.uniform(-0.24, 0.24);
        const double t = stream.uniform(-0.95 * pi, 0.95 * pi);
        const ks::Coefficients coeffs(d);
        const std::complex<double> target =
            std::complex<double>(1.0, 0.0) -
            std::polar(1.0, d * t);
        const ks::Truncation coarse = ks::make_truncation(coeffs, 2000);
        const ks::Truncation fine = ks::make_truncation(coeffs, 4000);
        const double err_coarse =
            std::abs(ks::evaluate_partial(coeffs, t, coarse) - target);
        const double err_fine =
            std::abs(ks::evaluate_partial(coeffs, t, fine) - target);
        CHECK(err_coarse <= coarse.tail_bound + 1e-12);
        CHECK(err_fine <= fine.tail_bound + 1e-12);
        CHECK(fine.tail_bound < coarse.tail_bound);
    }
}

TEST_CASE("negating delta conjugates the decomposition") {
    rng::Stream stream(7);
    for (int trial = 0; trial < 10; ++trial) {
        const double d = stream.uniform(0.01, 0.24);
        const double t = stream.uniform(-0.9 * pi, 0.9 * pi);
        const ks::Coefficients plus(d);
        const ks::Coefficients minus(-d);
        const ks::Truncation trunc = ks::make_truncation(plus, 4000);
        const std::complex<double> direct =
            ks::evaluate_partial(minus, t, trunc);
        const std::complex<double> conjugated =
            std::conj(ks::evaluate_partial(plus, t, trunc));
        CHECK(std::abs(direct - conjugated) <= 1e-15);
    }
}

TEST_CASE("mass identity: partial mass plus tail brackets the closed form") {
    for (double d : {0.05, 0.2, 0.24}) {
        const ks::Coefficients coeffs(d);
        const ks::Truncation trunc = ks::make_truncation(coeffs, 100000);
        const double partial = ks::coefficient_mass(coeffs, trunc);
        const double closed = bounds::deviation_factor(pi * d);
        CHECK(partial <= closed + 1e-12);
        CHECK(closed <= partial + trunc.tail_bound);
    }
    // frozen evaluations
    {
        const ks::Coefficients coeffs(0.2);
        const ks::Truncation trunc = ks::make_truncation(coeffs, 1000000);
        CHECK(ks::coefficient_mass(coeffs, trunc) + 0.5 * trunc.tail_bound ==
              doctest::Approx(0.77876825791752571).epsilon(1e-6));
    }
    {
        // the mass collapses to exactly 1 at delta = 1/4
        const ks::Coefficients coeffs(0.25);
        const ks::Truncation trunc = ks::make_truncation(coeffs, 1000000);
        const double partial = ks::coefficient_mass(coeffs, trunc);
        CHECK(partial <= 1.0);
        CHECK(1.0 <= partial + trunc.tail_bound);
    }
}

TEST_CASE("defect values") {
    CHECK(ks::defect(0.0, 7.0) == 0.0);
    CHECK(ks::defect(0.2, 2 * pi) ==
          doctest::Approx(1.9520825346811975).epsilon(1e-12));
    CHECK(ks::defect(0.25, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(ks::defect(-0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(ks::defect(0.1, 0.0), std::domain_error);
}

TEST_CASE("defect stays below sqrt(A) for budgets under the threshold") {
    const SpectrumInterval spec(pi);
    for (int i = 1; i <= 50; ++i) {
        const double ratio = i / 50.0;
        const FrameBounds fb(ratio, 1.0);
        const double dmax = bounds::delta_max(fb, spec).delta;
        for (int j = 1; j <= 50; ++j) {
            const double d = dmax * j / 51.0;
            CHECK(ks::defect(d, 1.0) < std::sqrt(ratio));
        }
    }
}

TEST_CASE("parallel reductions agree with the serial reference") {
    const ks::Coefficients coeffs(0.17);
    const ks::Truncation trunc = ks::make_truncation(coeffs, 300000);
    const double mass = ks::coefficient_mass(coeffs, trunc);
    const double mass_ref = ks::reference::coefficient_mass(coeffs, trunc);
    CHECK(std::fabs(mass - mass_ref) <= 1e-13 * (1.0 + mass_ref));

    const std::complex<double> value =
        ks::evaluate_partial(coeffs, 0.71, trunc);
    const std::complex<double> value_ref =
        ks::reference::evaluate_partial(coeffs, 0.71, trunc);
    CHECK(std::abs(value - value_ref) <= 1e-13 * (1.0 + std::abs(value_ref)));
}
