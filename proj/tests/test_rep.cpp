#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "kadec/bounds.hpp"
#include "kadec/frames.hpp"
#include "kadec/rep.hpp"
#include "kadec/rng.hpp"

using namespace kadec;
namespace kr = kadec::rep;
using kr::cdouble;

namespace {

constexpr double pi = std::numbers::pi;

kr::ModuleVector random_vector(rng::Stream& stream, std::size_t d) {
    kr::ModuleVector x(d);
    for (auto& z : x) z = stream.complex_box();
    return x;
}

} // namespace

TEST_CASE("module vector norms") {
    const kr::ModuleVector x{cdouble(3, 4), cdouble(0, -2), cdouble(1, 0)};
    CHECK(kr::norm1(x) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(kr::norm2(x) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
    CHECK(kr::norm_inf(x) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(kr::norm_p(x, 1) == kr::norm1(x));
    CHECK(kr::norm_p(x, 2) == kr::norm2(x));
    CHECK_THROWS_AS(kr::norm_p(x, 3), std::domain_error);
}

TEST_CASE("DiagonalRep validates spectrum containment") {
    CHECK_THROWS_AS(kr::DiagonalRep({}, SpectrumInterval(1.0)), std::domain_error);
    CHECK_THROWS_AS(kr::DiagonalRep({1.5}, SpectrumInterval(1.0)),
                    std::domain_error);
    CHECK_NOTHROW(kr::DiagonalRep({-1.0, 1.0}, SpectrumInterval(1.0)));
}

TEST_CASE("apply_rep: identity at t = 0 and exact phases") {
    const kr::DiagonalRep model({1.0, 2.0}, SpectrumInterval(2.0));
    const kr::ModuleVector x{cdouble(1, 0), cdouble(1, 0)};
    const kr::ModuleVector same = kr::apply_rep(model, 0.0, x);
    CHECK(same[0] == x[0]);
    CHECK(same[1] == x[1]);

    const kr::ModuleVector rotated = kr::apply_rep(model, pi, x);
    CHECK(std::abs(rotated[0] - cdouble(-1, 0)) <= 1e-15);
    CHECK(std::abs(rotated[1] - cdouble(1, 0)) <= 1e-14);

    CHECK_THROWS_AS(kr::apply_rep(model, 1.0, kr::ModuleVector{cdouble(1, 0)}),
                    std::domain_error);
}

TEST_CASE("group law and isometry on random data") {
    rng::Stream stream(17);
    std::vector<double> points(9);
    for (auto& p : points) p = stream.uniform(-3.0, 3.0);
    const kr::DiagonalRep model(points, SpectrumInterval(3.0));
    for (int trial = 0; trial < 100; ++trial) {
        const kr::ModuleVector x = random_vector(stream, 9);
        const double s = stream.uniform(-8.0, 8.0);
        const double t = stream.uniform(-8.0, 8.0);
        const kr::ModuleVector chained =
            kr::apply_rep(model, s, kr::apply_rep(model, t, x));
        const kr::ModuleVector direct = kr::apply_rep(model, s + t, x);
        double gap = 0.0;
        for (std::size_t j = 0; j < 9; ++j)
            gap = std::max(gap, std::abs(chained[j] - direct[j]));
        CHECK(gap <= 1e-12);
        CHECK(std::fabs(kr::norm2(kr::apply_rep(model, t, x)) - kr::norm2(x)) <=
              1e-12 * (1.0 + kr::norm2(x)));
    }
}

TEST_CASE("module action: zero function, Gaussian oracle, contraction") {
    const std::size_t d = 10;
    std::vector<double> points(d);
    for (std::size_t j = 0; j < d; ++j)
        points[j] = -2.0 + 4.0 * static_cast<double>(j) / (d - 1);
    const kr::DiagonalRep model(points, SpectrumInterval(2.0));
    rng::Stream stream(23);
    const kr::ModuleVector x = random_vector(stream, d);

    kr::SampledFunction zero;
    zero.start = -1.0;
    zero.step = 0.1;
    zero.samples.assign(21, 0.0);
    for (const auto& z : kr::module_action(model, zero, x)) CHECK(z == cdouble(0, 0));

    // unit-mass Gaussian: transform is exp(-sigma^2 xi^2 / 2)
    const double sigma = 0.35;
    for (int n : {25, 49}) {
        kr::SampledFunction f;
        f.start = -6.0;
        f.step = 12.0 / (n - 1);
        f.samples.resize(n);
        for (int k = 0; k < n; ++k) {
            const double t = f.start + k * f.step;
            f.samples[k] = std::exp(-t * t / (2.0 * sigma * sigma)) /
                           (sigma * std::sqrt(2.0 * pi));
        }
        const kr::ModuleVector acted = kr::module_action(model, f, x);
        double err = 0.0;
        double scale = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const cdouble target =
                std::exp(-0.5 * sigma * sigma * points[j] * points[j]) * x[j];
            err += std::norm(acted[j] - target);
            scale += std::norm(target);
        }
        const double rel = std::sqrt(err / scale);
        if (n == 49) CHECK(rel <= 1e-6);
    }

    for (int trial = 0; trial < 20; ++trial) {
        kr::SampledFunction f;
        f.start = -2.0;
        f.step = 4.0 / 30.0;
        f.samples.resize(31);
        for (auto& s : f.samples) s = stream.uniform01();
        const kr::ModuleVector y = random_vector(stream, d);
        CHECK(kr::norm2(kr::module_action(model, f, y)) <=
              f.l1_norm() * kr::norm2(y) * (1.0 + 1e-12));
    }

    kr::SampledFunction empty;
    CHECK_THROWS_AS(kr::module_action(model, empty, x), std::domain_error);
}

TEST_CASE("band-stop functions annihilate the model") {
    // Transform mass concentrated near +-30 while the spectrum sits in
    // [-2, 2]: the action must vanish up to quadrature error.
    const std::size_t d = 6;
    std::vector<double> points{-2.0, -1.2, -0.4, 0.4, 1.2, 2.0};
    const kr::DiagonalRep model(points, SpectrumInterval(2.0));
    rng::Stream stream(31);
    const kr::ModuleVector x = random_vector(stream, d);

    const double sigma = 1.0;
    const int n = 2001;
    kr::SampledFunction f;
    f.start = -10.0;
    f.step = 20.0 / (n - 1);
    f.samples.resize(n);
    for (int k = 0; k < n; ++k) {
        const double t = f.start + k * f.step;
        f.samples[k] = std::cos(30.0 * t) *
                       std::exp(-t * t / (2.0 * sigma * sigma)) /
                       (sigma * std::sqrt(2.0 * pi));
    }
    const double out = kr::norm2(kr::module_action(model, f, x));
    CHECK(out <= 1e-9 * f.l1_norm() * kr::norm2(x));
}

TEST_CASE("calculus examples: identity, single modulation, difference symbol") {
    rng::Stream stream(41);
    std::vector<double> points(12);
    for (auto& p : points) p = stream.uniform(-pi, pi);
    const kr::DiagonalRep model(points, SpectrumInterval(pi));
    const kr::ModuleVector x = random_vector(stream, 12);

    const kr::Symbol one{{{cdouble(1, 0), 0.0}}};
    const kr::ModuleVector same = kr::calculus_apply(model, one, x);
    for (std::size_t j = 0; j < 12; ++j) CHECK(std::abs(same[j] - x[j]) <= 1e-15);

    const double s = 0.7;
    const kr::Symbol modulation{{{cdouble(1, 0), s}}};
    const kr::ModuleVector shifted = kr::calculus_apply(model, modulation, x);
    const kr::ModuleVector expected = kr::apply_rep(model, s, x);
    for (std::size_t j = 0; j < 12; ++j)
        CHECK(std::abs(shifted[j] - expected[j]) <= 1e-15);

    const double delta = 0.3;
    const kr::Symbol difference{{{cdouble(1, 0), 0.0}, {cdouble(-1, 0), delta}}};
    const kr::ModuleVector diff = kr::calculus_apply(model, difference, x);
    const kr::ModuleVector translated = kr::apply_rep(model, delta, x);
    for (std::size_t j = 0; j < 12; ++j)
        CHECK(std::abs(diff[j] - (x[j] - translated[j])) <= 1e-14);
}

TEST_CASE("translate-sum and multiplier routes agree on random symbols") {
    rng::Stream stream(43);
    std::vector<double> points(16);
    for (auto& p : points) p = stream.uniform(-pi, pi);
    const kr::DiagonalRep model(points, SpectrumInterval(pi));
    for (int trial = 0; trial < 100; ++trial) {
        const kr::ModuleVector x = random_vector(stream, 16);
        kr::Symbol h;
        const int terms = 1 + static_cast<int>(stream.next() % 12);
        for (int k = 0; k < terms; ++k)
            h.terms.push_back({stream.complex_box(), stream.uniform(-6.0, 6.0)});
        const kr::ModuleVector a = kr::calculus_apply(model, h, x);
        const kr::ModuleVector b = kr::spectral_apply(model, h, x);
        double gap = 0.0;
        for (std::size_t j = 0; j < 16; ++j) gap = std::max(gap, std::abs(a[j] - b[j]));
        CHECK(gap <= 1e-10 * h.l1_norm() * kr::norm2(x));
    }
}

TEST_CASE("the calculus is an algebra homomorphism for products") {
    rng::Stream stream(47);
    std::vector<double> points(10);
    for (auto& p : points) p = stream.uniform(-2.0, 2.0);
    const kr::DiagonalRep model(points, SpectrumInterval(2.0));
    for (int trial = 0; trial < 25; ++trial) {
        const kr::ModuleVector x = random_vector(stream, 10);
        kr::Symbol g, h;
        for (int k = 0; k < 4; ++k) {
            g.terms.push_back({stream.complex_box(), stream.uniform(-3.0, 3.0)});
            h.terms.push_back({stream.complex_box(), stream.uniform(-3.0, 3.0)});
        }
        const kr::ModuleVector composed =
            kr::calculus_apply(model, g, kr::calculus_apply(model, h, x));
        const kr::ModuleVector direct =
            kr::calculus_apply(model, kr::product(g, h), x);
        double gap = 0.0;
        for (std::size_t j = 0; j < 10; ++j)
            gap = std::max(gap, std::abs(composed[j] - direct[j]));
        CHECK(gap <= 1e-10 * g.l1_norm() * h.l1_norm() * kr::norm2(x));
    }
}

TEST_CASE("operator norm deviation: exact values and bound dominance") {
    const kr::DiagonalRep single({2.0}, SpectrumInterval(2.0));
    CHECK(kr::operator_norm_deviation(single, 0.0) == 0.0);
    for (double t : {0.1, 0.5, 1.5}) {
        CHECK(kr::operator_norm_deviation(single, t) ==
              doctest::Approx(2.0 * std::sin(0.5 * 2.0 * t)).epsilon(1e-14));
    }

    std::vector<double> grid(101);
    for (int j = 0; j <= 100; ++j) grid[j] = 2.0 * j / 100.0;
    const kr::DiagonalRep model(grid, SpectrumInterval(2.0));
    for (int k = 1; k <= 40; ++k) {
        const double t = (0.5 * pi / 2.0) * k / 40.0;
        CHECK(kr::operator_norm_deviation(model, t) <=
              bounds::isometry_deviation_bound(SpectrumInterval(2.0), t) + 1e-12);
    }
}

TEST_CASE("prodest check: constants, proof symbols, vacuous case") {
    std::vector<double> points{0.1, 0.4, 0.9, 1.7, 2.0};
    const kr::DiagonalRep model(points, SpectrumInterval(2.0));
    rng::Stream stream(53);
    const kr::ModuleVector x = random_vector(stream, 5);

    const auto constant = [](double) { return 3.0; };
    const kr::ProdestResult flat = kr::prodest_check(model, constant, 0.0, 2.0, x);
    CHECK(flat.holds);
    CHECK_FALSE(flat.vacuous);

    const double delta = 0.6;
    const auto raised_cos = [delta](double s) { return 1.0 - std::cos(delta * s); };
    CHECK(kr::prodest_check(model, raised_cos, 0.0, 2.0, x).holds);

    const auto sine = [delta](double s) { return std::sin(delta * s); };
    // delta * gamma = 1.2 <= pi/2, so the sine is monotone on [0, gamma]
    CHECK(kr::prodest_check(model, sine, 0.0, 2.0, x).holds);

    // support precondition: x must vanish on spectrum points outside [a, b]
    CHECK_THROWS_AS(kr::prodest_check(model, constant, 0.5, 2.0, x),
                    std::domain_error);

    kr::ModuleVector zero(5, cdouble(0, 0));
    const kr::ProdestResult empty =
        kr::prodest_check(model, constant, -2.0, -1.0, zero);
    CHECK(empty.holds);
    CHECK(empty.vacuous);
}

TEST_CASE("rescaling maps the spectrum and preserves sampled-orbit Grams") {
    std::vector<double> points{-1.5, -0.2, 0.8, 1.5};
    const kr::DiagonalRep model(points, SpectrumInterval(1.5));

    const kr::DiagonalRep to_pi = kr::rescale(model, pi);
    CHECK(to_pi.spec().gamma == pi);
    CHECK(to_pi.points().front() == doctest::Approx(-pi).epsilon(1e-15));
    CHECK(to_pi.points().back() == doctest::Approx(pi).epsilon(1e-15));

    const kr::DiagonalRep back = kr::rescale(to_pi, 1.5);
    for (std::size_t j = 0; j < points.size(); ++j)
        CHECK(back.points()[j] == doctest::Approx(points[j]).epsilon(1e-14));

    CHECK_THROWS_AS(kr::rescale(model, 0.0), std::domain_error);

    // Gram invariance: (rep, samples) and (rescaled rep, inverse-scaled
    // samples) produce the same Gram matrix.
    rng::Stream stream(59);
    kr::ModuleVector generator = random_vector(stream, 4);
    std::vector<double> samples{0.0, 0.7, 1.9, 2.4, 3.3};
    std::vector<double> scaled_samples(samples);
    for (auto& s : scaled_samples) s *= 1.5 / pi;

    const frames::GramMatrix direct =
        frames::orbit_gram(frames::ModelOrbit{model, generator, samples});
    const frames::GramMatrix rescaled = frames::orbit_gram(
        frames::ModelOrbit{to_pi, generator, scaled_samples});
    double gap = 0.0;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            gap = std::max(gap,
                           std::abs(direct.entries(i, j) - rescaled.entries(i, j)));
    CHECK(gap <= 1e-12);
}
