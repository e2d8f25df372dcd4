#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "kadec/atomic.hpp"
#include "kadec/bounds.hpp"
#include "kadec/linalg.hpp"
#include "kadec/rng.hpp"
#include "kadec/series.hpp"

using namespace kadec;
namespace ka = kadec::atomic;
namespace kl = kadec::linalg;
using kl::cdouble;

namespace {

constexpr double pi = std::numbers::pi;

ka::Decomposition orthonormal_decomposition(std::size_t d) {
    ka::Decomposition decomp{kl::Matrix::identity(d), kl::Matrix::identity(d), 2,
                             FrameBounds(1.0, 1.0)};
    return decomp;
}

rep::DiagonalRep jittered_model(std::size_t d, std::uint64_t seed) {
    rng::Stream stream(seed);
    std::vector<double> points(d);
    for (std::size_t j = 0; j < d; ++j) {
        const double midpoint = -pi + (2.0 * j + 1.0) * pi / d;
        points[j] = midpoint + stream.uniform(-pi / 16.0, pi / 16.0);
    }
    return rep::DiagonalRep(points, SpectrumInterval(pi));
}

rep::ModuleVector flat_generator(std::size_t d, std::uint64_t seed) {
    rng::Stream stream(seed);
    rep::ModuleVector x(d);
    for (auto& z : x)
        z = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                       stream.uniform(0.0, 2.0 * pi));
    return x;
}

} // namespace

TEST_CASE("reconstruct: orthonormal, dual-basis and random invertible atoms") {
    const ka::Decomposition ortho = orthonormal_decomposition(5);
    rng::Stream stream(101);
    std::vector<cdouble> x(5);
    for (auto& z : x) z = stream.complex_box();
    const std::vector<cdouble> back = ka::reconstruct(ortho, x);
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(back[j] - x[j]) <= 1e-15);

    // random invertible atoms with inverse-adjoint functionals
    const std::size_t d = 6;
    kl::Matrix atoms(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) atoms(i, j) = stream.complex_box();
        atoms(i, i) += 4.0; // keep it comfortably invertible
    }
    // Y = (A A^H)^{-1} A gives A Y^H = I
    const kl::Matrix gram = kl::multiply(atoms, kl::adjoint(atoms));
    const kl::Matrix functionals = kl::solve_hpd(gram, atoms);
    ka::Decomposition dec{atoms, functionals, 2, FrameBounds(0.05, 20.0)};
    std::vector<cdouble> y(d);
    for (auto& z : y) z = stream.complex_box();
    const std::vector<cdouble> rec = ka::reconstruct(dec, y);
    for (std::size_t j = 0; j < d; ++j) CHECK(std::abs(rec[j] - y[j]) <= 1e-10);

    CHECK_THROWS_AS(ka::reconstruct(dec, std::vector<cdouble>(3)),
                    std::domain_error);
}

TEST_CASE("synthesis_norm: orthonormal, homogeneity, SVD cross-route") {
    CHECK(ka::synthesis_norm(orthonormal_decomposition(4)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    rng::Stream stream(103);
    kl::Matrix atoms(4, 6);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 6; ++j) atoms(i, j) = stream.complex_box();

    ka::Decomposition one{atoms, atoms, 1, FrameBounds(1.0, 100.0)};
    double worst_column = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 4; ++i) s += std::norm(atoms(i, j));
        worst_column = std::max(worst_column, std::sqrt(s));
    }
    CHECK(ka::synthesis_norm(one) == doctest::Approx(worst_column).epsilon(1e-14));

    kl::Matrix scaled(4, 6);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 6; ++j) scaled(i, j) = 3.0 * atoms(i, j);
    ka::Decomposition three{scaled, scaled, 1, FrameBounds(1.0, 100.0)};
    CHECK(ka::synthesis_norm(three) ==
          doctest::Approx(3.0 * worst_column).epsilon(1e-14));

    // p = 2: cross-check against the Jacobi route on the Gram factor
    ka::Decomposition two{atoms, atoms, 2, FrameBounds(1.0, 100.0)};
    const kl::Matrix small = kl::multiply(atoms, kl::adjoint(atoms));
    const std::vector<double> ev = kl::reference::hermitian_eigenvalues(small);
    CHECK(ka::synthesis_norm(two) ==
          doctest::Approx(std::sqrt(ev.back())).epsilon(1e-10));

    ka::Decomposition bad{atoms, atoms, 3, FrameBounds(1.0, 2.0)};
    CHECK_THROWS_AS(ka::synthesis_norm(bad), std::domain_error);
}

TEST_CASE("verify_atomic: exact bounds, declared validity, basis detection") {
    const ka::Decomposition ortho = orthonormal_decomposition(5);
    const ka::VerifyReport exact = ka::verify_atomic(ortho, 50, 11);
    CHECK(exact.reconstruction_error <= 1e-14);
    CHECK(exact.norm_violations == 0);
    CHECK(exact.has_exact);
    CHECK(exact.exact_lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(exact.exact_upper == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(exact.declared_valid);
    CHECK(exact.is_basis);

    ka::Decomposition loose = ortho;
    loose.bounds = FrameBounds(0.5, 2.0);
    CHECK(ka::verify_atomic(loose, 50, 11).declared_valid);

    ka::Decomposition tight = ortho;
    tight.bounds = FrameBounds(1.1, 1.2);
    const ka::VerifyReport squeezed = ka::verify_atomic(tight, 100, 11);
    CHECK_FALSE(squeezed.declared_valid);
    CHECK(squeezed.norm_violations > 0);
}

TEST_CASE("every constructed decomposition satisfies B * ||T_X|| >= 1") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const rep::DiagonalRep model = jittered_model(8, seed);
        const rep::ModuleVector gen = flat_generator(8, seed + 50);
        std::vector<double> samples(16);
        for (std::size_t i = 0; i < 16; ++i) samples[i] = static_cast<double>(i);
        for (int p : {1, 2}) {
            const ka::OrbitDecomposition orbit =
                ka::make_orbit_decomposition(model, gen, samples, p);
            CHECK(orbit.decomposition.bounds.upper *
                      ka::synthesis_norm(orbit.decomposition) >=
                  1.0 - 1e-12);
            const ka::VerifyReport report =
                ka::verify_atomic(orbit.decomposition, 50, seed);
            CHECK(report.reconstruction_error <= 1e-10);
            CHECK(report.norm_violations == 0);
        }
    }
}

TEST_CASE("orbit decomposition with p = 2 declares its exact optimal bounds") {
    const rep::DiagonalRep model = jittered_model(8, 4);
    const rep::ModuleVector gen = flat_generator(8, 54);
    std::vector<double> samples(16);
    for (std::size_t i = 0; i < 16; ++i) samples[i] = static_cast<double>(i);
    const ka::OrbitDecomposition orbit =
        ka::make_orbit_decomposition(model, gen, samples, 2);
    const ka::VerifyReport report = ka::verify_atomic(orbit.decomposition, 50, 4);
    CHECK(report.declared_valid);
    CHECK(report.exact_lower ==
          doctest::Approx(orbit.decomposition.bounds.lower).epsilon(1e-12));
    CHECK(report.exact_upper ==
          doctest::Approx(orbit.decomposition.bounds.upper).epsilon(1e-12));
}

TEST_CASE("perturbation_check: zero budget leaves everything unchanged") {
    const rep::DiagonalRep model = jittered_model(8, 5);
    const rep::ModuleVector gen = flat_generator(8, 55);
    std::vector<double> samples(16);
    for (std::size_t i = 0; i < 16; ++i) samples[i] = static_cast<double>(i);
    const ka::OrbitDecomposition orbit =
        ka::make_orbit_decomposition(model, gen, samples, 2);
    const ka::PerturbationReport report =
        ka::perturbation_check(orbit, PerturbationBudget(0.0), 10, 5);
    CHECK(report.delta_hat == 0.0);
    CHECK(report.mu == 0.0);
    CHECK(report.exact_deviation <= 1e-14);
    CHECK(report.hypothesis_violations == 0);
    CHECK(report.containment_failures == 0);
    CHECK(report.dual_reconstruction_error <= 1e-10);
}

TEST_CASE("perturbation_check at p = 2: hypothesis, dual, containment") {
    const rep::DiagonalRep model = jittered_model(8, 6);
    const rep::ModuleVector gen = flat_generator(8, 56);
    std::vector<double> samples(16);
    for (std::size_t i = 0; i < 16; ++i) samples[i] = static_cast<double>(i);
    const ka::OrbitDecomposition orbit =
        ka::make_orbit_decomposition(model, gen, samples, 2);

    const double threshold = bounds::atomic_delta_max(
        orbit.decomposition.bounds.upper,
        ka::synthesis_norm(orbit.decomposition), model.spec()).delta;
    CHECK(0.02 < threshold);

    const ka::PerturbationReport report =
        ka::perturbation_check(orbit, PerturbationBudget(0.02), 200, 6);
    CHECK(report.hypothesis_violations == 0);
    CHECK(report.exact_within_mu);
    CHECK(report.dual_constructed);
    CHECK(report.dual_reconstruction_error <= 1e-9);
    CHECK(report.containment_failures == 0);
    CHECK(report.delta_hat <= 0.02);

    CHECK_THROWS_AS(
        ka::perturbation_check(orbit, PerturbationBudget(threshold), 10, 6),
        std::domain_error);
}

TEST_CASE("perturbation_check at p = 1 verifies the column-norm route") {
    const rep::DiagonalRep model = jittered_model(8, 7);
    const rep::ModuleVector gen = flat_generator(8, 57);
    std::vector<double> samples(16);
    for (std::size_t i = 0; i < 16; ++i) samples[i] = static_cast<double>(i);
    const ka::OrbitDecomposition orbit =
        ka::make_orbit_decomposition(model, gen, samples, 1);
    const ka::PerturbationReport report =
        ka::perturbation_check(orbit, PerturbationBudget(0.02), 200, 7);
    CHECK(report.hypothesis_violations == 0);
    CHECK(report.exact_within_mu);
    CHECK_FALSE(report.dual_constructed); // dual construction is p = 2 only
}

TEST_CASE("a square invertible orbit decomposition stays a basis when perturbed") {
    const rep::DiagonalRep model = jittered_model(6, 8);
    const rep::ModuleVector gen = flat_generator(6, 58);
    std::vector<double> samples(6);
    for (std::size_t i = 0; i < 6; ++i) samples[i] = static_cast<double>(i);
    const ka::OrbitDecomposition orbit =
        ka::make_orbit_decomposition(model, gen, samples, 2);
    CHECK(ka::verify_atomic(orbit.decomposition, 20, 8).is_basis);
    const ka::PerturbationReport report =
        ka::perturbation_check(orbit, PerturbationBudget(0.01), 100, 8);
    CHECK(report.perturbed_is_basis);
}

TEST_CASE("p = 1 synthesis norm equals the max column norm and is attained") {
    rng::Stream stream(107);
    kl::Matrix atoms(5, 9);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 9; ++j) atoms(i, j) = stream.complex_box();
    ka::Decomposition decomp{atoms, atoms, 1, FrameBounds(0.1, 100.0)};
    const double norm = ka::synthesis_norm(decomp);

    // random-vector quotients never exceed it...
    double best = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<cdouble> c(9);
        double l1 = 0.0;
        for (auto& z : c) {
            z = stream.complex_box();
            l1 += std::abs(z);
        }
        double image_sq = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            cdouble acc(0, 0);
            for (std::size_t j = 0; j < 9; ++j) acc += atoms(i, j) * c[j];
            image_sq += std::norm(acc);
        }
        const double quotient = std::sqrt(image_sq) / l1;
        CHECK(quotient <= norm * (1.0 + 1e-12));
        best = std::max(best, quotient);
    }
    // ...and a coordinate vector at the longest column attains it exactly
    for (std::size_t j = 0; j < 9; ++j) {
        std::vector<cdouble> unit(9, cdouble(0, 0));
        unit[j] = cdouble(1, 0);
        double image_sq = 0.0;
        for (std::size_t i = 0; i < 5; ++i) image_sq += std::norm(atoms(i, j));
        best = std::max(best, std::sqrt(image_sq));
    }
    CHECK(best == doctest::Approx(norm).epsilon(1e-13));
}

TEST_CASE("mu agrees with the series defect sharing the deviation factor") {
    // mu = ||T_X|| (1 - cos(pi delta) + sin(pi delta)) = defect(delta, T^2)
    for (double t_norm : {0.5, 1.0, 2.7}) {
        for (double delta : {0.0, 0.1, 0.24}) {
            const double mu =
                t_norm * bounds::deviation_factor(pi * delta);
            CHECK(mu == doctest::Approx(series::defect(delta, t_norm * t_norm))
                            .epsilon(1e-14));
        }
    }
}
