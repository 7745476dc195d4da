// test_lindblad.cpp — master-equation generator, steady states, weak-probe response
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "polab/lindblad.hpp"
#include "polab/spectroscopy.hpp"

using namespace polab;

namespace {

ComplexMatrix three_level_hamiltonian(double Omega_c, double Delta_1, double Delta_2,
                                      double probe) {
    ComplexMatrix h(3, 3);
    h(1, 1) = Delta_1 - Delta_2;
    h(2, 2) = Delta_1;
    h(2, 0) = -0.5 * probe;
    h(0, 2) = -0.5 * probe;
    h(2, 1) = -0.5 * Omega_c;
    h(1, 2) = -0.5 * Omega_c;
    return h;
}

ComplexMatrix random_density_like(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = cplx{u(rng), u(rng)};
    ComplexMatrix herm(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            herm(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return herm;
}

// Operating-point rates produced by the full cascade at drive amplitude 20
// with the usual damping pair (20, 1); frozen from the pipeline modules.
constexpr double kGamma31 = 7.899653;
constexpr double kGamma32 = 12.258498;
constexpr double kGamma21 = 0.789088;
constexpr double kOmegaC = 3.912945;

}  // namespace

TEST_CASE("generator reduces to the pure commutator when all channels vanish") {
    const double Omega_c = 12.0, Delta_1 = 7.0, Delta_2 = 3.0, probe = 2.0;
    const ComplexMatrix gen =
        build_liouvillian(ThreeLevelChannels{}, Omega_c, Delta_1, Delta_2, probe);
    const ComplexMatrix h = three_level_hamiltonian(Omega_c, Delta_1, Delta_2, probe);

    std::mt19937 rng(91u);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = random_density_like(rng);
        const ComplexVector lhs = gen * vectorize_columns(rho);
        const ComplexMatrix comm = (h * rho - rho * h).scaled(cplx{0.0, -1.0});
        const ComplexVector rhs = vectorize_columns(comm);
        for (std::size_t k = 0; k < lhs.size(); ++k)
            CHECK(std::abs(lhs[k] - rhs[k]) < 1e-12);
    }
}

TEST_CASE("a single decay channel routes population straight down") {
    ThreeLevelChannels ch;
    ch.gamma_31 = 5.0;
    const ComplexMatrix gen = build_liouvillian(ch, 0.0, 0.0, 0.0);

    ComplexMatrix top(3, 3);
    top(2, 2) = 1.0;
    const ComplexMatrix flow = devectorize_columns(gen * vectorize_columns(top), 3, 3);
    CHECK(std::abs(flow(0, 0) - cplx{5.0, 0.0}) < 1e-14);
    CHECK(std::abs(flow(1, 1)) < 1e-14);
    CHECK(std::abs(flow(2, 2) - cplx{-5.0, 0.0}) < 1e-14);

    ComplexMatrix coh(3, 3);
    coh(0, 2) = 1.0;
    const ComplexMatrix decay = devectorize_columns(gen * vectorize_columns(coh), 3, 3);
    CHECK(std::abs(decay(0, 2) - cplx{-2.5, 0.0}) < 1e-14);
}

TEST_CASE("steady state refuses generators with a degenerate stationary space") {
    // A single downward channel leaves the middle level untouched, so any
    // population stored there is stationary too.
    ThreeLevelChannels only31;
    only31.gamma_31 = 5.0;
    CHECK_THROWS_AS(steady_state(build_liouvillian(only31, 0.0, 0.0, 0.0)),
                    std::runtime_error);

    // Purely coherent diagonal evolution preserves every population.
    CHECK_THROWS_AS(steady_state(build_liouvillian(ThreeLevelChannels{}, 0.0, 5.0, 2.0)),
                    std::runtime_error);

    // The zero generator leaves every state fixed.
    CHECK_THROWS_AS(steady_state(ComplexMatrix(9, 9)), std::runtime_error);

    CHECK_THROWS_AS(steady_state(ComplexMatrix(8, 8)), std::invalid_argument);
    CHECK_THROWS_AS(steady_state(ComplexMatrix(9, 6)), std::invalid_argument);
}

TEST_CASE("the trace functional is a left null vector of every generator") {
    std::mt19937 rng(20260814u);
    std::uniform_real_distribution<double> rate(0.0, 30.0);
    std::uniform_real_distribution<double> det(-30.0, 30.0);
    for (int trial = 0; trial < 50; ++trial) {
        ThreeLevelChannels ch;
        ch.gamma_31 = rate(rng);
        ch.gamma_32 = rate(rng);
        ch.gamma_21 = 0.2 * rate(rng);
        ch.gamma_3deph = 0.1 * rate(rng);
        ch.gamma_2deph = 0.1 * rate(rng);
        const ComplexMatrix gen =
            build_liouvillian(ch, rate(rng), det(rng), det(rng), 0.01 * rate(rng));

        double worst = 0.0;
        for (std::size_t col = 0; col < 9; ++col) {
            cplx sum{0.0, 0.0};
            for (std::size_t d = 0; d < 3; ++d) sum += gen(d * 4, col);
            worst = std::max(worst, std::abs(sum));
        }
        CHECK(worst <= 1e-12 * std::max(1.0, gen.max_abs()));
    }
}

TEST_CASE("steady states are physical density matrices and true fixed points") {
    std::mt19937 rng(7142u);
    std::uniform_real_distribution<double> top_rate(0.1, 30.0);
    std::uniform_real_distribution<double> mid_rate(0.05, 5.0);
    std::uniform_real_distribution<double> deph(0.0, 2.0);
    std::uniform_real_distribution<double> drive(0.0, 40.0);
    std::uniform_real_distribution<double> det(-30.0, 30.0);
    std::uniform_real_distribution<double> probe(0.0, 0.05);

    for (int trial = 0; trial < 1000; ++trial) {
        ThreeLevelChannels ch;
        ch.gamma_31 = top_rate(rng);
        ch.gamma_32 = top_rate(rng);
        ch.gamma_21 = mid_rate(rng);
        ch.gamma_3deph = deph(rng);
        ch.gamma_2deph = deph(rng);
        const ComplexMatrix gen =
            build_liouvillian(ch, drive(rng), det(rng), det(rng), probe(rng));
        const ComplexMatrix rho = steady_state(gen);

        CHECK_NOTHROW(validate_density_matrix(rho, 1e-9));
        const ComplexVector residual = gen * vectorize_columns(rho);
        CHECK(norm(residual) < 1e-9);
    }
}

TEST_CASE("trace-pinned solution matches the null-space eigenvector") {
    std::mt19937 rng(5531u);
    std::uniform_real_distribution<double> rate(0.5, 20.0);
    std::uniform_real_distribution<double> det(-20.0, 20.0);
    for (int trial = 0; trial < 20; ++trial) {
        ThreeLevelChannels ch;
        ch.gamma_31 = rate(rng);
        ch.gamma_32 = rate(rng);
        ch.gamma_21 = 0.1 * rate(rng);
        const ComplexMatrix gen = build_liouvillian(ch, rate(rng), det(rng), det(rng));

        const ComplexMatrix rho = steady_state(gen);

        const Eigensystem gram = hermitian_eigendecompose(gen.adjoint() * gen);
        ComplexMatrix kernel = devectorize_columns(gram.vectors.column(0), 3, 3);
        cplx trace{0.0, 0.0};
        for (std::size_t d = 0; d < 3; ++d) trace += kernel(d, d);
        REQUIRE(std::abs(trace) > 1e-6);
        double diff = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                const cplx scaled = 0.5 * (kernel(i, j) / trace +
                                           std::conj(kernel(j, i) / trace));
                diff = std::max(diff, std::abs(scaled - rho(i, j)));
            }
        CHECK(diff < 1e-8);
    }
}

TEST_CASE("control-only steady state parks the population in the bottom level") {
    ThreeLevelChannels ch;
    ch.gamma_31 = kGamma31;
    ch.gamma_32 = kGamma32;
    ch.gamma_21 = kGamma21;
    const ComplexMatrix rho = steady_state(build_liouvillian(ch, kOmegaC, 0.0, 0.0));
    CHECK(rho(0, 0).real() > 0.95);
    CHECK(rho(0, 0).real() > 0.9999);
    CHECK(std::abs(rho(1, 1)) < 1e-9);
    CHECK(std::abs(rho(2, 2)) < 1e-9);
}

TEST_CASE("weak-probe response matches the closed-form susceptibility") {
    ThreeLevelChannels ch;
    ch.gamma_31 = kGamma31;
    ch.gamma_32 = kGamma32;
    ch.gamma_21 = kGamma21;
    ThreeLevelRates rates;
    rates.Gamma_31 = kGamma31 + kGamma32;
    rates.gamma_21 = kGamma21;
    rates.Omega_c = kOmegaC;
    rates.Delta_2 = 0.0;

    SUBCASE("on-resonance control across the full line") {
        double scale = 0.0;
        std::vector<cplx> analytic(101), numeric(101);
        for (int k = 0; k < 101; ++k) {
            const double delta = -30.0 + 60.0 * k / 100.0;
            analytic[k] = susceptibility(rates, delta);
            numeric[k] = linear_response_chi(ch, kOmegaC, 0.0, delta);
            scale = std::max(scale, std::abs(analytic[k]));
        }
        double worst = 0.0;
        for (int k = 0; k < 101; ++k)
            worst = std::max(worst, std::abs(numeric[k] - analytic[k]));
        CHECK(worst < 1e-3 * scale);
        CHECK(worst < 1e-4 * scale);
    }

    SUBCASE("detuned control keeps the same line-shape convention") {
        rates.Delta_2 = 5.0;
        double scale = 0.0, worst = 0.0;
        for (int k = 0; k < 21; ++k) {
            const double delta = -20.0 + 40.0 * k / 20.0;
            const cplx ana = susceptibility(rates, delta);
            const cplx num = linear_response_chi(ch, kOmegaC, 5.0, delta);
            scale = std::max(scale, std::abs(ana));
            worst = std::max(worst, std::abs(num - ana));
        }
        CHECK(worst < 1e-3 * scale);
    }
}

TEST_CASE("response without a control drive is a bare Lorentzian") {
    ThreeLevelChannels ch;
    ch.gamma_31 = 12.0;
    ch.gamma_32 = 8.0;
    ch.gamma_21 = 0.5;
    for (double delta : {-10.0, 1.0, 5.0}) {
        const cplx chi = linear_response_chi(ch, 0.0, 0.0, delta);
        const cplx lorentzian = 1.0 / (cplx{delta, -10.0});
        CHECK(std::abs(chi - lorentzian) < 1e-4 * std::abs(lorentzian));
    }
}

TEST_CASE("dark resonance suppresses absorption completely") {
    ThreeLevelChannels ch;
    ch.gamma_31 = kGamma31;
    ch.gamma_32 = kGamma32;  // no middle-level decay: perfect dark state
    const cplx chi = linear_response_chi(ch, kOmegaC, 0.0, 0.0);
    CHECK(std::abs(chi) < 1e-6);
    CHECK(std::abs(chi) < 1e-8);
}

TEST_CASE("probe response is stable across a decade of probe amplitudes") {
    ThreeLevelChannels ch;
    ch.gamma_31 = kGamma31;
    ch.gamma_32 = kGamma32;
    ch.gamma_21 = kGamma21;
    const double bound = 1e-3 * std::max(kGamma31 + kGamma32, kOmegaC);
    const double delta = 3.7;
    const cplx a = linear_response_chi(ch, kOmegaC, 0.0, delta, bound);
    const cplx b = linear_response_chi(ch, kOmegaC, 0.0, delta, 0.5 * bound);
    const cplx c = linear_response_chi(ch, kOmegaC, 0.0, delta, 0.1 * bound);
    const double scale = std::abs(a);
    CHECK(std::abs(a - b) < 1e-4 * scale);
    CHECK(std::abs(a - c) < 1e-4 * scale);
    CHECK(std::abs(b - c) < 1e-4 * scale);
}

TEST_CASE("dephasing channels broaden the response like extra decay") {
    ThreeLevelChannels ch;
    ch.gamma_31 = 8.0;
    ch.gamma_32 = 12.0;
    ch.gamma_3deph = 3.0;
    ch.gamma_2deph = 0.4;
    ThreeLevelRates rates;
    rates.Gamma_31 = 23.0;
    rates.gamma_21 = 0.4;
    rates.Omega_c = 5.0;
    rates.Delta_2 = 0.0;

    double scale = 0.0, worst = 0.0;
    for (double delta : {-6.0, -1.3, 0.0, 2.2, 9.0}) {
        const cplx ana = susceptibility(rates, delta);
        const cplx num = linear_response_chi(ch, 5.0, 0.0, delta);
        scale = std::max(scale, std::abs(ana));
        worst = std::max(worst, std::abs(num - ana));
    }
    CHECK(worst < 1e-3 * scale);
}

TEST_CASE("probe amplitudes beyond the linear regime are rejected") {
    ThreeLevelChannels ch;
    ch.gamma_31 = kGamma31;
    ch.gamma_32 = kGamma32;
    ch.gamma_21 = kGamma21;
    const double bound = 1e-3 * std::max(kGamma31 + kGamma32, kOmegaC);
    CHECK_THROWS_AS(linear_response_chi(ch, kOmegaC, 0.0, 0.0, 2.0 * bound),
                    std::invalid_argument);
    CHECK_NOTHROW(linear_response_chi(ch, kOmegaC, 0.0, 0.0, bound));

    // With no decay and no control drive there is no scale for the probe.
    CHECK_THROWS_AS(linear_response_chi(ThreeLevelChannels{}, 0.0, 0.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("density-matrix validation flags each kind of violation") {
    ComplexMatrix good(3, 3);
    good(0, 0) = 0.6;
    good(1, 1) = 0.4;
    good(0, 1) = cplx{0.1, 0.05};
    good(1, 0) = cplx{0.1, -0.05};
    CHECK_NOTHROW(validate_density_matrix(good));

    ComplexMatrix bad_trace = good;
    bad_trace(2, 2) = 0.2;
    CHECK_THROWS_AS(validate_density_matrix(bad_trace), std::runtime_error);

    ComplexMatrix skew = good;
    skew(0, 1) = cplx{0.1, 0.05};
    skew(1, 0) = cplx{0.3, 0.2};
    CHECK_THROWS_AS(validate_density_matrix(skew), std::runtime_error);

    ComplexMatrix negative(3, 3);
    negative(0, 0) = 1.2;
    negative(1, 1) = -0.2;
    CHECK_THROWS_AS(validate_density_matrix(negative), std::runtime_error);
}

TEST_CASE("generator construction rejects invalid inputs") {
    ThreeLevelChannels bad;
    bad.gamma_31 = -1.0;
    CHECK_THROWS_AS(build_liouvillian(bad, 0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_liouvillian(ThreeLevelChannels{}, -2.0, 0.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_liouvillian(ThreeLevelChannels{}, 0.0, 0.0, 0.0, -0.5),
                    std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(build_liouvillian(ThreeLevelChannels{}, 0.0, nan, 0.0),
                    std::invalid_argument);
}
