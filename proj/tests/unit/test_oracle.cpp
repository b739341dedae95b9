#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "uhyp/errors.hpp"
#include "uhyp/oracle.hpp"
#include "uhyp/spectral.hpp"

using namespace uhyp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("plane wave values") {
    const double zero[1] = {0.0};
    oracle::PlaneWave pw{1.0, {0.0}, {1.0}};
    CHECK(std::abs(oracle::plane_wave_value(pw, 0, 0, zero, zero) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(oracle::plane_wave_value(pw, kPi, 0, zero, zero) - Complex(-1, 0)) < 1e-15);
    CHECK_THROWS_AS(oracle::plane_wave_value(oracle::PlaneWave{0.0, {1.0}, {1.0}}, 1, 0, zero, zero),
                    SingularFrequency);
}

TEST_CASE("plane wave solves the equation") {
    // d_ts + d_xx - d_yy by central differences.
    const oracle::PlaneWave pw{1.3, {0.7}, {-0.4}};
    const double t = 0.4, s = -0.2, x = 0.3, y = 1.1, h = 1e-3;
    auto u = [&](double tt, double ss, double xx, double yy) {
        const double xv[1] = {xx}, yv[1] = {yy};
        return oracle::plane_wave_value(pw, tt, ss, xv, yv);
    };
    const Complex uts = (u(t + h, s + h, x, y) - u(t + h, s - h, x, y) - u(t - h, s + h, x, y) +
                         u(t - h, s - h, x, y)) / (4 * h * h);
    const Complex uxx = (u(t, s, x + h, y) - 2.0 * u(t, s, x, y) + u(t, s, x - h, y)) / (h * h);
    const Complex uyy = (u(t, s, x, y + h) - 2.0 * u(t, s, x, y) + u(t, s, x, y - h)) / (h * h);
    CHECK(std::abs(uts + uxx - uyy) < 1e-5);
    CHECK(std::abs(uxx) > 0.1);
}

TEST_CASE("plane wave group law in t") {
    const oracle::PlaneWave pw{-0.9, {2.0}, {0.5}};
    const double x[1] = {0.25}, y[1] = {-1.5};
    const Complex a = oracle::plane_wave_value(pw, 1.5, 0.3, x, y);
    const Complex b = oracle::plane_wave_value(pw, 2.5, 0.3, x, y);
    const Complex step = oracle::plane_wave_value(pw, 1.0, 0.0, std::vector<double>{0.0}, std::vector<double>{0.0});
    CHECK(std::abs(a * step - b) < 1e-14);
}

TEST_CASE("direct Fourier sum") {
    const GridSpec g = GridSpec::uniform(1, 1, 10.0, 64);
    const double zero[1] = {0.0};
    CHECK(oracle::direct_fourier(Field::zeros(g), 1.0, zero, zero) == Complex(0, 0));
    const Complex got = oracle::direct_fourier(testutil::gaussian_field(g), 1.0, zero, zero);
    CHECK(std::abs(got - 2.0 * std::pow(2 * kPi, 1.5) * std::exp(-0.5)) < 1e-8);
}

TEST_CASE("closed-form Gaussian spectrum") {
    const double zero[1] = {0.0};
    SUBCASE("centered, zero carrier, at the origin") {
        const InitialData d = testutil::packet({1, 1, 1}, {0, 0, 0});
        CHECK(std::abs(oracle::gaussian_spectrum(d, 0.0, zero, zero) - 2.0 * std::pow(2 * kPi, 1.5)) < 1e-12);
    }
    SUBCASE("modulation") {
        const InitialData base = testutil::packet({1, 2, 1}, {0, 0, 0});
        const InitialData mod = testutil::packet({1, 2, 1}, {3, 0, 0});
        const double xi[1] = {0.4}, eta[1] = {-0.7};
        for (double lam : {-1.0, 0.5, 2.9, 4.0}) {
            CHECK(std::abs(oracle::gaussian_spectrum(mod, lam, xi, eta) -
                           oracle::gaussian_spectrum(base, lam - 3.0, xi, eta)) < 1e-13);
        }
    }
    SUBCASE("center shift in s") {
        const InitialData base = testutil::packet({2, 1, 1}, {0, 0, 0});
        const InitialData moved = testutil::packet({2, 1, 1}, {0, 0, 0}, {1.5, 0, 0});
        const double xi[1] = {0.2}, eta[1] = {0.1};
        for (double lam : {2.0, 3.3}) {
            CHECK(std::abs(oracle::gaussian_spectrum(moved, lam, xi, eta) -
                           oracle::gaussian_spectrum(base, lam, xi, eta) * std::exp(Complex(0, -1.5 * lam))) <
                  1e-13);
        }
    }
    SUBCASE("oracle triangle on the default grid") {
        const GridSpec g = GridSpec::uniform(1, 1, 10.0, 64);
        const InitialData d = testutil::packet({1.2, 1, 1.2}, {3, 1, -1}, {0.5, -1, 0.5}, {0.5, 2});
        const Field f = sample(d, g);
        const SpectralField s = forward(f);
        const FrequencyGrid fg(g);
        double w[3];
        double worst = 0.0;
        for (std::size_t k : {std::size_t{0}, g.size() / 2 + 700, std::size_t{(42 * 64 + 35) * 64 + 26},
                              std::size_t{(41 * 64 + 33) * 64 + 30}, g.size() - 1}) {
            fg.point(k, w);
            const double xi[1] = {w[1]}, eta[1] = {w[2]};
            const Complex a = oracle::gaussian_spectrum(d, w[0], xi, eta);
            const Complex b = oracle::direct_fourier(f, w[0], xi, eta);
            worst = std::max({worst, std::abs(a - b), std::abs(b - s.coefficients[k]), std::abs(a - s.coefficients[k])});
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("lattice solution at t = 0 is the lambda != 0 part of the samples") {
    const GridSpec g = GridSpec::uniform(1, 1, 10.0, 64);
    const InitialData d = testutil::default_packet();
    const double p[3] = {0.0, 0.625, -1.25};
    const Complex want = d.value(p);
    CHECK(std::abs(oracle::lattice_solution(d, g, 0.0, p) - want) < 1e-8);
}
