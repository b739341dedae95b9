#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "uhyp/errors.hpp"
#include "uhyp/oracle.hpp"
#include "uhyp/spectral.hpp"

using namespace uhyp;

namespace {

constexpr double kPi = std::numbers::pi;

const GridSpec& default_grid() {
    static const GridSpec g = GridSpec::uniform(1, 1, 10.0, 64);
    return g;
}

}  // namespace

TEST_CASE("frequency grid") {
    const FrequencyGrid fg(default_grid());
    CHECK(fg.spacing(0) == doctest::Approx(kPi / 10.0));
    CHECK(fg.frequency(0, 32) == 0.0);
    CHECK(fg.frequency(1, 0) == doctest::Approx(-32 * kPi / 10.0));
    CHECK(fg.zero_index(2) == 32);
    int zero_lambda = 0;
    for (int i = 0; i < 64; ++i) zero_lambda += fg.frequency(0, i) == 0.0;
    CHECK(zero_lambda == 1);
}

TEST_CASE("forward transform") {
    const GridSpec& g = default_grid();
    const FrequencyGrid fg(g);

    SUBCASE("zero field") {
        const SpectralField s = forward(Field::zeros(g));
        for (const auto& z : s.coefficients) CHECK(z == Complex(0, 0));
    }
    SUBCASE("unit Gaussian matches the closed form") {
        const SpectralField s = forward(testutil::gaussian_field(g));
        const double c = 2.0 * std::pow(2.0 * kPi, 1.5);
        double err = 0.0;
        double w[3];
        for (std::size_t k = 0; k < g.size(); ++k) {
            fg.point(k, w);
            const double want = c * std::exp(-0.5 * (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]));
            err = std::max(err, std::abs(s.coefficients[k] - want));
        }
        CHECK(err < 1e-8);
    }
    SUBCASE("shift theorem") {
        const SpectralField a = forward(testutil::gaussian_field(g));
        const SpectralField b = forward(testutil::gaussian_field(g, 1.0));
        double err = 0.0;
        double w[3];
        for (std::size_t k = 0; k < g.size(); ++k) {
            fg.point(k, w);
            err = std::max(err, std::abs(b.coefficients[k] - a.coefficients[k] * std::exp(Complex(0, -w[0]))));
        }
        CHECK(err < 1e-8);
    }
    SUBCASE("y-axis sign convention") {
        const Field f = sample(testutil::packet({1, 1, 1}, {3, 0, 2}), g);
        const SpectralField s = forward(f);
        std::size_t best = 0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (std::abs(s.coefficients[k]) > std::abs(s.coefficients[best])) best = k;
        }
        double w[3];
        fg.point(best, w);
        CHECK(std::abs(w[2] - 2.0) <= fg.spacing(2));
        CHECK(std::abs(w[0] - 3.0) <= fg.spacing(0));
    }
    SUBCASE("linearity") {
        const Field f = sample(testutil::default_packet(), g);
        const Field h = sample(testutil::packet({1, 2, 1}, {-4, 1, 1}, {1, 0, -1}), g);
        const Complex alpha(0.7, -1.2), beta(-2.0, 0.1);
        Field mix = f;
        for (std::size_t k = 0; k < g.size(); ++k) mix.values[k] = alpha * f.values[k] + beta * h.values[k];
        const auto sf = forward(f), sh = forward(h), sm = forward(mix);
        double err = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            err = std::max(err, std::abs(sm.coefficients[k] - alpha * sf.coefficients[k] - beta * sh.coefficients[k]));
            scale = std::max(scale, std::abs(sm.coefficients[k]));
        }
        CHECK(err < 1e-13 * scale);
    }
    SUBCASE("agrees with the direct sum at sampled nodes") {
        const Field f = sample(testutil::default_packet(), g);
        const SpectralField s = forward(f);
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        double err = 0.0;
        double w[3];
        for (int rep = 0; rep < 12; ++rep) {
            const std::size_t k = pick(rng);
            fg.point(k, w);
            const double xi[1] = {w[1]}, eta[1] = {w[2]};
            err = std::max(err, std::abs(s.coefficients[k] - oracle::direct_fourier(f, w[0], xi, eta)));
        }
        CHECK(err < 1e-8);
    }
}

TEST_CASE("inverse transform") {
    const GridSpec& g = default_grid();
    SUBCASE("round trip") {
        const Field f = sample(testutil::packet({1.5, 1, 2}, {3, -1, 2}, {1, 0.5, -2}), g);
        CHECK(max_abs_diff(inverse(forward(f)), f) < 1e-12 * max_abs(f));
    }
    SUBCASE("zero spectrum") {
        SpectralField s{g, 0.0, std::vector<Complex>(g.size())};
        CHECK(max_abs(inverse(s)) == 0.0);
    }
    SUBCASE("single node") {
        const FrequencyGrid fg(g);
        const int k = 40, j = 30, m = 20;
        SpectralField s{g, 0.0, std::vector<Complex>(g.size())};
        const auto strides = g.strides();
        s.coefficients[k * strides[0] + j * strides[1] + m] = 1.0;
        const Field f = inverse(s);
        const double lam = fg.frequency(0, k), xi = fg.frequency(1, j), eta = fg.frequency(2, m);
        const double scale = 0.5 * std::pow(2.0 * kPi, -3.0) * std::pow(fg.spacing(0), 3);
        double err = 0.0;
        double p[3];
        for (std::size_t q = 0; q < g.size(); ++q) {
            g.point(q, p);
            const Complex want = scale * std::exp(Complex(0, p[0] * lam + p[1] * xi - p[2] * eta));
            err = std::max(err, std::abs(f.values[q] - want));
        }
        CHECK(err < 1e-12 * scale);
    }
}

TEST_CASE("Plancherel ratio") {
    const GridSpec& g = default_grid();
    const double want = 4.0 * std::pow(2.0 * kPi, 3);
    CHECK(want == doctest::Approx(992.200854).epsilon(1e-9));
    Field f = sample(testutil::default_packet(), g);
    CHECK(std::abs(plancherel_ratio(f) - want) < 1e-10 * want);
    for (auto& z : f.values) z *= 5.0;
    CHECK(std::abs(plancherel_ratio(f) - want) < 1e-10 * want);

    oracle::PlaneWave pw{FrequencyGrid(g).frequency(0, 35), {FrequencyGrid(g).frequency(1, 12)}, {0.0}};
    CHECK(std::abs(plancherel_ratio(oracle::plane_wave_field(pw, g, 0.0)) - want) < 1e-10 * want);

    CHECK_THROWS_AS(plancherel_ratio(Field::zeros(g)), InvalidArgument);
}
