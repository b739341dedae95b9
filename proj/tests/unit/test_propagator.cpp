#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "uhyp/errors.hpp"
#include "uhyp/oracle.hpp"
#include "uhyp/propagator.hpp"

using namespace uhyp;

namespace {

constexpr double kPi = std::numbers::pi;

const GridSpec& default_grid() {
    static const GridSpec g = GridSpec::uniform(1, 1, 10.0, 64);
    return g;
}

const Field& packet_field() {
    static const Field f = sample(testutil::default_packet(), default_grid());
    return f;
}

oracle::PlaneWave lattice_mode(const GridSpec& g, int k, int j, int m) {
    const FrequencyGrid fg(g);
    return {fg.frequency(0, k), {fg.frequency(1, j)}, {fg.frequency(2, m)}};
}

Field project_off_zero_plane(const Field& f) {
    SpectralField s = forward(f);
    const auto strides = f.grid.strides();
    const std::size_t base = static_cast<std::size_t>(f.grid.points[0] / 2) * strides[0];
    for (std::size_t k = 0; k < strides[0]; ++k) s.coefficients[base + k] = 0.0;
    return inverse(s);
}

}  // namespace

TEST_CASE("multiplier") {
    const double xi[1] = {0.8}, eta[1] = {-0.8}, zero[1] = {0.0}, one[1] = {1.0};
    CHECK(multiplier(0.0, 2.0, one, zero) == Complex(1, 0));
    CHECK(std::abs(multiplier(3.7, -1.4, xi, eta) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(multiplier(kPi, 1.0, zero, one) - Complex(-1, 0)) < 1e-15);
    for (double t : {-5.0, 0.3, 10.0}) {
        CHECK(std::abs(std::abs(multiplier(t, 0.31, xi, one)) - 1.0) < 1e-15);
    }
    CHECK_THROWS_AS(multiplier(1.0, 0.0, xi, eta), SingularFrequency);
}

TEST_CASE("policy validation") {
    CHECK_THROWS_AS((MultiplierPolicy{ZeroPlaneRule::reject, 0.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS((MultiplierPolicy{ZeroPlaneRule::reject, 1.0}).validate(), InvalidArgument);
    CHECK_NOTHROW(MultiplierPolicy{}.validate());
}

TEST_CASE("evolve") {
    const Field& v0 = packet_field();
    SUBCASE("zero step is the identity") {
        const Field v = evolve(v0, 0.0);
        CHECK(max_abs_diff(v, v0) < 1e-12);
        CHECK(v.time == 0.0);
    }
    SUBCASE("result carries the advanced time") { CHECK(evolve(v0, 1.5).time == 1.5); }
    SUBCASE("lattice modes are eigenvectors") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> idx(0, 63);
        std::uniform_real_distribution<double> time(-5.0, 5.0);
        for (int rep = 0; rep < 5; ++rep) {
            int k = idx(rng);
            if (k == 32) k = 33;
            const auto pw = lattice_mode(default_grid(), k, idx(rng), idx(rng));
            const double t = time(rng);
            const Field got = evolve(oracle::plane_wave_field(pw, default_grid(), 0.0), t);
            const Field want = oracle::plane_wave_field(pw, default_grid(), t);
            CHECK(max_abs_diff(got, want) < 1e-12);
        }
    }
    SUBCASE("packet against the lattice oracle") {
        const InitialData d = testutil::packet({1.5, 1, 1}, {3, 0, 0});
        const Field v = evolve(sample(d, default_grid()), 1.0);
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::size_t> pick(0, default_grid().size() - 1);
        double worst = 0.0;
        double p[3];
        for (int rep = 0; rep < 6; ++rep) {
            // half of the points near the packet, half anywhere
            const std::size_t k = rep % 2 ? pick(rng) : (30 + rep) * 4096 + (31 + rep) * 64 + 32;
            default_grid().point(k, p);
            worst = std::max(worst, std::abs(oracle::lattice_solution(d, default_grid(), 1.0, p) - v.values[k]));
        }
        CHECK(worst < 1e-6);
    }
    SUBCASE("conservation") {
        const double n0 = l2_norm(v0);
        for (double t : {0.5, 1.0, 2.0, 10.0, -3.0}) CHECK(std::abs(l2_norm(evolve(v0, t)) - n0) < 1e-10 * n0);
    }
    SUBCASE("group law") {
        for (auto [a, b] : {std::pair{0.4, 1.1}, std::pair{-2.0, 0.7}}) {
            CHECK(max_abs_diff(evolve(evolve(v0, a), b), evolve(v0, a + b)) < 1e-12);
        }
    }
    SUBCASE("time reversal gives the projected data") {
        CHECK(max_abs_diff(evolve(evolve(v0, 1.3), -1.3), project_off_zero_plane(v0)) < 1e-12);
    }
    SUBCASE("reject policy") {
        Field lump = testutil::gaussian_field(default_grid());
        const MultiplierPolicy strict{ZeroPlaneRule::reject, 1e-6};
        try {
            evolve(lump, 1.0, strict);
            FAIL("expected IllPreparedData");
        } catch (const IllPreparedData& e) {
            CHECK(e.fraction() > 1e-6);
            CHECK(e.fraction() == doctest::Approx(zero_plane_energy_fraction(forward(lump))));
        }
        CHECK_NOTHROW(evolve(v0, 1.0, strict));
    }
}

TEST_CASE("trajectory") {
    const Field& v0 = packet_field();
    SUBCASE("single zero time") {
        const std::vector<double> times{0.0};
        const Trajectory tr = evolve_trajectory(v0, times);
        REQUIRE(tr.size() == 1);
        CHECK(max_abs_diff(tr.snapshots[0], v0) < 1e-12);
        CHECK(tr.conservation_deviation() < 1e-12);
    }
    SUBCASE("two times follow the group law") {
        const std::vector<double> times{1.0, 2.0};
        const Trajectory tr = evolve_trajectory(v0, times);
        REQUIRE(tr.size() == 2);
        CHECK(tr.snapshots[1].time == 2.0);
        CHECK(max_abs_diff(tr.snapshots[1], evolve(evolve(v0, 1.0), 1.0)) < 1e-12);
        CHECK(tr.zero_plane_fraction < 1e-12);
        CHECK(tr.conservation_deviation() < 1e-10);
    }
    SUBCASE("empty") { CHECK(evolve_trajectory(v0, std::vector<double>{}).empty()); }
    SUBCASE("times must increase") {
        CHECK_THROWS_AS(evolve_trajectory(v0, std::vector<double>{1.0, 1.0}), InvalidArgument);
    }
}

TEST_CASE("PDE residual") {
    const GridSpec& g = default_grid();
    SUBCASE("lattice mode") {
        const auto pw = lattice_mode(g, 42, 35, 37);
        const Trajectory tr = evolve_trajectory(oracle::plane_wave_field(pw, g, 0.0), std::vector<double>{0.99, 1.0, 1.01});
        CHECK(pde_residual(tr, 1) < 1e-3);
    }
    SUBCASE("halving dt divides the residual by four") {
        const Field& v0 = packet_field();
        double prev = 0.0;
        for (double dt : {0.02, 0.01, 0.005}) {
            const double r = pde_residual(evolve_trajectory(v0, std::vector<double>{1 - dt, 1, 1 + dt}), 1);
            if (prev > 0.0) CHECK(prev / r == doctest::Approx(4.0).epsilon(0.2));
            prev = r;
        }
    }
    SUBCASE("a constant trajectory is not a solution") {
        Trajectory tr;
        for (double t : {0.0, 0.01, 0.02}) {
            Field f = packet_field();
            f.time = t;
            tr.snapshots.push_back(f);
        }
        CHECK(pde_residual(tr, 1) > 0.1);
    }
    SUBCASE("zero trajectory") {
        Trajectory tr;
        for (double t : {0.0, 0.5, 1.0}) tr.snapshots.push_back(Field::zeros(g, t));
        CHECK(pde_residual(tr, 1) == 0.0);
    }
    SUBCASE("argument errors") {
        const Trajectory tr = evolve_trajectory(packet_field(), std::vector<double>{0.0, 0.1, 0.3});
        CHECK_THROWS_AS(pde_residual(tr, 0), InvalidArgument);
        CHECK_THROWS_AS(pde_residual(tr, 2), InvalidArgument);
        CHECK_THROWS_AS(pde_residual(tr, 1), InvalidArgument);
    }
}
