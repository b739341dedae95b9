#include "uhyp/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uhyp/errors.hpp"

namespace uhyp {

void MultiplierPolicy::validate() const {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw InvalidArgument("multiplier policy threshold must lie in (0, 1)");
    }
}

Complex multiplier(double t, double lambda, std::span<const double> xi, std::span<const double> eta) {
    if (lambda == 0.0) throw SingularFrequency("multiplier is singular at lambda = 0");
    double xi2 = 0.0;
    double eta2 = 0.0;
    for (double v : xi) xi2 += v * v;
    for (double v : eta) eta2 += v * v;
    return std::polar(1.0, t * ((eta2 - xi2) / lambda));
}

namespace {

// Per-node dispersion (|eta|^2 - |xi|^2) / lambda; nodes on the lambda = 0
// plane are flagged instead.
struct Dispersion {
    std::vector<double> rate;
    std::vector<unsigned char> on_zero_plane;
};

Dispersion dispersion(const GridSpec& grid) {
    const FrequencyGrid fg(grid);
    const std::size_t total = grid.size();
    Dispersion out{std::vector<double>(total), std::vector<unsigned char>(total)};
    std::vector<double> omega(grid.axes());
    for (std::size_t k = 0; k < total; ++k) {
        fg.point(k, omega);
        double xi2 = 0.0;
        double eta2 = 0.0;
        for (int a = 1; a <= grid.d; ++a) xi2 += omega[a] * omega[a];
        for (int a = grid.d + 1; a < grid.axes(); ++a) eta2 += omega[a] * omega[a];
        if (omega[0] == 0.0) {
            out.on_zero_plane[k] = 1;
        } else {
            out.rate[k] = (eta2 - xi2) / omega[0];
        }
    }
    return out;
}

double zero_plane_fraction(const SpectralField& g, const Dispersion& disp) {
    double plane = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < g.coefficients.size(); ++k) {
        const double e = std::norm(g.coefficients[k]);
        total += e;
        if (disp.on_zero_plane[k]) plane += e;
    }
    return total > 0.0 ? plane / total : 0.0;
}

void check_policy(const MultiplierPolicy& policy, double fraction) {
    if (policy.rule == ZeroPlaneRule::reject && fraction > policy.threshold) {
        std::ostringstream msg;
        msg << "lambda = 0 plane carries energy fraction " << fraction << " > threshold "
            << policy.threshold;
        throw IllPreparedData(msg.str(), fraction);
    }
}

Field apply(const SpectralField& g0, const Dispersion& disp, double t) {
    if (t == 0.0) {
        SpectralField same = g0;
        return inverse(same);
    }
    SpectralField g{g0.grid, g0.time + t, std::vector<Complex>(g0.coefficients.size())};
    for (std::size_t k = 0; k < g.coefficients.size(); ++k) {
        if (disp.on_zero_plane[k]) continue;
        g.coefficients[k] = g0.coefficients[k] * std::polar(1.0, t * disp.rate[k]);
    }
    return inverse(g);
}

}  // namespace

double zero_plane_energy_fraction(const SpectralField& g) {
    return zero_plane_fraction(g, dispersion(g.grid));
}

Field evolve(const Field& v, double t, const MultiplierPolicy& policy) {
    policy.validate();
    v.validate();
    if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
    if (t == 0.0) return v;
    const SpectralField g0 = forward(v);
    const Dispersion disp = dispersion(v.grid);
    check_policy(policy, zero_plane_fraction(g0, disp));
    Field out = apply(g0, disp, t);
    out.time = v.time + t;
    return out;
}

double Trajectory::conservation_deviation() const {
    if (initial_norm == 0.0) return 0.0;
    double worst = 0.0;
    for (const Field& f : snapshots) {
        worst = std::max(worst, std::abs(l2_norm(f) - initial_norm) / initial_norm);
    }
    return worst;
}

Trajectory evolve_trajectory(const Field& v0, std::span<const double> times,
                             const MultiplierPolicy& policy) {
    policy.validate();
    v0.validate();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i])) throw InvalidArgument("trajectory times must be finite");
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw InvalidArgument("trajectory times must be strictly increasing");
        }
    }
    Trajectory traj;
    traj.initial_norm = l2_norm(v0);
    const SpectralField g0 = forward(v0);
    const Dispersion disp = dispersion(v0.grid);
    traj.zero_plane_fraction = zero_plane_fraction(g0, disp);
    const bool any_nonzero = std::any_of(times.begin(), times.end(), [](double t) { return t != 0.0; });
    if (any_nonzero) check_policy(policy, traj.zero_plane_fraction);
    traj.snapshots.reserve(times.size());
    for (double t : times) {
        if (t == 0.0) {
            traj.snapshots.push_back(v0);
            continue;
        }
        Field f = apply(g0, disp, t);
        f.time = v0.time + t;
        traj.snapshots.push_back(std::move(f));
    }
    return traj;
}

double pde_residual(const Trajectory& traj, std::size_t i) {
    if (traj.size() < 3 || i < 1 || i + 1 >= traj.size()) {
        throw InvalidArgument("pde_residual needs an interior snapshot index (1 <= i <= size - 2)");
    }
    const double t_prev = traj.snapshots[i - 1].time;
    const double t_mid = traj.snapshots[i].time;
    const double t_next = traj.snapshots[i + 1].time;
    const double dt = t_mid - t_prev;
    if (std::abs((t_next - t_mid) - dt) > 1e-9 * std::max(std::abs(dt), 1e-300)) {
        throw InvalidArgument("pde_residual needs uniform time spacing around the index");
    }

    const SpectralField prev = forward(traj.snapshots[i - 1]);
    const SpectralField mid = forward(traj.snapshots[i]);
    const SpectralField next = forward(traj.snapshots[i + 1]);
    const FrequencyGrid fg(mid.grid);
    const GridSpec& grid = mid.grid;

    double scale = 0.0;
    for (const Complex& c : mid.coefficients) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;

    const Complex i_unit{0.0, 1.0};
    std::vector<double> omega(grid.axes());
    double worst = 0.0;
    for (std::size_t k = 0; k < mid.coefficients.size(); ++k) {
        fg.point(k, omega);
        const double lambda = omega[0];
        if (lambda == 0.0) continue;
        double xi2 = 0.0;
        double eta2 = 0.0;
        for (int a = 1; a <= grid.d; ++a) xi2 += omega[a] * omega[a];
        for (int a = grid.d + 1; a < grid.axes(); ++a) eta2 += omega[a] * omega[a];
        const Complex dgdt = (next.coefficients[k] - prev.coefficients[k]) / (2.0 * dt);
        const Complex r = i_unit * lambda * dgdt - (xi2 - eta2) * mid.coefficients[k];
        worst = std::max(worst, std::abs(r));
    }
    return worst / scale;
}

}  // namespace uhyp
