#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uhyp/grid.hpp"
#include "uhyp/spectral.hpp"

namespace uhyp {

enum class ZeroPlaneRule { zero_out, reject };

/// How evolve treats the lattice plane lambda = 0, where the multiplier is undefined.
struct MultiplierPolicy {
    ZeroPlaneRule rule = ZeroPlaneRule::zero_out;
    double threshold = 1e-6;  // energy fraction tolerated under `reject`

    void validate() const;
};

/// exp(i t (|eta|^2 - |xi|^2) / lambda). Throws SingularFrequency for lambda == 0.
Complex multiplier(double t, double lambda, std::span<const double> xi, std::span<const double> eta);

/// Fraction of sum |g|^2 carried by the lambda = 0 plane (0 for a zero spectrum).
double zero_plane_energy_fraction(const SpectralField& g);

/// Advances `v` by `t`: forward transform, multiplier, lambda = 0 plane per
/// policy, inverse transform. The result is tagged with v.time + t. A zero step
/// is the identity and leaves the lambda = 0 plane untouched.
Field evolve(const Field& v, double t, const MultiplierPolicy& policy = {});

/// Snapshots of one solution at strictly increasing times.
struct Trajectory {
    std::vector<Field> snapshots;
    double zero_plane_fraction = 0.0;  // of the source data
    double initial_norm = 0.0;

    std::size_t size() const noexcept { return snapshots.size(); }
    bool empty() const noexcept { return snapshots.empty(); }
    /// max over snapshots of | ||v(t)|| - ||v0|| | / ||v0|| (0 for zero data).
    double conservation_deviation() const;
};

/// One evolve per requested time, sharing a single forward transform.
Trajectory evolve_trajectory(const Field& v0, std::span<const double> times,
                             const MultiplierPolicy& policy = {});

/// Spectral residual of the transformed equation at snapshot i:
///   max over lambda != 0 of | i lambda (g_{i+1} - g_{i-1}) / (2 dt) - (|xi|^2 - |eta|^2) g_i |
/// divided by max |g_i| (0 when g_i vanishes). Requires 1 <= i <= size - 2 and
/// equal spacing of the three times.
double pde_residual(const Trajectory& traj, std::size_t i);

}  // namespace uhyp
