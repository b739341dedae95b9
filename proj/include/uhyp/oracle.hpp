#pragma once

// Slow, transform-free reference computations. Nothing here calls into the
// FFT path, so tests can pit these against spectral/propagator results.

#include <span>
#include <vector>

#include "uhyp/grid.hpp"

namespace uhyp::oracle {

/// Single Fourier mode exp(i (s lambda + x.xi - y.eta)) and its exact evolution.
struct PlaneWave {
    double lambda = 1.0;
    std::vector<double> xi;
    std::vector<double> eta;
};

/// exp(i (s lambda + x.xi - y.eta + t (|eta|^2 - |xi|^2) / lambda)).
/// Throws SingularFrequency for lambda == 0.
Complex plane_wave_value(const PlaneWave& pw, double t, double s, std::span<const double> x,
                         std::span<const double> y);

/// The plane wave sampled on every node of `grid` at time t.
Field plane_wave_field(const PlaneWave& pw, const GridSpec& grid, double t);

/// 2 * sum_nodes exp(-i (s lambda + x.xi - y.eta)) f * cell volume, at any frequency.
Complex direct_fourier(const Field& f, double lambda, std::span<const double> xi,
                       std::span<const double> eta);

/// Closed-form transform of Gaussian-packet data (factor 2 included).
Complex gaussian_spectrum(const InitialData& data, double lambda, std::span<const double> xi,
                          std::span<const double> eta);

/// Evolved packet at one point, summed directly over the frequency lattice of
/// `grid` (lambda = 0 plane excluded):
///   (1/2)(2 pi)^{-(N+1)} dOmega sum exp(i (s lambda + x.xi - y.eta + t (|eta|^2-|xi|^2)/lambda)) F v0.
Complex lattice_solution(const InitialData& data, const GridSpec& grid, double t,
                         std::span<const double> point);

}  // namespace uhyp::oracle
