#pragma once

#include <span>
#include <vector>

#include "uhyp/grid.hpp"

namespace uhyp {

/// Frequency lattice dual to a GridSpec. Along every axis the frequencies are
/// omega_k = pi k / L for k = -M/2 .. M/2 - 1, stored in increasing order, so
/// index M/2 is the zero frequency. Axis 0 carries lambda, the next d axes xi,
/// the last n axes eta.
struct FrequencyGrid {
    GridSpec grid;

    explicit FrequencyGrid(GridSpec g);

    double spacing(int axis) const;
    double frequency(int axis, int index) const;
    int zero_index(int axis) const { return grid.points[axis] / 2; }
    /// Writes the frequencies (lambda, xi, eta) of a flat position into `omega`.
    void point(std::size_t flat, std::span<double> omega) const;
    double cell_volume() const;
};

/// Coefficients of the transform
///   (F f)(lambda, xi, eta) = 2 \int e^{-i(s lambda + x.xi - y.eta)} f ds dx dy
/// on the frequency lattice, same flat ordering as Field.
struct SpectralField {
    GridSpec grid;
    double time = 0.0;
    std::vector<Complex> coefficients;

    FrequencyGrid frequencies() const { return FrequencyGrid(grid); }
};

SpectralField forward(const Field& f);

/// Inverse of `forward`:
///   (F^{-1} g)(s, x, y) = (1/2) (2 pi)^{-(N+1)} \int e^{+i(s lambda + x.xi - y.eta)} g.
Field inverse(const SpectralField& g);

/// sum |F f|^2 dOmega / ||f||^2, which equals 4 (2 pi)^{N+1} for every nonzero field.
double plancherel_ratio(const Field& f);

}  // namespace uhyp
