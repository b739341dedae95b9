#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace uhyp {

using Complex = std::complex<double>;

/// Role of a grid axis. Axis 0 is s, then d axes of x, then n axes of y.
enum class AxisRole { s, x, y };

/// Uniform periodic grid on prod_axis [-L, L) for the variables (s, x_1..x_d, y_1..y_n).
struct GridSpec {
    int d = 1;
    int n = 1;
    std::vector<double> extent;  // L per axis
    std::vector<int> points;     // M per axis, even

    static GridSpec uniform(int d, int n, double extent, int points);

    /// Throws InvalidArgument unless d, n >= 1, every M is even and positive,
    /// every L is positive and finite, and the per-axis vectors have N + 1 entries.
    void validate() const;

    int axes() const noexcept { return 1 + d + n; }
    AxisRole role(int axis) const noexcept;
    double spacing(int axis) const;
    double coordinate(int axis, int index) const;
    std::size_t size() const noexcept;
    double cell_volume() const;

    /// Row-major strides: axis 0 slowest, last axis fastest.
    std::vector<std::size_t> strides() const;
    /// Writes the axis indices of a flat position into `index` (length axes()).
    void unravel(std::size_t flat, std::span<int> index) const;
    /// Writes the coordinates of a flat position into `point` (length axes()).
    void point(std::size_t flat, std::span<double> point) const;

    bool operator==(const GridSpec&) const = default;
};

/// Complex samples of v(t, .) on a grid.
struct Field {
    GridSpec grid;
    double time = 0.0;
    std::vector<Complex> values;

    static Field zeros(const GridSpec& grid, double time = 0.0);

    /// Throws InvalidArgument on a size mismatch or a non-finite value.
    void validate() const;
};

/// One Gaussian wave packet
///   c * exp(-sum_k (p_k - p0_k)^2 / (2 width_k^2)) * exp(i (s lambda0 + x.xi0 - y.eta0)).
/// `center`, `width` and `carrier` are indexed by grid axis.
struct GaussianPacket {
    Complex amplitude{1.0, 0.0};
    std::vector<double> center;
    std::vector<double> width;
    std::vector<double> carrier;
};

/// Analytic initial data: a finite sum of Gaussian packets.
struct InitialData {
    int d = 1;
    int n = 1;
    std::vector<GaussianPacket> terms;

    int axes() const noexcept { return 1 + d + n; }

    /// Throws InvalidArgument on shape errors, non-positive widths, or a term
    /// violating |lambda0| >= 3 / width_s.
    void validate() const;

    /// v0 at a point (s, x_1..x_d, y_1..y_n).
    Complex value(std::span<const double> point) const;
};

/// Minimum |lambda0| * width_s accepted for a packet.
inline constexpr double kSpectralConcentration = 3.0;

/// Evaluates `data` at every node; throws ResolutionError when a carrier
/// exceeds the Nyquist frequency of its axis.
Field sample(const InitialData& data, const GridSpec& grid);

/// Riemann approximation of the L2(R^{N+1}) norm.
double l2_norm(const Field& f);

/// max_k |a_k - b_k|; the fields must share a grid.
double max_abs_diff(const Field& a, const Field& b);
double max_abs(const Field& f);

}  // namespace uhyp
