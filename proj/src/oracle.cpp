#include "uhyp/oracle.hpp"

#include <cmath>
#include <numbers>

#include "uhyp/errors.hpp"

namespace uhyp::oracle {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_shape(const PlaneWave& pw, std::size_t d, std::size_t n) {
    if (pw.xi.size() != d || pw.eta.size() != n) {
        throw InvalidArgument("plane wave frequency dimensions do not match the point");
    }
}

}  // namespace

Complex plane_wave_value(const PlaneWave& pw, double t, double s, std::span<const double> x,
                         std::span<const double> y) {
    check_shape(pw, x.size(), y.size());
    if (pw.lambda == 0.0) throw SingularFrequency("plane wave needs lambda != 0");
    const double xi2 = dot(pw.xi, pw.xi);
    const double eta2 = dot(pw.eta, pw.eta);
    const double phase = s * pw.lambda + dot(x, pw.xi) - dot(y, pw.eta) + t * (eta2 - xi2) / pw.lambda;
    return std::polar(1.0, phase);
}

Field plane_wave_field(const PlaneWave& pw, const GridSpec& grid, double t) {
    Field f = Field::zeros(grid, t);
    std::vector<double> p(grid.axes());
    const std::span<const double> all(p);
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        grid.point(k, p);
        f.values[k] = plane_wave_value(pw, t, p[0], all.subspan(1, grid.d),
                                       all.subspan(1 + grid.d, grid.n));
    }
    return f;
}

Complex direct_fourier(const Field& f, double lambda, std::span<const double> xi,
                       std::span<const double> eta) {
    const GridSpec& g = f.grid;
    if (xi.size() != static_cast<std::size_t>(g.d) || eta.size() != static_cast<std::size_t>(g.n)) {
        throw InvalidArgument("frequency dimensions do not match the field");
    }
    std::vector<double> p(g.axes());
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        g.point(k, p);
        double phase = p[0] * lambda;
        for (int a = 0; a < g.d; ++a) phase += p[1 + a] * xi[a];
        for (int a = 0; a < g.n; ++a) phase -= p[1 + g.d + a] * eta[a];
        sum += std::polar(1.0, -phase) * f.values[k];
    }
    return 2.0 * g.cell_volume() * sum;
}

Complex gaussian_spectrum(const InitialData& data, double lambda, std::span<const double> xi,
                          std::span<const double> eta) {
    if (xi.size() != static_cast<std::size_t>(data.d) || eta.size() != static_cast<std::size_t>(data.n)) {
        throw InvalidArgument("frequency dimensions do not match the initial data");
    }
    const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
    Complex sum{0.0, 0.0};
    for (const GaussianPacket& t : data.terms) {
        // Per axis: \int e^{-i sgn p (w - w0)} e^{-(p - p0)^2 / (2 sigma^2)} dp
        //         = sigma sqrt(2 pi) e^{-sigma^2 (w - w0)^2 / 2} e^{-i sgn p0 (w - w0)}.
        double exponent = 0.0;
        double phase = 0.0;
        double scale = 1.0;
        auto axis = [&](int a, double w, double sign) {
            const double dw = w - t.carrier[a];
            const double sw = t.width[a] * dw;
            exponent += sw * sw;
            phase -= sign * t.center[a] * dw;
            scale *= t.width[a] * root_two_pi;
        };
        axis(0, lambda, 1.0);
        for (int a = 0; a < data.d; ++a) axis(1 + a, xi[a], 1.0);
        for (int a = 0; a < data.n; ++a) axis(1 + data.d + a, eta[a], -1.0);
        sum += t.amplitude * (2.0 * scale * std::exp(-0.5 * exponent)) * std::polar(1.0, phase);
    }
    return sum;
}

Complex lattice_solution(const InitialData& data, const GridSpec& grid, double t,
                         std::span<const double> point) {
    grid.validate();
    const int axes = grid.axes();
    std::vector<double> dw(axes);
    double cell = 1.0;
    for (int a = 0; a < axes; ++a) {
        dw[a] = std::numbers::pi / grid.extent[a];
        cell *= dw[a];
    }
    std::vector<int> index(axes);
    std::vector<double> omega(axes);
    const std::span<const double> all(omega);
    Complex sum{0.0, 0.0};
    const std::size_t total = grid.size();
    for (std::size_t k = 0; k < total; ++k) {
        grid.unravel(k, index);
        for (int a = 0; a < axes; ++a) omega[a] = dw[a] * (index[a] - grid.points[a] / 2);
        if (omega[0] == 0.0) continue;
        const auto xi = all.subspan(1, grid.d);
        const auto eta = all.subspan(1 + grid.d, grid.n);
        const Complex spectrum = gaussian_spectrum(data, omega[0], xi, eta);
        PlaneWave pw{omega[0], {xi.begin(), xi.end()}, {eta.begin(), eta.end()}};
        sum += spectrum * plane_wave_value(pw, t, point[0],
                                           std::span<const double>(point).subspan(1, grid.d),
                                           std::span<const double>(point).subspan(1 + grid.d, grid.n));
    }
    return 0.5 * std::pow(2.0 * std::numbers::pi, -axes) * cell * sum;
}

}  // namespace uhyp::oracle
