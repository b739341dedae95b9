#include "uhyp/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "uhyp/errors.hpp"

namespace uhyp {

GridSpec GridSpec::uniform(int d, int n, double extent, int points) {
    GridSpec g;
    g.d = d;
    g.n = n;
    const int axes = 1 + std::max(d, 0) + std::max(n, 0);
    g.extent.assign(axes, extent);
    g.points.assign(axes, points);
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (d < 1 || n < 1) throw InvalidArgument("grid requires d >= 1 and n >= 1");
    const auto axes_count = static_cast<std::size_t>(axes());
    if (extent.size() != axes_count || points.size() != axes_count) {
        throw InvalidArgument("grid needs one extent and one point count per axis");
    }
    for (std::size_t a = 0; a < axes_count; ++a) {
        if (!(std::isfinite(extent[a]) && extent[a] > 0.0)) {
            throw InvalidArgument("grid extent must be positive and finite");
        }
        if (points[a] < 2 || points[a] % 2 != 0) {
            throw InvalidArgument("grid point count must be a positive even integer");
        }
    }
}

AxisRole GridSpec::role(int axis) const noexcept {
    if (axis == 0) return AxisRole::s;
    return axis <= d ? AxisRole::x : AxisRole::y;
}

double GridSpec::spacing(int axis) const { return 2.0 * extent[axis] / points[axis]; }

double GridSpec::coordinate(int axis, int index) const {
    return -extent[axis] + index * spacing(axis);
}

std::size_t GridSpec::size() const noexcept {
    std::size_t total = 1;
    for (int m : points) total *= static_cast<std::size_t>(m);
    return total;
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < axes(); ++a) v *= spacing(a);
    return v;
}

std::vector<std::size_t> GridSpec::strides() const {
    std::vector<std::size_t> s(points.size(), 1);
    for (int a = static_cast<int>(points.size()) - 2; a >= 0; --a) {
        s[a] = s[a + 1] * static_cast<std::size_t>(points[a + 1]);
    }
    return s;
}

void GridSpec::unravel(std::size_t flat, std::span<int> index) const {
    for (int a = axes() - 1; a >= 0; --a) {
        const auto m = static_cast<std::size_t>(points[a]);
        index[a] = static_cast<int>(flat % m);
        flat /= m;
    }
}

void GridSpec::point(std::size_t flat, std::span<double> p) const {
    for (int a = axes() - 1; a >= 0; --a) {
        const auto m = static_cast<std::size_t>(points[a]);
        p[a] = coordinate(a, static_cast<int>(flat % m));
        flat /= m;
    }
}

Field Field::zeros(const GridSpec& grid, double time) {
    grid.validate();
    return Field{grid, time, std::vector<Complex>(grid.size())};
}

void Field::validate() const {
    grid.validate();
    if (values.size() != grid.size()) {
        throw InvalidArgument("field has " + std::to_string(values.size()) +
                              " values, grid expects " + std::to_string(grid.size()));
    }
    for (const Complex& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidArgument("field contains a non-finite value");
        }
    }
}

void InitialData::validate() const {
    if (d < 1 || n < 1) throw InvalidArgument("initial data requires d >= 1 and n >= 1");
    const auto axes_count = static_cast<std::size_t>(axes());
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const GaussianPacket& t = terms[k];
        if (t.center.size() != axes_count || t.width.size() != axes_count ||
            t.carrier.size() != axes_count) {
            throw InvalidArgument("packet " + std::to_string(k) +
                                  ": center, width and carrier need one entry per axis");
        }
        for (double w : t.width) {
            if (!(std::isfinite(w) && w > 0.0)) {
                throw InvalidArgument("packet " + std::to_string(k) + ": widths must be positive");
            }
        }
        if (std::abs(t.carrier[0]) * t.width[0] < kSpectralConcentration) {
            std::ostringstream msg;
            msg << "packet " << k << ": |lambda0| = " << std::abs(t.carrier[0])
                << " is below " << kSpectralConcentration << " / width_s = "
                << kSpectralConcentration / t.width[0];
            throw InvalidArgument(msg.str());
        }
    }
}

namespace {

// Signed phase coefficient of an axis in exp(i (s lambda + x.xi - y.eta)).
double phase_sign(int d, int axis) { return axis <= d ? 1.0 : -1.0; }

}  // namespace

Complex InitialData::value(std::span<const double> p) const {
    Complex sum{0.0, 0.0};
    for (const GaussianPacket& t : terms) {
        double exponent = 0.0;
        double phase = 0.0;
        for (int a = 0; a < axes(); ++a) {
            const double z = (p[a] - t.center[a]) / t.width[a];
            exponent += z * z;
            phase += phase_sign(d, a) * t.carrier[a] * p[a];
        }
        sum += t.amplitude * std::exp(-0.5 * exponent) * std::polar(1.0, phase);
    }
    return sum;
}

Field sample(const InitialData& data, const GridSpec& grid) {
    data.validate();
    grid.validate();
    if (data.d != grid.d || data.n != grid.n) {
        throw InvalidArgument("initial data and grid disagree on d or n");
    }
    const int axes = grid.axes();
    for (const GaussianPacket& t : data.terms) {
        for (int a = 0; a < axes; ++a) {
            if (std::abs(t.carrier[a]) * grid.spacing(a) > std::numbers::pi) {
                std::ostringstream msg;
                msg << "carrier " << t.carrier[a] << " on axis " << a
                    << " exceeds the grid Nyquist frequency " << std::numbers::pi / grid.spacing(a);
                throw ResolutionError(msg.str());
            }
        }
    }

    Field out = Field::zeros(grid, 0.0);
    const std::size_t total = grid.size();
    std::vector<int> index(axes);
    // Each packet is a product of one-dimensional factors.
    std::vector<std::vector<Complex>> factor(axes);
    for (const GaussianPacket& t : data.terms) {
        for (int a = 0; a < axes; ++a) {
            factor[a].resize(grid.points[a]);
            for (int i = 0; i < grid.points[a]; ++i) {
                const double p = grid.coordinate(a, i);
                const double z = (p - t.center[a]) / t.width[a];
                factor[a][i] = std::exp(-0.5 * z * z) *
                               std::polar(1.0, phase_sign(grid.d, a) * t.carrier[a] * p);
            }
        }
        for (std::size_t k = 0; k < total; ++k) {
            grid.unravel(k, index);
            Complex v = t.amplitude;
            for (int a = 0; a < axes; ++a) v *= factor[a][index[a]];
            out.values[k] += v;
        }
    }
    return out;
}

double l2_norm(const Field& f) {
    double sum = 0.0;
    for (const Complex& v : f.values) sum += std::norm(v);
    return std::sqrt(sum * f.grid.cell_volume());
}

double max_abs_diff(const Field& a, const Field& b) {
    if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
        throw InvalidArgument("fields live on different grids");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        m = std::max(m, std::abs(a.values[k] - b.values[k]));
    }
    return m;
}

double max_abs(const Field& f) {
    double m = 0.0;
    for (const Complex& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace uhyp
