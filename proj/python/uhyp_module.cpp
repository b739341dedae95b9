#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>
#include <string>

#include "uhyp/cone.hpp"
#include "uhyp/errors.hpp"
#include "uhyp/io.hpp"
#include "uhyp/oracle.hpp"
#include "uhyp/propagator.hpp"
#include "uhyp/quadrature.hpp"
#include "uhyp/spectral.hpp"

namespace py = pybind11;
using namespace uhyp;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

std::vector<py::ssize_t> shape_of(const GridSpec& g) { return {g.points.begin(), g.points.end()}; }

ComplexArray to_array(const GridSpec& g, const std::vector<Complex>& v) {
    ComplexArray out(shape_of(g));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::vector<Complex> from_array(const GridSpec& g, const ComplexArray& a) {
    if (static_cast<std::size_t>(a.size()) != g.size()) {
        throw InvalidArgument("array has " + std::to_string(a.size()) + " entries, grid needs " +
                              std::to_string(g.size()));
    }
    return {a.data(), a.data() + a.size()};
}

MultiplierPolicy make_policy(const std::string& zero_plane, double threshold) {
    MultiplierPolicy p;
    if (zero_plane == "zero-out") {
        p.rule = ZeroPlaneRule::zero_out;
    } else if (zero_plane == "reject") {
        p.rule = ZeroPlaneRule::reject;
    } else {
        throw InvalidArgument("zero_plane must be 'zero-out' or 'reject'");
    }
    p.threshold = threshold;
    return p;
}

ConeTestFunction corpus_entry(const std::string& name) {
    for (auto& w : identity_corpus()) {
        if (w.name == name) return w;
    }
    throw InvalidArgument("no test function named '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral solver for the ultrahyperbolic characteristic problem";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<ResolutionError>(m, "ResolutionError", base.ptr());
    py::register_exception<SingularFrequency>(m, "SingularFrequency", base.ptr());
    py::register_exception<IllPreparedData>(m, "IllPreparedData", base.ptr());
    py::register_exception<OutOfBand>(m, "OutOfBand", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<FormatError>(m, "FormatError", base.ptr());

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](int d, int n, std::vector<double> extent, std::vector<int> points) {
                 GridSpec g{d, n, std::move(extent), std::move(points)};
                 g.validate();
                 return g;
             }),
             py::arg("d"), py::arg("n"), py::arg("extent"), py::arg("points"))
        .def_static("uniform", &GridSpec::uniform, py::arg("d"), py::arg("n"), py::arg("extent"), py::arg("points"))
        .def_readonly("d", &GridSpec::d)
        .def_readonly("n", &GridSpec::n)
        .def_readonly("extent", &GridSpec::extent)
        .def_readonly("points", &GridSpec::points)
        .def_property_readonly("axes", &GridSpec::axes)
        .def_property_readonly("size", &GridSpec::size)
        .def("spacing", &GridSpec::spacing)
        .def("coordinates", [](const GridSpec& g, int axis) {
            std::vector<double> c(g.points.at(axis));
            for (int i = 0; i < g.points[axis]; ++i) c[i] = g.coordinate(axis, i);
            return c;
        })
        .def(py::self == py::self)
        .def("__repr__", [](const GridSpec& g) {
            return "GridSpec(d=" + std::to_string(g.d) + ", n=" + std::to_string(g.n) + ", size=" +
                   std::to_string(g.size()) + ")";
        });

    py::class_<GaussianPacket>(m, "GaussianPacket")
        .def(py::init([](std::vector<double> width, std::vector<double> carrier, std::vector<double> center,
                         Complex amplitude) {
                 if (center.empty()) center.assign(width.size(), 0.0);
                 return GaussianPacket{amplitude, std::move(center), std::move(width), std::move(carrier)};
             }),
             py::arg("width"), py::arg("carrier"), py::arg("center") = std::vector<double>{},
             py::arg("amplitude") = Complex(1.0, 0.0))
        .def_readwrite("amplitude", &GaussianPacket::amplitude)
        .def_readwrite("center", &GaussianPacket::center)
        .def_readwrite("width", &GaussianPacket::width)
        .def_readwrite("carrier", &GaussianPacket::carrier);

    py::class_<InitialData>(m, "InitialData")
        .def(py::init([](int d, int n, std::vector<GaussianPacket> terms) {
                 InitialData data{d, n, std::move(terms)};
                 data.validate();
                 return data;
             }),
             py::arg("d"), py::arg("n"), py::arg("terms"))
        .def_readonly("d", &InitialData::d)
        .def_readonly("n", &InitialData::n)
        .def_readonly("terms", &InitialData::terms)
        .def("value", [](const InitialData& data, std::vector<double> p) { return data.value(p); });

    py::class_<Field>(m, "Field")
        .def(py::init([](const GridSpec& g, const ComplexArray& values, double time) {
                 Field f{g, time, from_array(g, values)};
                 f.validate();
                 return f;
             }),
             py::arg("grid"), py::arg("values"), py::arg("time") = 0.0)
        .def_readonly("grid", &Field::grid)
        .def_readonly("time", &Field::time)
        .def_property_readonly("values", [](const Field& f) { return to_array(f.grid, f.values); });

    py::class_<SpectralField>(m, "SpectralField")
        .def_readonly("grid", &SpectralField::grid)
        .def_readonly("time", &SpectralField::time)
        .def_property_readonly("coefficients",
                               [](const SpectralField& s) { return to_array(s.grid, s.coefficients); })
        .def("frequencies", [](const SpectralField& s, int axis) {
            const FrequencyGrid fg(s.grid);
            std::vector<double> w(s.grid.points.at(axis));
            for (int i = 0; i < s.grid.points[axis]; ++i) w[i] = fg.frequency(axis, i);
            return w;
        });

    m.def("sample", &sample, py::arg("data"), py::arg("grid"));
    m.def("l2_norm", &l2_norm, py::arg("field"));
    m.def("forward", &forward, py::arg("field"));
    m.def("inverse", &inverse, py::arg("spectrum"));
    m.def("plancherel_ratio", &plancherel_ratio, py::arg("field"));
    m.def(
        "multiplier",
        [](double t, double lambda, std::vector<double> xi, std::vector<double> eta) {
            return multiplier(t, lambda, xi, eta);
        },
        py::arg("t"), py::arg("lam"), py::arg("xi"), py::arg("eta"));
    m.def(
        "evolve",
        [](const Field& v, double t, const std::string& zero_plane, double threshold) {
            return evolve(v, t, make_policy(zero_plane, threshold));
        },
        py::arg("field"), py::arg("t"), py::arg("zero_plane") = "zero-out", py::arg("threshold") = 1e-6);
    m.def(
        "evolve_trajectory",
        [](const Field& v, std::vector<double> times, const std::string& zero_plane, double threshold) {
            return evolve_trajectory(v, times, make_policy(zero_plane, threshold)).snapshots;
        },
        py::arg("field"), py::arg("times"), py::arg("zero_plane") = "zero-out", py::arg("threshold") = 1e-6);
    m.def(
        "pde_residual",
        [](std::vector<Field> snapshots, std::size_t i) {
            Trajectory tr;
            tr.snapshots = std::move(snapshots);
            return pde_residual(tr, i);
        },
        py::arg("snapshots"), py::arg("index"));
    m.def(
        "zero_plane_energy_fraction", [](const Field& f) { return zero_plane_energy_fraction(forward(f)); },
        py::arg("field"));

    m.def(
        "plane_wave_field",
        [](const GridSpec& g, double lambda, std::vector<double> xi, std::vector<double> eta, double t) {
            return oracle::plane_wave_field({lambda, std::move(xi), std::move(eta)}, g, t);
        },
        py::arg("grid"), py::arg("lam"), py::arg("xi"), py::arg("eta"), py::arg("t") = 0.0);
    m.def(
        "direct_fourier",
        [](const Field& f, double lambda, std::vector<double> xi, std::vector<double> eta) {
            return oracle::direct_fourier(f, lambda, xi, eta);
        },
        py::arg("field"), py::arg("lam"), py::arg("xi"), py::arg("eta"));
    m.def(
        "gaussian_spectrum",
        [](const InitialData& data, double lambda, std::vector<double> xi, std::vector<double> eta) {
            return oracle::gaussian_spectrum(data, lambda, xi, eta);
        },
        py::arg("data"), py::arg("lam"), py::arg("xi"), py::arg("eta"));

    m.def(
        "cone_lift",
        [](double lambda, std::vector<double> xi, std::vector<double> eta) {
            const ConePoint p = cone_lift(lambda, xi, eta);
            return py::make_tuple(p.xi0, p.eta0);
        },
        py::arg("lam"), py::arg("xi"), py::arg("eta"), "Returns (xi0, eta0).");
    m.def(
        "sphere_quadrature",
        [](int dim, const std::function<Complex(std::vector<double>)>& f, int resolution) {
            return sphere_quadrature(
                dim, [&](std::span<const double> z) { return f({z.begin(), z.end()}); }, resolution);
        },
        py::arg("m"), py::arg("f"), py::arg("resolution") = 32);
    m.def("identity_corpus", [] {
        std::vector<std::string> names;
        for (const auto& w : identity_corpus()) names.push_back(w.name);
        return names;
    });
    m.def(
        "integrate_cone_spherical",
        [](const std::string& name, int radial_panels, int radial_order, int sphere_nodes) {
            return integrate_cone_spherical(corpus_entry(name), {radial_panels, radial_order, sphere_nodes});
        },
        py::arg("name"), py::arg("radial_panels") = 8, py::arg("radial_order") = 16, py::arg("sphere_nodes") = 32);
    m.def(
        "integrate_cone_parametrized",
        [](const std::string& name, int lambda_panels, int transverse_panels, int order, int direction_nodes) {
            return integrate_cone_parametrized(corpus_entry(name),
                                               {lambda_panels, transverse_panels, order, direction_nodes});
        },
        py::arg("name"), py::arg("lambda_panels") = 6, py::arg("transverse_panels") = 3, py::arg("order") = 12,
        py::arg("direction_nodes") = 32);
    m.def(
        "solution_via_cone",
        [](const InitialData& data, const std::vector<std::vector<double>>& points) {
            std::vector<SpacetimePoint> pts;
            for (const auto& p : points) {
                if (static_cast<int>(p.size()) != 2 + data.d + data.n) {
                    throw InvalidArgument("points are (t, s, x..., y...)");
                }
                pts.push_back({p[0], p[1], {p.begin() + 2, p.begin() + 2 + data.d}, {p.begin() + 2 + data.d, p.end()}});
            }
            py::gil_scoped_release release;
            return solution_via_cone(data, pts);
        },
        py::arg("data"), py::arg("points"));

    m.def("save_snapshot", &io::save_snapshot, py::arg("path"), py::arg("field"));
    m.def("load_snapshot", &io::load_snapshot, py::arg("path"));
    m.def("save_csv", &io::save_csv, py::arg("path"), py::arg("field"));
    m.def("load_csv", &io::load_csv, py::arg("path"));
}
