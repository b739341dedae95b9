#include "uhyp/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uhyp/errors.hpp"
#include "uhyp/oracle.hpp"
#include "uhyp/quadrature.hpp"

namespace uhyp {

namespace {

constexpr double kPi = std::numbers::pi;

double squared_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_sphere_dims(int d, int n) {
    if (d < 1 || d > 2 || n < 1 || n > 2) {
        throw InvalidArgument("cone quadrature supports d, n in {1, 2}");
    }
}

}  // namespace

LightconePoint to_lightcone(double t, double s) { return {t + s, t - s}; }

TimeSpacePoint from_lightcone(double x0, double y0) { return {0.5 * (x0 + y0), 0.5 * (x0 - y0)}; }

FrequencyPair rho_lambda_from(double xi0, double eta0) { return {xi0 - eta0, xi0 + eta0}; }

FrequencyPair xi0_eta0_from(double rho, double lambda) {
    return {0.5 * (lambda + rho), 0.5 * (lambda - rho)};
}

double ConePoint::radius() const { return std::sqrt(xi0 * xi0 + squared_norm(xi_bar)); }

double ConePoint::eta_radius() const { return std::sqrt(eta0 * eta0 + squared_norm(eta_bar)); }

ConePoint cone_lift(double lambda, std::span<const double> xi_bar, std::span<const double> eta_bar) {
    if (lambda == 0.0) throw SingularFrequency("cone_lift is singular at lambda = 0");
    ConePoint p;
    p.lambda = lambda;
    p.xi_bar.assign(xi_bar.begin(), xi_bar.end());
    p.eta_bar.assign(eta_bar.begin(), eta_bar.end());
    p.xi0 = (squared_norm(eta_bar) - squared_norm(xi_bar)) / (2.0 * lambda) + 0.5 * lambda;
    p.eta0 = lambda - p.xi0;
    return p;
}

ConePoint cone_point(std::span<const double> zeta, std::span<const double> sigma, double r) {
    ConePoint p;
    p.xi0 = r * zeta[0];
    p.eta0 = r * sigma[0];
    p.lambda = p.xi0 + p.eta0;
    for (std::size_t i = 1; i < zeta.size(); ++i) p.xi_bar.push_back(r * zeta[i]);
    for (std::size_t i = 1; i < sigma.size(); ++i) p.eta_bar.push_back(r * sigma[i]);
    return p;
}

double branch_lambda(int alpha, int beta, double r, double xi_bar_norm, double eta_bar_norm) {
    if (r < xi_bar_norm || r < eta_bar_norm) {
        throw InvalidArgument("branch_lambda needs r >= max(|xibar|, |etabar|)");
    }
    return alpha * std::sqrt(r * r - xi_bar_norm * xi_bar_norm) +
           beta * std::sqrt(r * r - eta_bar_norm * eta_bar_norm);
}

ConeAmplitude::ConeAmplitude(int d, int n, SpectrumFunction spectrum)
    : d_(d), n_(n), spectrum_(std::move(spectrum)) {
    if (d < 1 || n < 1) throw InvalidArgument("cone amplitude requires d, n >= 1");
}

ConeAmplitude ConeAmplitude::from_initial_data(const InitialData& data) {
    data.validate();
    return ConeAmplitude(data.d, data.n,
                         [data](double lambda, std::span<const double> xi, std::span<const double> eta) {
                             return oracle::gaussian_spectrum(data, lambda, xi, eta);
                         });
}

ConeAmplitude ConeAmplitude::from_spectrum(const SpectralField& spectrum) {
    return ConeAmplitude(spectrum.grid.d, spectrum.grid.n,
                         [spectrum](double lambda, std::span<const double> xi, std::span<const double> eta) {
                             return interpolate_spectrum(spectrum, lambda, xi, eta);
                         });
}

Complex ConeAmplitude::operator()(const ConePoint& p) const {
    if (p.xi_bar.size() != static_cast<std::size_t>(d_) || p.eta_bar.size() != static_cast<std::size_t>(n_)) {
        throw InvalidArgument("cone point dimensions do not match the amplitude");
    }
    const double lambda = p.xi0 + p.eta0;
    return 2.0 * kPi * std::abs(lambda) * spectrum_(lambda, p.xi_bar, p.eta_bar);
}

Complex ConeAmplitude::operator()(std::span<const double> zeta, std::span<const double> sigma,
                                  double r) const {
    return (*this)(cone_point(zeta, sigma, r));
}

Complex amplitude_eval(const InitialData& data, const ConePoint& p) {
    return ConeAmplitude::from_initial_data(data)(p);
}

Complex amplitude_eval(const SpectralField& spectrum, const ConePoint& p) {
    return ConeAmplitude::from_spectrum(spectrum)(p);
}

Complex interpolate_spectrum(const SpectralField& g, double lambda, std::span<const double> xi,
                             std::span<const double> eta) {
    const GridSpec& grid = g.grid;
    if (xi.size() != static_cast<std::size_t>(grid.d) || eta.size() != static_cast<std::size_t>(grid.n)) {
        throw InvalidArgument("frequency dimensions do not match the spectrum");
    }
    if (g.coefficients.size() != grid.size()) throw InvalidArgument("spectrum size does not match grid");
    const FrequencyGrid fg(grid);
    const int axes = grid.axes();
    std::vector<double> omega(axes);
    omega[0] = lambda;
    std::copy(xi.begin(), xi.end(), omega.begin() + 1);
    std::copy(eta.begin(), eta.end(), omega.begin() + 1 + grid.d);

    std::vector<int> lower(axes);
    std::vector<double> frac(axes);
    for (int a = 0; a < axes; ++a) {
        const int m = grid.points[a];
        const double pos = omega[a] / fg.spacing(a) + m / 2;
        if (!(pos >= 0.0 && pos <= m - 1)) {
            throw OutOfBand("frequency " + std::to_string(omega[a]) + " on axis " + std::to_string(a) +
                            " lies outside the spectrum");
        }
        const int base = std::min(static_cast<int>(std::floor(pos)), m - 2);
        lower[a] = base;
        frac[a] = pos - base;
    }
    const auto strides = grid.strides();
    Complex sum{0.0, 0.0};
    for (unsigned corner = 0; corner < (1u << axes); ++corner) {
        double w = 1.0;
        std::size_t flat = 0;
        for (int a = 0; a < axes; ++a) {
            const bool upper = (corner >> a) & 1u;
            w *= upper ? frac[a] : 1.0 - frac[a];
            flat += static_cast<std::size_t>(lower[a] + (upper ? 1 : 0)) * strides[a];
        }
        if (w != 0.0) sum += w * g.coefficients[flat];
    }
    return sum;
}

Complex integrate_cone_spherical(const ConeTestFunction& w, const SphericalResolution& res) {
    check_sphere_dims(w.d, w.n);
    const int big_n = w.d + w.n;
    const QuadratureRule radial = gauss_legendre_panels(0.0, w.support_radius, res.radial_panels, res.radial_order);
    const SphereRule zeta = sphere_rule(w.d, res.sphere_nodes);
    const SphereRule sigma = sphere_rule(w.n, res.sphere_nodes);
    std::vector<double> xi(w.d + 1);
    std::vector<double> eta(w.n + 1);
    Complex total{0.0, 0.0};
    for (std::size_t k = 0; k < radial.size(); ++k) {
        const double r = radial.nodes[k];
        Complex shell{0.0, 0.0};
        for (std::size_t i = 0; i < zeta.size(); ++i) {
            const auto z = zeta.point(i);
            for (int c = 0; c <= w.d; ++c) xi[c] = r * z[c];
            Complex row{0.0, 0.0};
            for (std::size_t j = 0; j < sigma.size(); ++j) {
                const auto s = sigma.point(j);
                for (int c = 0; c <= w.n; ++c) eta[c] = r * s[c];
                row += sigma.weights[j] * w.eval(xi, eta);
            }
            shell += zeta.weights[i] * row;
        }
        total += radial.weights[k] * std::pow(r, big_n - 1) * shell;
    }
    return total;
}

namespace {

// Directions on S^{m-1} with weights: {+1, -1} for m = 1, a trapezoid circle for m = 2.
struct DirectionSet {
    int m = 1;
    std::vector<double> points;
    std::vector<double> weights;
};

DirectionSet directions(int m, int nodes) {
    DirectionSet set{m, {}, {}};
    if (m == 1) {
        set.points = {1.0, -1.0};
        set.weights = {1.0, 1.0};
        return set;
    }
    const double step = 2.0 * kPi / nodes;
    for (int k = 0; k < nodes; ++k) {
        set.points.push_back(std::cos(k * step));
        set.points.push_back(std::sin(k * step));
        set.weights.push_back(step);
    }
    return set;
}

}  // namespace

Complex integrate_cone_parametrized(const ConeTestFunction& w, const ParametrizedResolution& res) {
    check_sphere_dims(w.d, w.n);
    const double big_r = w.support_radius;
    const QuadratureRule mu_rule =
        gauss_legendre_panels(0.0, std::sqrt(2.0 * big_r), res.lambda_panels, res.order);
    const QuadratureRule unit = gauss_legendre_panels(0.0, 1.0, res.transverse_panels, res.order);
    const DirectionSet dir_xi = directions(w.d, res.direction_nodes);
    const DirectionSet dir_eta = directions(w.n, res.direction_nodes);

    std::vector<double> xi(w.d + 1);
    std::vector<double> eta(w.n + 1);

    // Sum over directions of xibar, etabar of q^{n-1} W at fixed (lambda, p, q).
    auto fibre = [&](double lambda, double p, double q) {
        const double xi0 = (q * q - p * p) / (2.0 * lambda) + 0.5 * lambda;
        xi[0] = xi0;
        eta[0] = lambda - xi0;
        Complex sum{0.0, 0.0};
        for (std::size_t a = 0; a < dir_xi.weights.size(); ++a) {
            for (int c = 0; c < w.d; ++c) xi[1 + c] = p * dir_xi.points[a * w.d + c];
            for (std::size_t b = 0; b < dir_eta.weights.size(); ++b) {
                for (int c = 0; c < w.n; ++c) eta[1 + c] = q * dir_eta.points[b * w.n + c];
                sum += dir_xi.weights[a] * dir_eta.weights[b] * w.eval(xi, eta);
            }
        }
        return std::pow(q, w.n - 1) * sum;
    };

    // \int dq over the set where |xi| <= R: q^2 = p^2 - lambda^2 + 2 lambda xi0 with
    // |xi0| <= sqrt(R^2 - p^2).
    auto over_q = [&](double lambda, double p) {
        const double rho = std::sqrt(std::max(big_r * big_r - p * p, 0.0));
        const double base = p * p - lambda * lambda;
        const double spread = 2.0 * std::abs(lambda) * rho;
        const double q_hi2 = base + spread;
        if (q_hi2 <= 0.0) return Complex{0.0, 0.0};
        const double q_lo = std::sqrt(std::max(base - spread, 0.0));
        const double q_hi = std::sqrt(q_hi2);
        if (q_hi <= q_lo) return Complex{0.0, 0.0};
        Complex sum{0.0, 0.0};
        for (std::size_t k = 0; k < unit.size(); ++k) {
            const double q = q_lo + (q_hi - q_lo) * unit.nodes[k];
            sum += unit.weights[k] * fibre(lambda, p, q);
        }
        return (q_hi - q_lo) * sum;
    };

    // \int p^{d-1} dp over [0, R]. The lower q limit leaves zero at
    // p* = sqrt(2 |lambda| R - lambda^2) with a square-root kink, so [p*, R]
    // is integrated in tau with p = p* + (R - p*) tau^2.
    auto over_p = [&](double lambda) {
        const double kink2 = 2.0 * std::abs(lambda) * big_r - lambda * lambda;
        const double kink = std::clamp(std::sqrt(std::max(kink2, 0.0)), 0.0, big_r);
        Complex sum{0.0, 0.0};
        if (kink > 0.0) {
            Complex inner{0.0, 0.0};
            for (std::size_t k = 0; k < unit.size(); ++k) {
                const double p = kink * unit.nodes[k];
                inner += unit.weights[k] * std::pow(p, w.d - 1) * over_q(lambda, p);
            }
            sum += kink * inner;
        }
        const double span = big_r - kink;
        if (span > 0.0) {
            Complex inner{0.0, 0.0};
            for (std::size_t k = 0; k < unit.size(); ++k) {
                const double tau = unit.nodes[k];
                const double p = kink + span * tau * tau;
                inner += unit.weights[k] * 2.0 * span * tau * std::pow(p, w.d - 1) * over_q(lambda, p);
            }
            sum += inner;
        }
        return sum;
    };

    // d(lambda) / |lambda| = 2 d(mu) / mu for lambda = +-mu^2.
    Complex total{0.0, 0.0};
    for (double sign : {1.0, -1.0}) {
        for (std::size_t k = 0; k < mu_rule.size(); ++k) {
            const double mu = mu_rule.nodes[k];
            total += mu_rule.weights[k] * (2.0 / mu) * over_p(sign * mu * mu);
        }
    }
    return total;
}

double effective_radius(const InitialData& data) {
    double radius = 0.0;
    for (const GaussianPacket& t : data.terms) {
        double sum = 0.0;
        for (std::size_t a = 0; a < t.width.size(); ++a) {
            const double extent = std::abs(t.carrier[a]) + 6.0 / t.width[a];
            sum += extent * extent;
        }
        radius = std::max(radius, std::sqrt(sum));
    }
    return radius;
}

namespace {

// Gaussian exponents of one packet split by variable, used to skip sphere
// nodes where every packet's spectrum is negligible.
struct PacketSplit {
    double sigma_s2 = 0.0;
    double lambda0 = 0.0;
};

constexpr double kNegligibleExponent = 45.0;  // e^{-45} ~ 3e-20 of the packet peak

}  // namespace

std::vector<Complex> solution_via_cone(const InitialData& data, std::span<const SpacetimePoint> points,
                                       const ConeSolverResolution& res) {
    data.validate();
    check_sphere_dims(data.d, data.n);
    const int d = data.d;
    const int n = data.n;
    const int big_n = d + n;
    for (const SpacetimePoint& p : points) {
        if (p.x.size() != static_cast<std::size_t>(d) || p.y.size() != static_cast<std::size_t>(n)) {
            throw InvalidArgument("spacetime point dimensions do not match the initial data");
        }
    }
    std::vector<Complex> out(points.size());
    if (data.terms.empty() || points.empty()) return out;

    // Light-cone positions x = (t + s, xbar), y = (t - s, ybar).
    std::vector<std::vector<double>> xs;
    std::vector<std::vector<double>> ys;
    double reach = 0.0;
    for (const SpacetimePoint& p : points) {
        const LightconePoint lc = to_lightcone(p.t, p.s);
        std::vector<double> x{lc.x0};
        std::vector<double> y{lc.y0};
        x.insert(x.end(), p.x.begin(), p.x.end());
        y.insert(y.end(), p.y.begin(), p.y.end());
        reach = std::max({reach, std::sqrt(squared_norm(x)), std::sqrt(squared_norm(y))});
        xs.push_back(std::move(x));
        ys.push_back(std::move(y));
    }
    double widest = 0.0;
    for (const GaussianPacket& t : data.terms) {
        for (double w : t.width) widest = std::max(widest, w);
    }
    // Oscillation per unit radius: the pairing phase plus the amplitude's own variation.
    const double rate = reach + 6.0 * widest;
    const double panel = res.phase_per_panel / rate;
    const double min_radius = res.min_radius > 0.0 ? res.min_radius : effective_radius(data);
    const double max_radius = res.max_radius > 0.0 ? std::max(res.max_radius, min_radius) : 4.0 * min_radius;
    const QuadratureRule base = gauss_legendre(res.radial_order);

    std::vector<PacketSplit> split;
    for (const GaussianPacket& t : data.terms) split.push_back({t.width[0] * t.width[0], t.carrier[0]});

    std::vector<Complex> acc(points.size());
    std::vector<double> xi_bar(d);
    std::vector<double> eta_bar(n);
    std::vector<std::vector<double>> row_exponent;  // [term][i]
    std::vector<std::vector<double>> col_exponent;  // [term][j]
    std::vector<Complex> entries;
    std::vector<std::size_t> entry_col;
    std::vector<std::size_t> row_start;
    std::vector<Complex> u_phase;
    std::vector<Complex> v_phase;

    double mass_total = 0.0;
    for (double lo = 0.0; lo < max_radius; lo += panel) {
        const double hi = std::min(lo + panel, max_radius);
        double panel_mass = 0.0;
        for (std::size_t k = 0; k < base.size(); ++k) {
            const double r = lo + 0.5 * (hi - lo) * (base.nodes[k] + 1.0);
            const double wr = 0.5 * (hi - lo) * base.weights[k];
            const int nodes = std::max(8, static_cast<int>(std::ceil(r * rate + res.angular_margin)));
            const SphereRule zeta = sphere_rule(d, nodes);
            const SphereRule sigma = sphere_rule(n, nodes);

            // Exponents of the xibar and etabar factors, per packet.
            row_exponent.assign(data.terms.size(), std::vector<double>(zeta.size()));
            col_exponent.assign(data.terms.size(), std::vector<double>(sigma.size()));
            for (std::size_t t = 0; t < data.terms.size(); ++t) {
                const GaussianPacket& g = data.terms[t];
                for (std::size_t i = 0; i < zeta.size(); ++i) {
                    const auto z = zeta.point(i);
                    double e = 0.0;
                    for (int c = 0; c < d; ++c) {
                        const double dz = g.width[1 + c] * (r * z[1 + c] - g.carrier[1 + c]);
                        e += dz * dz;
                    }
                    row_exponent[t][i] = 0.5 * e;
                }
                for (std::size_t j = 0; j < sigma.size(); ++j) {
                    const auto s = sigma.point(j);
                    double e = 0.0;
                    for (int c = 0; c < n; ++c) {
                        const double dz = g.width[1 + d + c] * (r * s[1 + c] - g.carrier[1 + d + c]);
                        e += dz * dz;
                    }
                    col_exponent[t][j] = 0.5 * e;
                }
            }

            // Sparse weighted amplitude r^{N-1} w_i w_j a(zeta_i, sigma_j, r).
            entries.clear();
            entry_col.clear();
            row_start.assign(1, 0);
            const double radial_power = std::pow(r, big_n - 1);
            for (std::size_t i = 0; i < zeta.size(); ++i) {
                const auto z = zeta.point(i);
                for (std::size_t j = 0; j < sigma.size(); ++j) {
                    const auto s = sigma.point(j);
                    const double lambda = r * (z[0] + s[0]);
                    bool relevant = false;
                    for (std::size_t t = 0; t < split.size() && !relevant; ++t) {
                        const double dl = lambda - split[t].lambda0;
                        const double e = row_exponent[t][i] + col_exponent[t][j] + 0.5 * split[t].sigma_s2 * dl * dl;
                        relevant = e < kNegligibleExponent;
                    }
                    if (!relevant) continue;
                    for (int c = 0; c < d; ++c) xi_bar[c] = r * z[1 + c];
                    for (int c = 0; c < n; ++c) eta_bar[c] = r * s[1 + c];
                    const Complex a = 2.0 * kPi * std::abs(lambda) *
                                      oracle::gaussian_spectrum(data, lambda, xi_bar, eta_bar);
                    const Complex weighted = radial_power * zeta.weights[i] * sigma.weights[j] * a;
                    panel_mass += wr * std::abs(weighted);
                    entries.push_back(weighted);
                    entry_col.push_back(j);
                }
                row_start.push_back(entries.size());
            }
            if (entries.empty()) continue;

            // e^{i r (x.zeta - y.sigma)} factorises into a row and a column phase.
            u_phase.resize(zeta.size());
            v_phase.resize(sigma.size());
            for (std::size_t p = 0; p < points.size(); ++p) {
                for (std::size_t i = 0; i < zeta.size(); ++i) {
                    if (row_start[i + 1] == row_start[i]) continue;
                    u_phase[i] = std::polar(1.0, r * dot(xs[p], zeta.point(i)));
                }
                for (std::size_t j = 0; j < sigma.size(); ++j) {
                    v_phase[j] = std::polar(1.0, -r * dot(ys[p], sigma.point(j)));
                }
                Complex sum{0.0, 0.0};
                for (std::size_t i = 0; i < zeta.size(); ++i) {
                    if (row_start[i + 1] == row_start[i]) continue;
                    Complex row{0.0, 0.0};
                    for (std::size_t e = row_start[i]; e < row_start[i + 1]; ++e) {
                        row += entries[e] * v_phase[entry_col[e]];
                    }
                    sum += u_phase[i] * row;
                }
                acc[p] += wr * sum;
            }
        }
        mass_total += panel_mass;
        // Near lambda = 0 the amplitude leaks to large r with a density ~ r^{-2},
        // so the mass beyond `hi` is about density * hi.
        const double remaining = panel_mass / (hi - lo) * hi;
        if (hi >= min_radius && remaining <= res.tail_tolerance * mass_total) break;
    }

    const double constant = 0.5 * std::pow(2.0 * kPi, -(big_n + 2));
    for (std::size_t p = 0; p < points.size(); ++p) out[p] = constant * acc[p];
    return out;
}

Complex solution_via_cone(const InitialData& data, const SpacetimePoint& point,
                          const ConeSolverResolution& res) {
    return solution_via_cone(data, std::span<const SpacetimePoint>(&point, 1), res).front();
}

ConeTestFunction isotropic_test_function(int d, int n) {
    check_sphere_dims(d, n);
    return {"isotropic", d, n, 6.0, [](std::span<const double> xi, std::span<const double>) {
                return Complex(std::exp(-2.0 * squared_norm(xi)));
            }};
}

double isotropic_cone_integral(int d, int n) {
    check_sphere_dims(d, n);
    const auto area = [](int m) { return m == 1 ? 2.0 * kPi : 4.0 * kPi; };
    // \int_0^inf r^{k} e^{-2 r^2} dr = Gamma((k + 1) / 2) / (2 * 2^{(k + 1) / 2})
    const double k = d + n - 1;
    const double radial = std::tgamma(0.5 * (k + 1.0)) / (2.0 * std::pow(2.0, 0.5 * (k + 1.0)));
    return area(d) * area(n) * radial;
}

std::vector<ConeTestFunction> identity_corpus() {
    std::vector<ConeTestFunction> corpus;
    corpus.push_back(isotropic_test_function(1, 1));
    corpus.push_back({"anisotropic", 1, 1, 6.0, [](std::span<const double> xi, std::span<const double>) {
                          return Complex(std::exp(-2.0 * squared_norm(xi)) * xi[1] * xi[1]);
                      }});
    corpus.push_back({"shifted-bump", 1, 1, 6.0, [](std::span<const double> xi, std::span<const double> eta) {
                          const double a = (xi[0] - 0.5) * (xi[0] - 0.5) + (xi[1] - 0.3) * (xi[1] - 0.3) +
                                           (eta[0] + 0.4) * (eta[0] + 0.4) + (eta[1] - 0.2) * (eta[1] - 0.2);
                          return Complex(std::exp(-2.0 * a));
                      }});
    corpus.push_back({"zero", 1, 1, 6.0, [](std::span<const double>, std::span<const double>) {
                          return Complex(0.0, 0.0);
                      }});
    return corpus;
}

}  // namespace uhyp
