#pragma once

// Cone-supported representation of solutions.
//
// In light-cone coordinates x0 = t + s, y0 = t - s the equation becomes
// (Delta_x - Delta_y) u = 0 with x = (x0, xbar), y = (y0, ybar), and the full
// space-time transform of u lives on the cone |xi| = |eta|. Points of the cone
// are addressed either by sphere coordinates (r zeta, r sigma) with
// zeta in S^d, sigma in S^n, or by (lambda, xibar, etabar) with
//   xi0 = (|etabar|^2 - |xibar|^2) / (2 lambda) + lambda / 2,   eta0 = lambda - xi0.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "uhyp/grid.hpp"
#include "uhyp/spectral.hpp"

namespace uhyp {

struct LightconePoint {
    double x0 = 0.0;
    double y0 = 0.0;
};

struct TimeSpacePoint {
    double t = 0.0;
    double s = 0.0;
};

LightconePoint to_lightcone(double t, double s);
TimeSpacePoint from_lightcone(double x0, double y0);

/// (xi0, eta0) <-> (rho, lambda) with lambda = xi0 + eta0, rho = xi0 - eta0.
struct FrequencyPair {
    double first = 0.0;
    double second = 0.0;
};
FrequencyPair rho_lambda_from(double xi0, double eta0);
FrequencyPair xi0_eta0_from(double rho, double lambda);

struct ConePoint {
    double lambda = 0.0;
    std::vector<double> xi_bar;
    std::vector<double> eta_bar;
    double xi0 = 0.0;
    double eta0 = 0.0;

    /// |xi| = sqrt(xi0^2 + |xibar|^2).
    double radius() const;
    /// |eta| = sqrt(eta0^2 + |etabar|^2); equals radius() on the cone.
    double eta_radius() const;
};

/// Throws SingularFrequency for lambda == 0.
ConePoint cone_lift(double lambda, std::span<const double> xi_bar, std::span<const double> eta_bar);

/// The cone point (r zeta, r sigma); lambda = r (zeta_0 + sigma_0).
ConePoint cone_point(std::span<const double> zeta, std::span<const double> sigma, double r);

/// lambda(r) = alpha sqrt(r^2 - |xibar|^2) + beta sqrt(r^2 - |etabar|^2) for
/// r >= max(|xibar|, |etabar|), alpha, beta in {+1, -1}.
double branch_lambda(int alpha, int beta, double r, double xi_bar_norm, double eta_bar_norm);

using SpectrumFunction =
    std::function<Complex(double lambda, std::span<const double> xi, std::span<const double> eta)>;

/// a(zeta, sigma, r) = 2 pi |xi0 + eta0| v0~(xi0 + eta0, xibar, etabar).
class ConeAmplitude {
public:
    ConeAmplitude(int d, int n, SpectrumFunction spectrum);

    /// Backed by the closed-form Gaussian spectrum.
    static ConeAmplitude from_initial_data(const InitialData& data);
    /// Backed by multilinear interpolation of a discrete spectrum; evaluation
    /// outside the frequency box throws OutOfBand.
    static ConeAmplitude from_spectrum(const SpectralField& spectrum);

    Complex operator()(const ConePoint& p) const;
    Complex operator()(std::span<const double> zeta, std::span<const double> sigma, double r) const;

    int d() const noexcept { return d_; }
    int n() const noexcept { return n_; }

private:
    int d_;
    int n_;
    SpectrumFunction spectrum_;
};

Complex amplitude_eval(const InitialData& data, const ConePoint& p);
Complex amplitude_eval(const SpectralField& spectrum, const ConePoint& p);

/// Multilinear interpolation of a SpectralField at (lambda, xi, eta).
Complex interpolate_spectrum(const SpectralField& g, double lambda, std::span<const double> xi,
                             std::span<const double> eta);

/// W(xi, eta) on R^{d+1} x R^{n+1}, negligible for |xi| > support_radius.
struct ConeTestFunction {
    std::string name;
    int d = 1;
    int n = 1;
    double support_radius = 6.0;
    std::function<Complex(std::span<const double> xi, std::span<const double> eta)> eval;
};

struct SphericalResolution {
    int radial_panels = 8;
    int radial_order = 16;
    int sphere_nodes = 32;

    SphericalResolution refined() const { return {2 * radial_panels, radial_order, 2 * sphere_nodes}; }
};

struct ParametrizedResolution {
    int lambda_panels = 6;
    int transverse_panels = 3;
    int order = 12;
    int direction_nodes = 32;  // only used when d or n equals 2

    ParametrizedResolution refined() const {
        return {2 * lambda_panels, 2 * transverse_panels, order, 2 * direction_nodes};
    }
};

/// \int_{S^d x S^n x (0, R)} W(r zeta, r sigma) r^{N-1} d(zeta) d(sigma) dr.
Complex integrate_cone_spherical(const ConeTestFunction& w, const SphericalResolution& res = {});

/// \int W(xi0, xibar, eta0, etabar) d(xibar) d(etabar) d(lambda) / |lambda| with
/// (xi0, eta0) from cone_lift. Uses lambda = sign(mu) mu^2, and for each
/// (lambda, |xibar|) integrates |etabar| only over the interval where the
/// integrand can be nonzero, so the thin shell near lambda = 0 is resolved.
Complex integrate_cone_parametrized(const ConeTestFunction& w, const ParametrizedResolution& res = {});

/// Test functions for the two-sided cone identity, d = n = 1: "isotropic"
/// exp(-2|xi|^2) (exact value pi^2), "anisotropic" exp(-2|xi|^2) xi_1^2,
/// "shifted-bump" exp(-2(|xi - a|^2 + |eta - b|^2)) and "zero".
std::vector<ConeTestFunction> identity_corpus();

/// exp(-2|xi|^2) on the cone for any d, n in {1, 2}; its spherical integral is
/// |S^d| |S^n| \int_0^inf r^{N-1} exp(-2 r^2) dr.
ConeTestFunction isotropic_test_function(int d, int n);
double isotropic_cone_integral(int d, int n);

/// A point (t, s, xbar, ybar) at which to reconstruct the solution.
struct SpacetimePoint {
    double t = 0.0;
    double s = 0.0;
    std::vector<double> x;
    std::vector<double> y;
};

struct ConeSolverResolution {
    double min_radius = 0.0;        // 0: effective_radius(data)
    double max_radius = 0.0;        // 0: 4 * min_radius
    int radial_order = 16;
    double phase_per_panel = 10.0;  // radians of oscillation per radial panel
    double angular_margin = 24.0;   // extra sphere nodes beyond the oscillation bandwidth
    double tail_tolerance = 1e-9;   // estimated remaining share of the amplitude mass
};

/// Smallest radius the cone reconstruction always integrates to: the norm of
/// the (|carrier| + 6 / width) box over all packets and axes.
double effective_radius(const InitialData& data);

/// v(t, s, xbar, ybar) from the cone pairing
///   u(x, y) = (2 pi)^{-(N+2)} (1/2) \int r^{N-1} a(zeta, sigma, r) e^{i r (x.zeta - y.sigma)}
/// with x0 = t + s, y0 = t - s. The radial integral always covers min_radius
/// and is extended panel by panel, up to max_radius, until the amplitude mass
/// left beyond the current radius (estimated from an r^{-2} decay of the last
/// panel) drops below tail_tolerance of the accumulated mass.
std::vector<Complex> solution_via_cone(const InitialData& data, std::span<const SpacetimePoint> points,
                                       const ConeSolverResolution& res = {});
Complex solution_via_cone(const InitialData& data, const SpacetimePoint& point,
                          const ConeSolverResolution& res = {});

}  // namespace uhyp
