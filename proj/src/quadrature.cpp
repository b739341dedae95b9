#include "uhyp/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "uhyp/errors.hpp"

namespace uhyp {

QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration on P_order from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_legendre_panels(double a, double b, int panels, int order) {
    if (panels < 1) throw InvalidArgument("panel count must be positive");
    const QuadratureRule base = gauss_legendre(order);
    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(panels) * order);
    rule.weights.reserve(static_cast<std::size_t>(panels) * order);
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        for (int i = 0; i < order; ++i) {
            rule.nodes.push_back(mid + 0.5 * width * base.nodes[i]);
            rule.weights.push_back(0.5 * width * base.weights[i]);
        }
    }
    return rule;
}

SphereRule sphere_rule(int m, int resolution) {
    if (m != 1 && m != 2) throw InvalidArgument("sphere quadrature supports S^1 and S^2 only");
    if (resolution < 2) throw InvalidArgument("sphere resolution must be at least 2");
    SphereRule rule;
    rule.m = m;
    if (m == 1) {
        const double step = 2.0 * std::numbers::pi / resolution;
        for (int k = 0; k < resolution; ++k) {
            const double phi = k * step;
            rule.points.push_back(std::cos(phi));
            rule.points.push_back(std::sin(phi));
            rule.weights.push_back(step);
        }
        return rule;
    }
    const int polar = std::max(1, (resolution + 1) / 2);
    const QuadratureRule theta = gauss_legendre_panels(0.0, 0.5 * std::numbers::pi, 1, polar);
    const double step = 2.0 * std::numbers::pi / resolution;
    for (double hemisphere : {1.0, -1.0}) {
        for (std::size_t i = 0; i < theta.size(); ++i) {
            const double sin_t = std::sin(theta.nodes[i]);
            const double cos_t = std::cos(theta.nodes[i]);
            for (int k = 0; k < resolution; ++k) {
                const double phi = k * step;
                rule.points.push_back(hemisphere * cos_t);
                rule.points.push_back(sin_t * std::cos(phi));
                rule.points.push_back(sin_t * std::sin(phi));
                rule.weights.push_back(theta.weights[i] * sin_t * step);
            }
        }
    }
    return rule;
}

Complex sphere_quadrature(int m, const SphereIntegrand& f, int resolution) {
    const SphereRule rule = sphere_rule(m, resolution);
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(rule.point(i));
    return sum;
}

}  // namespace uhyp
