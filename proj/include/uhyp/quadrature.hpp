#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "uhyp/grid.hpp"

namespace uhyp {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Legendre rule with `order` nodes on [-1, 1].
QuadratureRule gauss_legendre(int order);

/// Composite Gauss-Legendre rule: [a, b] split into `panels` equal panels.
QuadratureRule gauss_legendre_panels(double a, double b, int panels, int order);

/// Nodes and weights on the unit sphere S^m in R^{m+1}, m in {1, 2}.
///
/// `resolution` is the node count along a great circle. For m = 1 that is the
/// number of equally spaced angles (trapezoid rule). For m = 2 each hemisphere
/// zeta_0 = +-sqrt(1 - |zeta'|^2) is written over the unit disk with the weight
/// 1 / sqrt(1 - |zeta'|^2); substituting |zeta'| = sin(theta) removes the
/// boundary singularity, leaving sin(theta) d(theta) d(phi) with Gauss-Legendre
/// in theta (resolution / 2 nodes per hemisphere) and `resolution` azimuths.
struct SphereRule {
    int m = 1;
    std::vector<double> points;  // (m + 1) coordinates per node, zeta_0 first
    std::vector<double> weights;

    std::size_t size() const noexcept { return weights.size(); }
    std::span<const double> point(std::size_t i) const {
        return std::span<const double>(points).subspan(i * (m + 1), m + 1);
    }
};

SphereRule sphere_rule(int m, int resolution);

using SphereIntegrand = std::function<Complex(std::span<const double>)>;

/// \int_{S^m} f(zeta) d(zeta). Throws InvalidArgument for m outside {1, 2}.
Complex sphere_quadrature(int m, const SphereIntegrand& f, int resolution = 32);

}  // namespace uhyp
