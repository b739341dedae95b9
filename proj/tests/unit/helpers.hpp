#pragma once

#include <cmath>
#include <vector>

#include "uhyp/grid.hpp"

namespace testutil {

inline uhyp::InitialData packet(std::vector<double> width, std::vector<double> carrier,
                                std::vector<double> center = {0, 0, 0}, uhyp::Complex c = {1, 0}) {
    uhyp::InitialData data;
    data.d = 1;
    data.n = 1;
    data.terms.push_back({c, center, width, carrier});
    return data;
}

inline uhyp::InitialData default_packet() { return packet({2, 1, 1}, {3, 0, 0}); }

/// exp(-|p - shift|^2 / 2) sampled directly, bypassing InitialData.
inline uhyp::Field gaussian_field(const uhyp::GridSpec& g, double s_shift = 0.0) {
    uhyp::Field f = uhyp::Field::zeros(g);
    std::vector<double> p(g.axes());
    for (std::size_t k = 0; k < g.size(); ++k) {
        g.point(k, p);
        double r2 = (p[0] - s_shift) * (p[0] - s_shift);
        for (int a = 1; a < g.axes(); ++a) r2 += p[a] * p[a];
        f.values[k] = std::exp(-0.5 * r2);
    }
    return f;
}

}  // namespace testutil
