#pragma once

// Run configuration in a sectioned key = value text format:
//
//   # comment
//   [grid]
//   d = 1
//   n = 1
//   extent = 10          # one value, or one per axis
//   points = 64
//
//   [packet]             # repeat for several terms
//   amplitude = 1 0      # re [im]
//   center = 0 0 0
//   width = 2 1 1
//   carrier = 3 0 0
//
//   [mode]               # plane-wave data instead of packets
//   index = 10 3 5       # lattice offsets from the zero frequency per axis
//   amplitude = 1 0
//
//   [run]      times
//   [policy]   zero_plane = zero-out | reject, threshold
//   [output]   directory, format = bin | csv | both, diagnostics = true | false
//   [verify]   see VerifySettings

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uhyp/cone.hpp"
#include "uhyp/grid.hpp"
#include "uhyp/propagator.hpp"

namespace uhyp {

struct ModeData {
    std::vector<int> index;  // offset from M/2 per axis
    Complex amplitude{1.0, 0.0};
};

struct OutputSettings {
    std::string directory = "uhyp_out";
    bool binary = true;
    bool csv = false;
    bool diagnostics = true;
};

struct VerifySettings {
    SphericalResolution spherical;
    ParametrizedResolution parametrized;
    double identity_tolerance = 1e-3;
    bool identity_refine = true;
    bool mismatched_resolution = false;

    int cross_points = 20;
    std::vector<double> cross_times{0.0, 1.0};
    double cross_tolerance_initial = 1e-4;  // at t = 0
    double cross_tolerance = 1e-3;
    std::uint64_t seed = 7;

    double conservation_tolerance = 1e-10;
    double residual_tolerance = 1e-3;
    double order_target = 2.0;
    double order_tolerance = 0.2;
};

struct RunConfig {
    GridSpec grid;
    InitialData data;
    std::optional<ModeData> mode;
    std::vector<double> times;
    MultiplierPolicy policy;
    OutputSettings output;
    VerifySettings verify;
    std::string source;  // the text the config was parsed from

    /// Initial field: the sampled packets, or the plane wave of [mode].
    Field initial_field() const;
};

/// Throws ConfigError carrying the offending line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace uhyp
