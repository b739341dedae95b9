#pragma once

// Command implementations behind the uhyp tool. Each returns the process exit
// status (0 when every reported check passes, 1 otherwise) and writes a
// human-readable report to `out`.

#include <filesystem>
#include <iosfwd>

#include "uhyp/config.hpp"

namespace uhyp {

/// $UHYP_OUTPUT_DIR when set and non-empty, otherwise cfg.output.directory.
std::filesystem::path output_directory(const RunConfig& cfg);

/// Evolves the initial field to every configured time and writes snapshots,
/// a verbatim copy of the config, and diagnostics.csv into `dir`.
int cmd_run(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& out);

/// Both sides of the cone identity over the test corpus.
int cmd_verify_identity(const RunConfig& cfg, std::ostream& out);

/// Cone reconstruction against the propagator at random grid points.
int cmd_cross_check(const RunConfig& cfg, std::ostream& out);

/// Spectral residual over the configured (uniformly spaced) times.
int cmd_residual(const RunConfig& cfg, std::ostream& out);

/// Residual at the middle time for dt, dt/2, dt/4 and the observed orders.
int cmd_convergence(const RunConfig& cfg, std::ostream& out);

}  // namespace uhyp
