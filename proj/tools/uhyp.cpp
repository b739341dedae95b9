#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "uhyp/commands.hpp"
#include "uhyp/config.hpp"
#include "uhyp/errors.hpp"

namespace {

constexpr int kUsageError = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"uhyp: spectral solver and verification suite for the ultrahyperbolic characteristic problem"};
    app.require_subcommand(1);

    std::string config_path;
    bool mismatched = false;

    auto add = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "Run configuration file")->required()->check(CLI::ExistingFile);
        return sub;
    };
    CLI::App* run = add("run", "Evolve the initial data and write snapshots plus diagnostics");
    CLI::App* identity = add("verify-identity", "Compare both sides of the cone integration identity");
    identity->add_flag("--mismatched-resolution", mismatched,
                       "Run the parametrized side at a deliberately crude resolution");
    CLI::App* cross = add("cross-check", "Cone reconstruction against the propagator at random grid points");
    CLI::App* residual = add("residual", "Spectral PDE residual over the configured times");
    CLI::App* convergence = add("convergence", "Residual under two halvings of the time step");

    CLI11_PARSE(app, argc, argv);

    try {
        uhyp::RunConfig cfg = uhyp::load_config(config_path);
        if (mismatched) cfg.verify.mismatched_resolution = true;
        if (run->parsed()) return uhyp::cmd_run(cfg, uhyp::output_directory(cfg), std::cout);
        if (identity->parsed()) return uhyp::cmd_verify_identity(cfg, std::cout);
        if (cross->parsed()) return uhyp::cmd_cross_check(cfg, std::cout);
        if (residual->parsed()) return uhyp::cmd_residual(cfg, std::cout);
        if (convergence->parsed()) return uhyp::cmd_convergence(cfg, std::cout);
    } catch (const uhyp::ConfigError& e) {
        std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
        return kUsageError;
    } catch (const uhyp::InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const uhyp::IllPreparedData& e) {
        std::cerr << "ill-prepared data: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kUsageError;
}
