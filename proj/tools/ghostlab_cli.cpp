// Command-line front end; talks to the library exclusively through the C API.
#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "ghostlab.h"

namespace {

int report(ghl_status status, int exit_code, const char* message) {
    if (status != GHL_OK) {
        std::fprintf(stderr, "error: %s\n", ghl_error_message());
        return 2;
    }
    if (exit_code == 0)
        std::printf("%s\n", message);
    else
        std::fprintf(stderr, "%s\n", message);
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral laboratory for single-eigenvector-forced 2d flows"};
    app.require_subcommand(1);

    std::string config;
    std::string out = ".";
    std::uint64_t seed = 1;
    int jobs = 1;

    CLI::App* simulate = app.add_subcommand("simulate", "integrate and export a trajectory");
    simulate->add_option("--config", config, "run configuration file")->required();
    simulate->add_option("--out", out, "output directory");
    simulate->add_option("--seed", seed, "seed for the initial-state perturbation");

    CLI::App* ghost = app.add_subcommand("ghost-check", "audit trajectories for ghost behavior");
    ghost->add_option("--config", config, "run configuration file")->required();
    ghost->add_option("--out", out, "output directory");
    ghost->add_option("--seed", seed, "base seed of the ensemble");
    ghost->add_option("--jobs", jobs, "worker threads for the ensemble");

    CLI::App* curves = app.add_subcommand("curves", "export the candidate and bound curves");
    curves->add_option("--config", config, "run configuration file")->required();
    curves->add_option("--out", out, "output directory");

    CLI::App* verify =
        app.add_subcommand("verify-nonexistence", "run the mechanical nonexistence audit");
    verify->add_option("--out", out, "output directory");

    CLI::App* identities =
        app.add_subcommand("identities", "run the randomized identity suite");
    identities->add_option("--config", config, "run configuration file")->required();
    identities->add_option("--out", out, "output directory");
    identities->add_option("--seed", seed, "seed of the sample stream");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    char message[4096] = {0};
    int exit_code = 0;
    ghl_status status = GHL_OK;

    if (simulate->parsed())
        status = ghl_cmd_simulate(config.c_str(), out.c_str(), seed, &exit_code, message,
                                  sizeof message);
    else if (ghost->parsed())
        status = ghl_cmd_ghost_check(config.c_str(), out.c_str(), seed, jobs, &exit_code, message,
                                     sizeof message);
    else if (curves->parsed())
        status = ghl_cmd_curves(config.c_str(), out.c_str(), &exit_code, message, sizeof message);
    else if (verify->parsed())
        status = ghl_cmd_verify_nonexistence(out.c_str(), &exit_code, message, sizeof message);
    else if (identities->parsed())
        status = ghl_cmd_identities(config.c_str(), out.c_str(), seed, &exit_code, message,
                                    sizeof message);

    return report(status, exit_code, message);
}
