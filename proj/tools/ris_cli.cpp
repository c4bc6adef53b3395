// Experiment driver for the RIS impedance-model library. Talks to the core
// exclusively through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ris/ris.h"

namespace {

struct ScenarioArgs {
    std::string config;
    std::string preset = "paper-28ghz";
};

ris_scenario* make_scenario(const ScenarioArgs& args) {
    ris_scenario* s = nullptr;
    const ris_status st = args.config.empty()
                              ? ris_scenario_create_preset(args.preset.c_str(), &s)
                              : ris_scenario_load_file(args.config.c_str(), &s);
    if (st != RIS_OK) {
        std::fprintf(stderr, "error (%s): %s\n", ris_status_name(st), ris_last_error());
        return nullptr;
    }
    return s;
}

int check(ris_status st) {
    if (st != RIS_OK) {
        std::fprintf(stderr, "error (%s): %s\n", ris_status_name(st), ris_last_error());
        return 1;
    }
    return 0;
}

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args) {
    cmd->add_option("--config", args.config, "Scenario file (key = value lines)");
    cmd->add_option("--preset", args.preset, "Named scenario preset")->default_str("paper-28ghz");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS load-impedance optimization experiments"};
    app.require_subcommand(1);

    ScenarioArgs scenario_args;
    std::string out_path;
    std::vector<int> n_ris{16, 64};
    std::vector<double> d_over_lambda{0.125, 0.25, 0.5};
    std::string strategies = "no_coupling_ideal,coupling_unaware,coupling_aware";
    double area = 1.0;
    int max_iters = 500;

    auto* conv = app.add_subcommand("convergence", "Optimizer traces per (N_RIS, d) pair");
    add_scenario_options(conv, scenario_args);
    conv->add_option("--out", out_path, "Output CSV path")->required();
    conv->add_option("--n-ris", n_ris, "N_RIS values (each a perfect square)");
    conv->add_option("--d-over-lambda", d_over_lambda, "Element spacings in wavelengths");
    conv->add_option("--max-iters", max_iters, "Iteration budget");

    auto* dist = app.add_subcommand("sweep-distance", "Gain vs element spacing at fixed N_RIS");
    add_scenario_options(dist, scenario_args);
    dist->add_option("--out", out_path, "Output CSV path")->required();
    dist->add_option("--d-over-lambda", d_over_lambda, "Element spacings in wavelengths");
    dist->add_option("--strategies", strategies, "Comma-separated strategy list");
    dist->add_option("--max-iters", max_iters, "Iteration budget");

    auto* area_cmd = app.add_subcommand("sweep-area", "Gain vs N_RIS at fixed RIS area");
    add_scenario_options(area_cmd, scenario_args);
    area_cmd->add_option("--out", out_path, "Output CSV path")->required();
    area_cmd->add_option("--n-ris", n_ris, "N_RIS values (each a perfect square)");
    area_cmd->add_option("--area", area, "RIS area in squared wavelengths")->default_val(1.0);
    area_cmd->add_option("--strategies", strategies, "Comma-separated strategy list");
    area_cmd->add_option("--max-iters", max_iters, "Iteration budget");

    auto* validate = app.add_subcommand("validate", "Run the built-in validation suite");
    add_scenario_options(validate, scenario_args);
    validate->add_option("--out", out_path, "Report path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) {
        int failed = 0;
        const ris_status st = ris_run_validate(out_path.empty() ? nullptr : out_path.c_str(),
                                               &failed);
        if (int rc = check(st)) return rc;
        if (failed > 0) {
            std::fprintf(stderr, "%d validation check(s) failed\n", failed);
            return 1;
        }
        return 0;
    }

    ris_scenario* s = make_scenario(scenario_args);
    if (!s) return 1;

    int rc = 0;
    if (conv->parsed()) {
        rc = check(ris_run_convergence(s, n_ris.data(), static_cast<int>(n_ris.size()),
                                       d_over_lambda.data(),
                                       static_cast<int>(d_over_lambda.size()), max_iters,
                                       out_path.c_str()));
    } else if (dist->parsed()) {
        rc = check(ris_run_distance_sweep(s, d_over_lambda.data(),
                                          static_cast<int>(d_over_lambda.size()),
                                          strategies.c_str(), max_iters, out_path.c_str()));
    } else if (area_cmd->parsed()) {
        rc = check(ris_run_area_sweep(s, n_ris.data(), static_cast<int>(n_ris.size()), area,
                                      strategies.c_str(), max_iters, out_path.c_str()));
    }

    ris_scenario_free(s);
    return rc;
}
