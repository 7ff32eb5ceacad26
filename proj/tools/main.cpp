#include <CLI11.hpp>

#include <fstream>

#include "cantorvar/driver.hpp"

namespace {

void add_common(CLI::App* sub, cantorvar::CliOptions& opt) {
    sub->add_option("--config", opt.config_path, "JSON config file");
    sub->add_option("--seed", opt.seed, "master seed (overrides config)");
    sub->add_option("--mode", opt.mode, "exact | float | both (overrides config)");
    sub->add_option("--out", opt.out_path, "output path (default: stdout)");
    sub->add_option("--jobs", opt.jobs, "parallel trial workers")->default_val(1);
}

int dispatch(const std::string& command, const cantorvar::CliOptions& opt) {
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        if (!out) {
            std::cerr << "cannot open output path " << opt.out_path << "\n";
            return cantorvar::kExitConfigError;
        }
        return cantorvar::run_command(command, opt, out);
    }
    return cantorvar::run_command(command, opt, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"norm-variation experiments for bilinear averages on Cantor groups"};
    app.require_subcommand(1);

    cantorvar::CliOptions vopt;
    auto* verify = app.add_subcommand("verify", "run the identity and inequality check suite");
    add_common(verify, vopt);
    verify->add_option("--fault", vopt.fault,
                       "inject a planted fault (test fixture): telescoping | character | ominus");

    cantorvar::CliOptions varopt;
    auto* variation = app.add_subcommand("variation", "norm-variation sweeps, CSV output");
    add_common(variation, varopt);
    variation->add_option("--p", varopt.ps, "exponent list (overrides config)");

    cantorvar::CliOptions jopt;
    auto* jumps = app.add_subcommand("jumps", "eps-jump counts for a finite system, CSV output");
    add_common(jumps, jopt);

    cantorvar::CliOptions copt;
    auto* cp = app.add_subcommand("cp", "certified scalar-lemma constants, CSV output");
    add_common(cp, copt);
    cp->add_option("--p", copt.ps, "exponent list");

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) return dispatch("verify", vopt);
    if (variation->parsed()) return dispatch("variation", varopt);
    if (jumps->parsed()) return dispatch("jumps", jopt);
    if (cp->parsed()) return dispatch("cp", copt);
    return cantorvar::kExitConfigError;
}
