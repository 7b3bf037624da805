#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "depsim/runner.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::int64_t seed_offset = 0;
    int workers = -1;  // -1 = keep config value
    std::string out_dir;
    bool log_steps = false;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "experiment config file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed-offset", opts.seed_offset, "offset added to every seed");
    sub->add_option("--workers", opts.workers, "parallel workers (1 = serial reference)");
    sub->add_option("--out", opts.out_dir, "output directory (overrides config)");
    sub->add_flag("--log-steps", opts.log_steps, "emit per-step NDJSON trajectories");
}

int run(const std::string& kind, const CommonOpts& opts) {
    depsim::ExperimentConfig cfg;
    try {
        cfg = depsim::ExperimentConfig::from_file(opts.config_path);
        if (cfg.kind != kind)
            throw std::invalid_argument("config kind '" + cfg.kind +
                                        "' does not match subcommand '" + kind + "'");
        cfg.seed_offset += static_cast<std::uint64_t>(opts.seed_offset);
        if (opts.workers >= 0) cfg.workers = opts.workers;
        if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
        if (opts.log_steps) cfg.log_steps = true;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        depsim::run_experiment(cfg);
    } catch (const std::exception& e) {
        std::cerr << "runtime fault: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"depsim - exploration experiments on overactuated systems"};
    app.require_subcommand(1);

    const std::vector<std::string> kinds = {"explore",        "mcar-demo", "correlate",
                                            "variance-sweep", "psd-check", "prefill-compare"};
    const std::vector<std::string> descriptions = {
        "state-coverage sweep over controllers and action multipliers",
        "simplified 1-D controller on the mountain car, time-distance sweep",
        "action correlation matrices per controller",
        "effective variance of collapsed redundant actions vs. prediction",
        "colored-noise spectral slope verification",
        "DEP vs. white-noise replay-buffer prefill coverage",
    };

    std::vector<CommonOpts> opts(kinds.size());
    for (size_t i = 0; i < kinds.size(); ++i) {
        auto* sub = app.add_subcommand(kinds[i], descriptions[i]);
        add_common(sub, opts[i]);
    }

    CLI11_PARSE(app, argc, argv);

    for (size_t i = 0; i < kinds.size(); ++i) {
        if (app.get_subcommand(kinds[i])->parsed()) return run(kinds[i], opts[i]);
    }
    return 2;
}
