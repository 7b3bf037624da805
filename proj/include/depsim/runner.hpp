#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "depsim/dep.hpp"
#include "depsim/envs.hpp"

namespace depsim {

struct ControllerSpec {
    std::string type = "white";  // dep | white | ou | colored
    DepParams dep = DepParams::arm_preset();
    double sigma = 1.0;   // white / ou / colored scale
    double theta = 0.1;   // ou drift
    double beta = 1.0;    // colored exponent
    std::string name;     // row label; defaults to a descriptive one

    std::string label() const;
};

struct ExperimentConfig {
    std::string kind;  // explore | mcar-demo | correlate | variance-sweep | psd-check | prefill-compare
    std::string environment = "torquearm";  // torquearm | arm26 | mountaincar
    std::vector<ControllerSpec> controllers;
    std::vector<int> multipliers{1};
    std::vector<std::uint64_t> seeds{0};
    std::uint64_t seed_offset = 0;
    int episodes = 50;
    int horizon = 1000;
    int block_episodes = 5;   // DEP state reset cadence for coverage blocks
    int grid_resolution = 30;
    int workers = 1;
    bool log_steps = false;
    std::string out_dir = ".";

    // mcar-demo
    std::vector<int> mcar_time_dists;  // default {5..28, 50}
    double mcar_kappa = 10000.0;

    // variance-sweep
    std::vector<int> variance_ns{2, 10, 100, 300};
    std::int64_t variance_samples = 1000000;

    // psd-check
    std::vector<double> psd_betas{0.0, 1.0, 2.0};
    int psd_length = 65536;

    // prefill-compare
    int prefill_steps = 5000;
    double prefill_white_sigma = 0.5;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::json to_json() const;  // fully resolved, for output headers
    void validate() const;
};

// Interface used by the exploration sweeps: one action per control step.
class ExplorationController {
public:
    virtual ~ExplorationController() = default;
    virtual Eigen::VectorXd act(Environment& env) = 0;
    virtual void reset_state() = 0;  // coverage-block reset
};

std::unique_ptr<Environment> make_environment(const ExperimentConfig& cfg, int multiplier);
std::unique_ptr<ExplorationController> make_controller(const ControllerSpec& spec,
                                                       const Environment& env,
                                                       std::uint64_t seed);

// Experiment drivers; each writes one CSV (plus optional NDJSON) under
// cfg.out_dir. Throws on runtime faults; config problems throw
// std::invalid_argument.
void run_explore(const ExperimentConfig& cfg);
void run_mcar_demo(const ExperimentConfig& cfg);
void run_variance_sweep(const ExperimentConfig& cfg);
void run_correlate(const ExperimentConfig& cfg);
void run_psd_check(const ExperimentConfig& cfg);
void run_prefill_compare(const ExperimentConfig& cfg);

// Dispatch by cfg.kind.
void run_experiment(const ExperimentConfig& cfg);

}  // namespace depsim
