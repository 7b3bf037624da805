#include "depsim/runner.hpp"

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "depsim/action_space.hpp"
#include "depsim/io.hpp"
#include "depsim/metrics.hpp"
#include "depsim/noise.hpp"
#include "depsim/scheduler.hpp"

namespace depsim {

namespace {

using nlohmann::json;

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
    // splitmix64 over a simple combination
    std::uint64_t z = a * 0x9E3779B97F4A7C15ull + b * 0xBF58476D1CE4E5B9ull + c + 1;
    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27; z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
    }
}

ControllerSpec controller_from_json(const json& j) {
    reject_unknown_keys(j, {"type", "name", "preset", "sigma", "theta", "beta", "kappa", "tau",
                            "time_dist", "buffer_size", "bias_rate", "s4avg", "eps", "c_force"},
                        "controller");
    ControllerSpec spec;
    spec.type = j.at("type").get<std::string>();
    if (spec.type != "dep" && spec.type != "white" && spec.type != "ou" && spec.type != "colored")
        throw std::invalid_argument("config: unknown controller type '" + spec.type + "'");
    if (j.contains("preset")) {
        const auto preset = j.at("preset").get<std::string>();
        if (preset == "arm") spec.dep = DepParams::arm_preset();
        else if (preset == "locomotion") spec.dep = DepParams::locomotion_preset();
        else throw std::invalid_argument("config: unknown DEP preset '" + preset + "'");
    }
    if (j.contains("name")) spec.name = j.at("name").get<std::string>();
    if (j.contains("sigma")) spec.sigma = j.at("sigma").get<double>();
    if (j.contains("theta")) spec.theta = j.at("theta").get<double>();
    if (j.contains("beta")) spec.beta = j.at("beta").get<double>();
    if (j.contains("kappa")) spec.dep.kappa = j.at("kappa").get<double>();
    if (j.contains("tau")) spec.dep.tau = j.at("tau").get<double>();
    if (j.contains("time_dist")) spec.dep.time_dist = j.at("time_dist").get<int>();
    if (j.contains("buffer_size")) spec.dep.buffer_size = j.at("buffer_size").get<int>();
    if (j.contains("bias_rate")) spec.dep.bias_rate = j.at("bias_rate").get<double>();
    if (j.contains("s4avg")) spec.dep.s4avg = j.at("s4avg").get<int>();
    if (j.contains("eps")) spec.dep.eps = j.at("eps").get<double>();
    if (j.contains("c_force")) spec.dep.c_force = j.at("c_force").get<double>();
    return spec;
}

json controller_to_json(const ControllerSpec& s) {
    json j;
    j["type"] = s.type;
    j["name"] = s.label();
    if (s.type == "dep") {
        j["kappa"] = s.dep.kappa;
        j["tau"] = s.dep.tau;
        j["time_dist"] = s.dep.time_dist;
        j["buffer_size"] = s.dep.buffer_size;
        j["bias_rate"] = s.dep.bias_rate;
        j["s4avg"] = s.dep.s4avg;
        j["eps"] = s.dep.eps;
        j["c_force"] = s.dep.c_force;
    } else {
        j["sigma"] = s.sigma;
        if (s.type == "ou") j["theta"] = s.theta;
        if (s.type == "colored") j["beta"] = s.beta;
    }
    return j;
}

std::ofstream open_output(const ExperimentConfig& cfg, const std::string& filename) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = std::filesystem::path(cfg.out_dir) / filename;
    std::ofstream os(path, std::ios::binary);  // LF line endings everywhere
    if (!os) throw std::runtime_error("cannot open output file " + path.string());
    os << "# config=" << cfg.to_json().dump() << "\n";
    os << "# seed_offset=" << cfg.seed_offset << "\n";
    return os;
}

// Runs independent cells either serially (reference path) or under OpenMP.
template <typename Fn>
void run_cells(int n_cells, int workers, Fn&& fn) {
    if (workers <= 1) {
        for (int i = 0; i < n_cells; ++i) fn(i);
        return;
    }
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < n_cells; ++i) fn(i);
}

}  // namespace

std::string ControllerSpec::label() const {
    if (!name.empty()) return name;
    std::ostringstream os;
    if (type == "dep") {
        os << "dep";
    } else if (type == "white") {
        os << "white_s" << format_double(sigma);
    } else if (type == "ou") {
        os << "ou_t" << format_double(theta) << "_s" << format_double(sigma);
    } else {
        os << "colored_b" << format_double(beta) << "_s" << format_double(sigma);
    }
    return os.str();
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> kinds = {"explore",        "mcar-demo", "correlate",
                                                   "variance-sweep", "psd-check", "prefill-compare"};
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
        throw std::invalid_argument("config: unknown experiment kind '" + kind + "'");
    if (environment != "torquearm" && environment != "arm26" && environment != "mountaincar")
        throw std::invalid_argument("config: unknown environment '" + environment + "'");
    if (seeds.empty()) throw std::invalid_argument("config: seeds must be non-empty");
    if (episodes < 1 || horizon < 1 || block_episodes < 1)
        throw std::invalid_argument("config: episodes, horizon, block_episodes must be >= 1");
    if (grid_resolution < 2) throw std::invalid_argument("config: grid_resolution must be >= 2");
    if (workers < 0) throw std::invalid_argument("config: workers must be >= 0");
    for (int n : multipliers)
        if (n < 1) throw std::invalid_argument("config: multipliers must be >= 1");
    if ((kind == "explore" || kind == "correlate") && controllers.empty())
        throw std::invalid_argument("config: controllers must be non-empty for " + kind);
    if (kind == "explore" && environment == "mountaincar")
        throw std::invalid_argument("config: explore requires an arm environment");
    for (const auto& c : controllers)
        if (c.type == "dep") c.dep.validate();
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    reject_unknown_keys(
        j,
        {"kind", "environment", "controllers", "multipliers", "seeds", "seed_offset", "episodes",
         "horizon", "block_episodes", "grid_resolution", "workers", "log_steps", "out_dir",
         "mcar_time_dists", "mcar_kappa", "variance_ns", "variance_samples", "psd_betas",
         "psd_length", "prefill_steps", "prefill_white_sigma"},
        "experiment");
    ExperimentConfig cfg;
    cfg.kind = j.at("kind").get<std::string>();
    if (j.contains("environment")) cfg.environment = j.at("environment").get<std::string>();
    if (j.contains("controllers"))
        for (const auto& c : j.at("controllers")) cfg.controllers.push_back(controller_from_json(c));
    if (j.contains("multipliers")) cfg.multipliers = j.at("multipliers").get<std::vector<int>>();
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("seed_offset")) cfg.seed_offset = j.at("seed_offset").get<std::uint64_t>();
    if (j.contains("episodes")) cfg.episodes = j.at("episodes").get<int>();
    if (j.contains("horizon")) cfg.horizon = j.at("horizon").get<int>();
    if (j.contains("block_episodes")) cfg.block_episodes = j.at("block_episodes").get<int>();
    if (j.contains("grid_resolution")) cfg.grid_resolution = j.at("grid_resolution").get<int>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
    if (j.contains("log_steps")) cfg.log_steps = j.at("log_steps").get<bool>();
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("mcar_time_dists"))
        cfg.mcar_time_dists = j.at("mcar_time_dists").get<std::vector<int>>();
    if (j.contains("mcar_kappa")) cfg.mcar_kappa = j.at("mcar_kappa").get<double>();
    if (j.contains("variance_ns")) cfg.variance_ns = j.at("variance_ns").get<std::vector<int>>();
    if (j.contains("variance_samples"))
        cfg.variance_samples = j.at("variance_samples").get<std::int64_t>();
    if (j.contains("psd_betas")) cfg.psd_betas = j.at("psd_betas").get<std::vector<double>>();
    if (j.contains("psd_length")) cfg.psd_length = j.at("psd_length").get<int>();
    if (j.contains("prefill_steps")) cfg.prefill_steps = j.at("prefill_steps").get<int>();
    if (j.contains("prefill_white_sigma"))
        cfg.prefill_white_sigma = j.at("prefill_white_sigma").get<double>();
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot read " + path);
    json j;
    try {
        is >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: parse error: ") + e.what());
    }
    return from_json(j);
}

json ExperimentConfig::to_json() const {
    json j;
    j["kind"] = kind;
    j["environment"] = environment;
    json ctrls = json::array();
    for (const auto& c : controllers) ctrls.push_back(controller_to_json(c));
    j["controllers"] = ctrls;
    j["multipliers"] = multipliers;
    j["seeds"] = seeds;
    j["seed_offset"] = seed_offset;
    j["episodes"] = episodes;
    j["horizon"] = horizon;
    j["block_episodes"] = block_episodes;
    j["grid_resolution"] = grid_resolution;
    j["log_steps"] = log_steps;
    if (kind == "mcar-demo") {
        j["mcar_time_dists"] = mcar_time_dists;
        j["mcar_kappa"] = mcar_kappa;
    }
    if (kind == "variance-sweep") {
        j["variance_ns"] = variance_ns;
        j["variance_samples"] = variance_samples;
    }
    if (kind == "psd-check") {
        j["psd_betas"] = psd_betas;
        j["psd_length"] = psd_length;
    }
    if (kind == "prefill-compare") {
        j["prefill_steps"] = prefill_steps;
        j["prefill_white_sigma"] = prefill_white_sigma;
    }
    return j;
}

std::unique_ptr<Environment> make_environment(const ExperimentConfig& cfg, int multiplier) {
    if (cfg.environment == "torquearm")
        return std::make_unique<TorqueArmEnv>(ArmGeometry{}, multiplier, cfg.horizon);
    if (cfg.environment == "arm26") {
        Arm26Config ac;
        ac.multiplier = multiplier;
        ac.horizon = cfg.horizon;
        return std::make_unique<Arm26Env>(ac);
    }
    if (cfg.environment == "mountaincar") {
        MountainCarConfig mc;
        mc.horizon = cfg.horizon;
        return std::make_unique<MountainCarEnv>(mc);
    }
    throw std::invalid_argument("unknown environment " + cfg.environment);
}

namespace {

class DepCtrl : public ExplorationController {
public:
    DepCtrl(DepParams params, const Environment& env)
        : dep_(env.action_dim(), env.dep_sensor_dim(),
               [&] { params.f_sign = env.dep_f_sign(); return params; }()) {}

    Eigen::VectorXd act(Environment& env) override { return dep_.step(env.dep_sensors()); }
    void reset_state() override { dep_.reset(); }
    DepController& controller() { return dep_; }

private:
    DepController dep_;
};

class NoiseCtrl : public ExplorationController {
public:
    NoiseCtrl(const ControllerSpec& spec, int dims, int horizon, std::uint64_t seed) {
        if (spec.type == "white") {
            white_ = std::make_unique<WhiteNoise>(spec.sigma, dims, seed);
        } else if (spec.type == "ou") {
            ou_ = std::make_unique<OUNoise>(OUParams{spec.theta, spec.sigma, 0.0, 0.0}, dims, seed);
        } else if (spec.type == "colored") {
            colored_ = std::make_unique<ColoredNoise>(
                ColoredNoiseParams{spec.beta, spec.sigma, horizon}, dims, seed);
        } else {
            throw std::invalid_argument("not a noise controller: " + spec.type);
        }
    }

    Eigen::VectorXd act(Environment&) override {
        if (white_) return white_->sample();
        if (ou_) return ou_->sample();
        return colored_->sample();
    }

    void reset_state() override {}  // noise processes run through block resets

private:
    std::unique_ptr<WhiteNoise> white_;
    std::unique_ptr<OUNoise> ou_;
    std::unique_ptr<ColoredNoise> colored_;
};

}  // namespace

std::unique_ptr<ExplorationController> make_controller(const ControllerSpec& spec,
                                                       const Environment& env,
                                                       std::uint64_t seed) {
    if (spec.type == "dep") return std::make_unique<DepCtrl>(spec.dep, env);
    return std::make_unique<NoiseCtrl>(spec, env.action_dim(), env.horizon(), seed);
}

namespace {

struct ExploreCell {
    int controller_idx, multiplier_idx, seed_idx;
};

std::array<double, 2> workspace_radius_bounds(const ArmGeometry& g) {
    const double r = g.link_length[0] + g.link_length[1];
    return {-r, r};
}

}  // namespace

void run_explore(const ExperimentConfig& cfg) {
    cfg.validate();
    const int n_blocks = (cfg.episodes + cfg.block_episodes - 1) / cfg.block_episodes;

    std::vector<ExploreCell> cells;
    for (int c = 0; c < static_cast<int>(cfg.controllers.size()); ++c)
        for (int m = 0; m < static_cast<int>(cfg.multipliers.size()); ++m)
            for (int s = 0; s < static_cast<int>(cfg.seeds.size()); ++s)
                cells.push_back({c, m, s});

    // per-cell: block coverages followed by the all-episode aggregate
    std::vector<std::vector<double>> results(cells.size());
    std::vector<std::string> ndjson_names(cells.size());
    std::vector<std::string> ndjson_bodies(cells.size());

    run_cells(static_cast<int>(cells.size()), cfg.workers, [&](int idx) {
        const auto& cell = cells[idx];
        const auto& spec = cfg.controllers[cell.controller_idx];
        const int n = cfg.multipliers[cell.multiplier_idx];
        const std::uint64_t seed = cfg.seeds[cell.seed_idx] + cfg.seed_offset;
        const std::uint64_t cell_seed = mix_seed(seed, cell.controller_idx, n);

        auto env = make_environment(cfg, n);
        auto ctrl = make_controller(spec, *env, cell_seed);
        std::mt19937_64 reset_rng(mix_seed(cell_seed, 0xE9ull));

        const auto bounds = workspace_radius_bounds(ArmGeometry{});
        CoverageGrid total(cfg.grid_resolution, bounds, bounds);
        std::vector<double> row;
        std::ostringstream ndjson;

        for (int block = 0; block < n_blocks; ++block) {
            CoverageGrid grid(cfg.grid_resolution, bounds, bounds);
            const int first_ep = block * cfg.block_episodes;
            const int last_ep = std::min(first_ep + cfg.block_episodes, cfg.episodes);
            for (int ep = first_ep; ep < last_ep; ++ep) {
                Eigen::VectorXd obs = env->reset(reset_rng);
                EpisodeLog log;
                for (int t = 0; t < cfg.horizon; ++t) {
                    const Eigen::VectorXd a = ctrl->act(*env);
                    const StepResult res = env->step(a);
                    const auto hand = env->hand_position();
                    grid.add(hand[0], hand[1]);
                    if (cfg.log_steps) {
                        log.steps.push_back({t, obs, a, res.reward,
                                             spec.type == "dep" ? ControllerTag::dep
                                                                : ControllerTag::policy});
                    }
                    obs = res.observation;
                    // exploration sweeps are reward-free: run the full horizon
                }
                if (cfg.log_steps) write_episode_ndjson(ndjson, log);
            }
            row.push_back(grid.coverage());
            total.merge(grid);
            ctrl->reset_state();  // DEP internal state resets every block
        }
        row.push_back(total.coverage());
        results[idx] = std::move(row);
        if (cfg.log_steps) {
            std::ostringstream name;
            name << "explore_" << spec.label() << "_n" << n << "_seed" << seed << ".ndjson";
            ndjson_names[idx] = name.str();
            ndjson_bodies[idx] = ndjson.str();
        }
    });

    auto os = open_output(cfg, "explore.csv");
    os << "controller,n,seed,block,coverage\n";
    for (size_t i = 0; i < cells.size(); ++i) {
        const auto& cell = cells[i];
        const auto& spec = cfg.controllers[cell.controller_idx];
        const int n = cfg.multipliers[cell.multiplier_idx];
        const std::uint64_t seed = cfg.seeds[cell.seed_idx] + cfg.seed_offset;
        for (int block = 0; block < n_blocks; ++block)
            os << spec.label() << ',' << n << ',' << seed << ',' << block << ','
               << format_double(results[i][block]) << "\n";
        os << spec.label() << ',' << n << ',' << seed << ",-1,"
           << format_double(results[i][n_blocks]) << "\n";
    }

    if (cfg.log_steps) {
        for (size_t i = 0; i < cells.size(); ++i) {
            std::ofstream nd(std::filesystem::path(cfg.out_dir) / ndjson_names[i],
                             std::ios::binary);
            nd << ndjson_bodies[i];
        }
    }
}

void run_mcar_demo(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<int> dists = cfg.mcar_time_dists;
    if (dists.empty()) {
        for (int d = 5; d <= 28; ++d) dists.push_back(d);
        dists.push_back(50);
    }

    struct Row {
        std::string controller;
        int time_dist;
        std::uint64_t seed;
        bool success;
        int steps;
        double max_x;
    };
    // DEP rows (deterministic) plus one random-baseline row per seed
    std::vector<Row> rows(dists.size() + cfg.seeds.size());

    run_cells(static_cast<int>(rows.size()), cfg.workers, [&](int idx) {
        MountainCarConfig mc;
        mc.horizon = cfg.horizon;
        MountainCarEnv env(mc);
        std::mt19937_64 rng(idx < static_cast<int>(dists.size())
                                ? 0
                                : cfg.seeds[idx - dists.size()] + cfg.seed_offset);
        env.reset(rng);

        Row row;
        row.max_x = env.state().x;
        row.steps = cfg.horizon;
        if (idx < static_cast<int>(dists.size())) {
            row.controller = "simplified_dep";
            row.time_dist = dists[idx];
            row.seed = 0;
            SimplifiedDep1d dep(dists[idx], cfg.mcar_kappa);
            for (int t = 0; t < cfg.horizon; ++t) {
                Eigen::VectorXd a(1);
                a << dep.step(env.sensor());
                const auto res = env.step(a);
                row.max_x = std::max(row.max_x, env.state().x);
                if (env.succeeded()) { row.steps = t + 1; break; }
                if (res.done) break;
            }
        } else {
            row.controller = "random_gaussian";
            row.time_dist = 0;
            row.seed = cfg.seeds[idx - dists.size()] + cfg.seed_offset;
            std::normal_distribution<double> normal(0.0, 1.0);
            for (int t = 0; t < cfg.horizon; ++t) {
                Eigen::VectorXd a(1);
                a << normal(rng);
                const auto res = env.step(a);
                row.max_x = std::max(row.max_x, env.state().x);
                if (env.succeeded()) { row.steps = t + 1; break; }
                if (res.done) break;
            }
        }
        row.success = env.succeeded();
        rows[idx] = std::move(row);
    });

    auto os = open_output(cfg, "mcar_demo.csv");
    os << "controller,time_dist,seed,success,steps,max_x\n";
    for (const auto& r : rows)
        os << r.controller << ',' << r.time_dist << ',' << r.seed << ',' << (r.success ? 1 : 0)
           << ',' << r.steps << ',' << format_double(r.max_x) << "\n";
}

void run_variance_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    struct Cell { std::string mode; int n; };
    std::vector<Cell> cells;
    for (int n : cfg.variance_ns) cells.push_back({"iid", n});
    for (int n : cfg.variance_ns) cells.push_back({"copied", n});

    std::vector<std::array<double, 2>> results(cells.size());  // empirical, predicted
    const std::uint64_t base_seed = cfg.seeds.front() + cfg.seed_offset;

    run_cells(static_cast<int>(cells.size()), cfg.workers, [&](int idx) {
        const auto& cell = cells[idx];
        std::mt19937_64 rng(mix_seed(base_seed, idx));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const double sigma2 = 1.0 / 3.0;  // variance of uniform[-1, 1]

        double sum = 0.0, sumsq = 0.0;
        Eigen::VectorXd inflated(cell.n);
        for (std::int64_t k = 0; k < cfg.variance_samples; ++k) {
            if (cell.mode == "iid") {
                for (int i = 0; i < cell.n; ++i) inflated[i] = u(rng);
            } else {
                inflated.setConstant(u(rng));
            }
            const double a = collapse_actions(inflated, cell.n)[0];
            sum += a;
            sumsq += a * a;
        }
        const double mean = sum / cfg.variance_samples;
        const double empirical = sumsq / cfg.variance_samples - mean * mean;
        const double rho = cell.mode == "iid" ? 0.0 : 1.0;
        results[idx] = {empirical, predicted_effective_variance(sigma2, cell.n, rho)};
    });

    auto os = open_output(cfg, "variance_sweep.csv");
    os << "mode,n,empirical_variance,predicted_variance\n";
    for (size_t i = 0; i < cells.size(); ++i)
        os << cells[i].mode << ',' << cells[i].n << ',' << format_double(results[i][0]) << ','
           << format_double(results[i][1]) << "\n";
}

void run_correlate(const ExperimentConfig& cfg) {
    cfg.validate();
    struct Cell { int controller_idx, seed_idx; };
    std::vector<Cell> cells;
    for (int c = 0; c < static_cast<int>(cfg.controllers.size()); ++c)
        for (int s = 0; s < static_cast<int>(cfg.seeds.size()); ++s) cells.push_back({c, s});

    const int n = cfg.multipliers.front();
    std::vector<Eigen::MatrixXd> matrices(cells.size());

    run_cells(static_cast<int>(cells.size()), cfg.workers, [&](int idx) {
        const auto& cell = cells[idx];
        const auto& spec = cfg.controllers[cell.controller_idx];
        const std::uint64_t seed = cfg.seeds[cell.seed_idx] + cfg.seed_offset;
        const std::uint64_t cell_seed = mix_seed(seed, cell.controller_idx, n);

        auto env = make_environment(cfg, n);
        auto ctrl = make_controller(spec, *env, cell_seed);
        std::mt19937_64 reset_rng(mix_seed(cell_seed, 0xE9ull));

        Eigen::MatrixXd trajectory(cfg.horizon, env->action_dim());
        env->reset(reset_rng);
        for (int t = 0; t < cfg.horizon; ++t) {
            const Eigen::VectorXd a = ctrl->act(*env);
            trajectory.row(t) = a.transpose();
            env->step(a);
        }
        matrices[idx] = action_correlation(trajectory).matrix;
    });

    auto os = open_output(cfg, "correlate.csv");
    os << "controller,seed,i,j,correlation\n";
    for (size_t k = 0; k < cells.size(); ++k) {
        const auto& spec = cfg.controllers[cells[k].controller_idx];
        const std::uint64_t seed = cfg.seeds[cells[k].seed_idx] + cfg.seed_offset;
        const auto& m = matrices[k];
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                os << spec.label() << ',' << seed << ',' << i << ',' << j << ','
                   << format_double(m(i, j)) << "\n";
    }
}

void run_psd_check(const ExperimentConfig& cfg) {
    cfg.validate();
    struct Cell { int beta_idx, seed_idx; };
    std::vector<Cell> cells;
    for (int b = 0; b < static_cast<int>(cfg.psd_betas.size()); ++b)
        for (int s = 0; s < static_cast<int>(cfg.seeds.size()); ++s) cells.push_back({b, s});

    std::vector<double> estimates(cells.size());
    run_cells(static_cast<int>(cells.size()), cfg.workers, [&](int idx) {
        const auto& cell = cells[idx];
        const double beta = cfg.psd_betas[cell.beta_idx];
        std::mt19937_64 rng(mix_seed(cfg.seeds[cell.seed_idx] + cfg.seed_offset, cell.beta_idx));
        const auto seq = ColoredNoise::synthesize(beta, cfg.psd_length, rng);
        estimates[idx] = psd_slope(seq);
    });

    auto os = open_output(cfg, "psd_check.csv");
    os << "beta,seed,estimated_beta\n";
    for (size_t k = 0; k < cells.size(); ++k)
        os << format_double(cfg.psd_betas[cells[k].beta_idx]) << ','
           << cfg.seeds[cells[k].seed_idx] + cfg.seed_offset << ','
           << format_double(estimates[k]) << "\n";
}

void run_prefill_compare(const ExperimentConfig& cfg) {
    cfg.validate();
    struct Cell { std::string controller; int seed_idx; };
    std::vector<Cell> cells;
    for (int s = 0; s < static_cast<int>(cfg.seeds.size()); ++s) {
        cells.push_back({"dep", s});
        cells.push_back({"white", s});
    }

    std::vector<double> coverages(cells.size());
    run_cells(static_cast<int>(cells.size()), cfg.workers, [&](int idx) {
        const auto& cell = cells[idx];
        const std::uint64_t seed = cfg.seeds[cell.seed_idx] + cfg.seed_offset;

        Arm26Config ac;
        ac.multiplier = cfg.multipliers.front();
        Arm26Env env(ac);
        // paired seeds: both controllers see identical reset streams
        std::mt19937_64 reset_rng(mix_seed(seed, 0xE9ull));

        ControllerSpec spec;
        if (cell.controller == "dep") {
            spec.type = "dep";
            spec.dep = DepParams::arm_preset();
        } else {
            spec.type = "white";
            spec.sigma = cfg.prefill_white_sigma;
        }
        auto ctrl = make_controller(spec, env, mix_seed(seed, 1));

        const auto bounds = workspace_radius_bounds(ac.geometry);
        CoverageGrid grid(cfg.grid_resolution, bounds, bounds);
        int steps = 0;
        while (steps < cfg.prefill_steps) {
            env.reset(reset_rng);
            for (int t = 0; t < env.horizon() && steps < cfg.prefill_steps; ++t) {
                const auto res = env.step(ctrl->act(env));
                const auto hand = env.hand_position();
                grid.add(hand[0], hand[1]);
                ++steps;
                if (res.done) break;
            }
        }
        coverages[idx] = grid.coverage();
    });

    auto os = open_output(cfg, "prefill_compare.csv");
    os << "controller,seed,steps,coverage\n";
    for (size_t k = 0; k < cells.size(); ++k)
        os << cells[k].controller << ',' << cfg.seeds[cells[k].seed_idx] + cfg.seed_offset << ','
           << cfg.prefill_steps << ',' << format_double(coverages[k]) << "\n";
}

void run_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind == "explore") run_explore(cfg);
    else if (cfg.kind == "mcar-demo") run_mcar_demo(cfg);
    else if (cfg.kind == "variance-sweep") run_variance_sweep(cfg);
    else if (cfg.kind == "correlate") run_correlate(cfg);
    else if (cfg.kind == "psd-check") run_psd_check(cfg);
    else if (cfg.kind == "prefill-compare") run_prefill_compare(cfg);
    else throw std::invalid_argument("unknown experiment kind " + cfg.kind);
}

}  // namespace depsim
