// Command-line front end: one subcommand per experiment, JSON/TSV artifacts
// in the output directory, exit 0 on success, 1 on assertion failure, 2 on
// bad configuration.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "torusheat/config.hpp"
#include "torusheat/norms.hpp"

namespace {

using torusheat::ConfigError;
using torusheat::ExperimentConfig;

// "power:0.5", "geometric:1", "explicit:1,4,9", "matrix:2,1;1,2"
void parse_weight_spec(const std::string& spec, ExperimentConfig& cfg) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    cfg.weight_kind = kind;
    if (kind == "power") {
        cfg.weight_lambda = std::stod(arg);
    } else if (kind == "geometric") {
        cfg.weight_sigma = std::stod(arg);
    } else if (kind == "explicit") {
        cfg.weight_values.clear();
        std::stringstream ss(arg);
        std::string cell;
        while (std::getline(ss, cell, ',')) cfg.weight_values.push_back(std::stod(cell));
        cfg.dimension = cfg.weight_values.size();
    } else if (kind == "matrix") {
        cfg.weight_matrix.clear();
        std::stringstream rows(arg);
        std::string row;
        std::size_t d = 0;
        while (std::getline(rows, row, ';')) {
            std::stringstream ss(row);
            std::string cell;
            while (std::getline(ss, cell, ',')) cfg.weight_matrix.push_back(std::stod(cell));
            ++d;
        }
        cfg.dimension = d;
    } else {
        throw ConfigError("unknown weight kind in --weights: " + kind);
    }
}

void add_common_flags(CLI::App* cmd, ExperimentConfig& cfg, std::string& weight_spec,
                      std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file (flags override its fields)");
    cmd->add_option("--weights", weight_spec,
                    "weight model: power:LAMBDA | geometric:SIGMA | explicit:a1,a2,... | "
                    "matrix:r1c1,r1c2;r2c1,r2c2");
    cmd->add_option("--d", cfg.dimension, "torus dimension");
    cmd->add_option("--b1", cfg.b1, "first-axis bandwidth (others follow the weight rule)");
    cmd->add_option("--bandwidths", cfg.bandwidths, "explicit per-axis bandwidths")
        ->delimiter(',');
    cmd->add_option("--p", cfg.p, "Lebesgue exponent (0 means infinity)");
    cmd->add_option("--p-list", cfg.p_list, "list of Lebesgue exponents")->delimiter(',');
    cmd->add_option("--theta", cfg.theta, "Lipschitz smoothness parameter");
    cmd->add_option("--lambda", cfg.lambda_class, "CK class parameter");
    cmd->add_option("--order", cfg.order, "derivative / difference order");
    cmd->add_option("--tmin", cfg.t_min, "smallest t in the grid");
    cmd->add_option("--tmax", cfg.t_max, "largest t in the grid");
    cmd->add_option("--tpoints", cfg.t_points, "t-grid size");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--fields", cfg.n_fields, "trial family size");
    cmd->add_option("--x-samples", cfg.x_samples, "spatial sample count");
    cmd->add_option("--scale", cfg.scale, "tail scale: Lp | Lambda | Dist");
    cmd->add_option("--dt", cfg.dt, "Euler step");
    cmd->add_option("--y0", cfg.y0, "background start height");
    cmd->add_option("--paths", cfg.n_paths, "Monte Carlo path count");
    cmd->add_option("--direction", cfg.direction, "Riesz direction index");
    cmd->add_flag("--dump-paths", cfg.dump_paths, "write per-path tau/contribution TSV");
    cmd->add_option("--out", cfg.output_dir, "output directory (default $TORUSHEAT_OUT)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"torusheat: heat-semigroup, Riesz-transform and Lipschitz-scale experiments "
                 "on truncated tori"};
    app.require_subcommand(1);

    struct SubState {
        ExperimentConfig cfg;
        std::string weight_spec;
        std::string config_path;
        CLI::App* cmd = nullptr;
    };
    std::vector<SubState> subs(torusheat::known_experiments().size());

    for (std::size_t i = 0; i < torusheat::known_experiments().size(); ++i) {
        const std::string& name = torusheat::known_experiments()[i];
        subs[i].cfg.experiment = name;
        subs[i].cmd = app.add_subcommand(name, "run the '" + name + "' experiment");
        add_common_flags(subs[i].cmd, subs[i].cfg, subs[i].weight_spec, subs[i].config_path);
        if (name == "suite")
            subs[i].cmd->add_option("name", subs[i].cfg.suite_name, "acceptance | quick");
    }

    CLI11_PARSE(app, argc, argv);

    for (auto& sub : subs) {
        if (!sub.cmd->parsed()) continue;
        try {
            ExperimentConfig cfg = sub.cfg;
            if (!sub.config_path.empty()) {
                cfg = ExperimentConfig::from_json_file(sub.config_path);
                cfg.experiment = sub.cfg.experiment;
                // explicit flags override file values
                for (const auto* opt : sub.cmd->get_options()) {
                    if (opt->count() == 0) continue;
                    const std::string n = opt->get_name();
                    if (n == "--seed") cfg.seed = sub.cfg.seed;
                    if (n == "--paths") cfg.n_paths = sub.cfg.n_paths;
                    if (n == "--p") cfg.p = sub.cfg.p;
                    if (n == "--theta") cfg.theta = sub.cfg.theta;
                    if (n == "--out") cfg.output_dir = sub.cfg.output_dir;
                    if (n == "--d") cfg.dimension = sub.cfg.dimension;
                    if (n == "--tmin") cfg.t_min = sub.cfg.t_min;
                    if (n == "--tmax") cfg.t_max = sub.cfg.t_max;
                }
            }
            if (!sub.weight_spec.empty()) parse_weight_spec(sub.weight_spec, cfg);
            if (cfg.p == 0.0) cfg.p = torusheat::kInfinity;
            return torusheat::run_experiment(cfg, std::cout);
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}
