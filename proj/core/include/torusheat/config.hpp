#ifndef TORUSHEAT_CONFIG_HPP
#define TORUSHEAT_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusheat/lattice.hpp"
#include "torusheat/weight_model.hpp"

namespace torusheat {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Schema-validated experiment configuration (schema_version 1). Unknown
/// keys are rejected; every run embeds the fully resolved config in its
/// output. See docs/config-schema.json for the field reference.
struct ExperimentConfig {
    int schema_version = 1;
    std::string experiment;

    // weight model
    std::string weight_kind = "power";  // power | geometric | explicit | matrix
    double weight_lambda = 0.5;
    double weight_sigma = 1.0;
    std::vector<double> weight_values;
    std::vector<double> weight_matrix;  // row-major d*d
    std::size_t dimension = 3;

    // lattice
    int b1 = 8;
    std::vector<int> bandwidths;  // overrides the weight-derived rule if set

    // shared experiment parameters
    double p = 2.0;
    std::vector<double> p_list;
    double theta = 0.5;
    double lambda_class = 0.1;
    double eta = 1.0;
    int order = 1;
    double t_min = 1e-6;
    double t_max = 1.0;
    std::size_t t_points = 120;
    std::uint64_t seed = 1;
    std::size_t n_fields = 50;
    std::size_t x_samples = 200;
    std::string scale = "Lp";  // Lp | Lambda | Dist

    // stochastic parameters
    double dt = 1e-3;
    double y0 = 3.0;
    std::size_t n_paths = 100000;
    std::size_t direction = 1;
    bool dump_paths = false;

    std::string suite_name = "acceptance";
    std::string output_dir;  // empty -> $TORUSHEAT_OUT or "torusheat-out"

    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
    std::string to_json() const;

    WeightModel make_weights() const;
    FrequencyLattice make_lattice() const;
    std::string resolved_output_dir() const;
    void validate() const;
};

/// Exit codes: 0 all assertions passed, 1 assertion failure (reports are
/// still written), 2 invalid configuration.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

const std::vector<std::string>& known_experiments();

} // namespace torusheat

#endif
