#include "torusheat/config.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <fstream>
#include <ostream>
#include <set>

#include "json.hpp"
#include "torusheat/ck.hpp"
#include "torusheat/geometry.hpp"
#include "torusheat/heat.hpp"
#include "torusheat/lipschitz.hpp"
#include "torusheat/norms.hpp"
#include "torusheat/poisson.hpp"
#include "torusheat/random_field.hpp"
#include "torusheat/riesz.hpp"
#include "torusheat/rng.hpp"
#include "torusheat/stochastic.hpp"
#include "torusheat/suite.hpp"

namespace torusheat {

using nlohmann::ordered_json;

namespace {

void reject_unknown(const ordered_json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
void get_if(const ordered_json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace

const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> names = {
        "classify",       "kernel-bounds",     "riesz-bounds", "gradient-bounds", "seminorm",
        "seminorm-compare", "poisson-regularity", "mc-riesz",     "suite"};
    return names;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"schema_version", "experiment", "weights", "lattice", "params", "output_dir"},
                   "config root");

    ExperimentConfig cfg;
    get_if(j, "schema_version", cfg.schema_version);
    if (cfg.schema_version != 1) throw ConfigError("unsupported schema_version");
    if (!j.contains("experiment")) throw ConfigError("missing 'experiment'");
    cfg.experiment = j.at("experiment").get<std::string>();
    get_if(j, "output_dir", cfg.output_dir);

    if (j.contains("weights")) {
        const ordered_json& w = j.at("weights");
        reject_unknown(w, {"kind", "lambda", "sigma", "values", "matrix", "d"}, "weights");
        get_if(w, "kind", cfg.weight_kind);
        get_if(w, "lambda", cfg.weight_lambda);
        get_if(w, "sigma", cfg.weight_sigma);
        get_if(w, "values", cfg.weight_values);
        get_if(w, "matrix", cfg.weight_matrix);
        std::size_t d = cfg.dimension;
        get_if(w, "d", d);
        cfg.dimension = d;
    }
    if (j.contains("lattice")) {
        const ordered_json& l = j.at("lattice");
        reject_unknown(l, {"b1", "bandwidths"}, "lattice");
        get_if(l, "b1", cfg.b1);
        get_if(l, "bandwidths", cfg.bandwidths);
    }
    if (j.contains("params")) {
        const ordered_json& p = j.at("params");
        reject_unknown(p,
                       {"p", "p_list", "theta", "lambda", "eta", "order", "t_min", "t_max",
                        "t_points", "seed", "n_fields", "x_samples", "scale", "dt", "y0",
                        "n_paths", "direction", "dump_paths", "name"},
                       "params");
        get_if(p, "p", cfg.p);
        get_if(p, "p_list", cfg.p_list);
        get_if(p, "theta", cfg.theta);
        get_if(p, "lambda", cfg.lambda_class);
        get_if(p, "eta", cfg.eta);
        get_if(p, "order", cfg.order);
        get_if(p, "t_min", cfg.t_min);
        get_if(p, "t_max", cfg.t_max);
        get_if(p, "t_points", cfg.t_points);
        get_if(p, "seed", cfg.seed);
        get_if(p, "n_fields", cfg.n_fields);
        get_if(p, "x_samples", cfg.x_samples);
        get_if(p, "scale", cfg.scale);
        get_if(p, "dt", cfg.dt);
        get_if(p, "y0", cfg.y0);
        get_if(p, "n_paths", cfg.n_paths);
        get_if(p, "direction", cfg.direction);
        get_if(p, "dump_paths", cfg.dump_paths);
        get_if(p, "name", cfg.suite_name);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

std::string ExperimentConfig::to_json() const {
    ordered_json j;
    j["schema_version"] = schema_version;
    j["experiment"] = experiment;
    ordered_json w;
    w["kind"] = weight_kind;
    if (weight_kind == "power") w["lambda"] = weight_lambda;
    if (weight_kind == "geometric") w["sigma"] = weight_sigma;
    if (weight_kind == "explicit") w["values"] = weight_values;
    if (weight_kind == "matrix") w["matrix"] = weight_matrix;
    w["d"] = dimension;
    j["weights"] = w;
    ordered_json l;
    l["b1"] = b1;
    if (!bandwidths.empty()) l["bandwidths"] = bandwidths;
    j["lattice"] = l;
    ordered_json p;
    p["p"] = this->p;
    if (!p_list.empty()) p["p_list"] = p_list;
    p["theta"] = theta;
    p["lambda"] = lambda_class;
    p["eta"] = eta;
    p["order"] = order;
    p["t_min"] = t_min;
    p["t_max"] = t_max;
    p["t_points"] = t_points;
    p["seed"] = seed;
    p["n_fields"] = n_fields;
    p["x_samples"] = x_samples;
    p["scale"] = scale;
    p["dt"] = dt;
    p["y0"] = y0;
    p["n_paths"] = n_paths;
    p["direction"] = direction;
    p["dump_paths"] = dump_paths;
    if (experiment == "suite") p["name"] = suite_name;
    j["params"] = p;
    j["output_dir"] = resolved_output_dir();
    return j.dump(2);
}

void ExperimentConfig::validate() const {
    bool known = false;
    for (const auto& name : known_experiments()) known = known || name == experiment;
    if (!known) throw ConfigError("unknown experiment '" + experiment + "'");
    if (weight_kind != "power" && weight_kind != "geometric" && weight_kind != "explicit" &&
        weight_kind != "matrix")
        throw ConfigError("unknown weight kind '" + weight_kind + "'");
    if (scale != "Lp" && scale != "Lambda" && scale != "Dist")
        throw ConfigError("unknown scale '" + scale + "'");
    if (experiment == "suite" && suite_name != "acceptance" && suite_name != "quick")
        throw ConfigError("unknown suite '" + suite_name + "'");
    if (dimension == 0) throw ConfigError("dimension must be positive");
    if (!(t_min > 0.0) || !(t_max > t_min)) throw ConfigError("need 0 < t_min < t_max");
}

WeightModel ExperimentConfig::make_weights() const {
    if (weight_kind == "power") return WeightModel::power(weight_lambda, dimension);
    if (weight_kind == "geometric") return WeightModel::geometric(weight_sigma, dimension);
    if (weight_kind == "explicit") {
        std::vector<double> v = weight_values;
        if (v.empty()) throw ConfigError("explicit weights need 'values'");
        return WeightModel::explicit_list(std::move(v));
    }
    return WeightModel::matrix(weight_matrix, dimension);
}

FrequencyLattice ExperimentConfig::make_lattice() const {
    if (!bandwidths.empty()) {
        if (bandwidths.size() != dimension) throw ConfigError("bandwidths size != d");
        return FrequencyLattice(dimension, bandwidths);
    }
    return FrequencyLattice::from_weights(make_weights(), b1);
}

std::string ExperimentConfig::resolved_output_dir() const {
    if (!output_dir.empty()) return output_dir;
    if (const char* env = std::getenv("TORUSHEAT_OUT")) return env;
    return "torusheat-out";
}

namespace {

// Writes <name>_report.json (config + reports) and one TSV per table.
void write_artifacts(const ExperimentConfig& cfg, const std::string& name,
                     const std::vector<ExperimentReport>& reports, std::ostream& log,
                     const std::string& extra_json = "") {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.resolved_output_dir());
    fs::create_directories(dir);

    ordered_json j;
    j["config"] = ordered_json::parse(cfg.to_json());
    j["timestamp"] = static_cast<std::int64_t>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    j["reports"] = ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(ordered_json::parse(r.to_json()));
    if (!extra_json.empty()) j["summary"] = ordered_json::parse(extra_json);

    const fs::path jpath = dir / (name + "_report.json");
    std::ofstream(jpath) << j.dump(2) << "\n";
    log << "wrote " << jpath.string() << "\n";

    std::map<std::string, int> seen;
    for (const auto& r : reports)
        for (const auto& t : r.tables) {
            std::string stem = name + "_" + t.name;
            const int count = ++seen[stem];
            if (count > 1) stem += "_" + std::to_string(count);
            const fs::path tpath = dir / (stem + ".tsv");
            std::ofstream out(tpath);
            t.write(out);
            log << "wrote " << tpath.string() << "\n";
        }
}

int run_classify(const ExperimentConfig& cfg, std::ostream& log) {
    CkOptions opts;
    opts.t_min = cfg.t_min;
    opts.t_max = std::min(cfg.t_max, 1.0);  // classification grid lives in (0, 1]
    opts.t_points = cfg.t_points;
    const CkClassification ck = classify_ck(cfg.make_weights(), opts);

    ExperimentReport rep;
    rep.experiment = "ck_classification";
    rep.note("weights", cfg.make_weights().describe());
    rep.note("fitted_exponent", fmt(ck.fitted_exponent));
    rep.note("ck_zero_plus_empirical", ck.ck_zero_plus ? "yes" : "no");
    rep.note("tail_dominated", ck.tail_dominated ? "yes (not classifiable)" : "no");
    for (const auto& pl : ck.per_lambda)
        rep.note("lambda_" + fmt(pl.lambda),
                 std::string(pl.stabilized ? "empirical CK (sup " : "not stabilized (sup ") +
                     fmt(pl.sup) + ", last-decade change " + fmt(pl.rel_change) + ")");
    rep.tables.push_back(ck.table);
    write_artifacts(cfg, "classify", {rep}, log);
    for (const auto& pl : ck.per_lambda)
        log << "lambda=" << fmt(pl.lambda) << "  sup=" << fmt(pl.sup)
            << (pl.stabilized ? "  [empirical CK]" : "  [not stabilized]") << "\n";
    return 0;
}

int run_kernel_bounds(const ExperimentConfig& cfg, std::ostream& log) {
    const WeightModel w = cfg.make_weights();
    const Spectrum sp(cfg.make_lattice(), w);

    GaussianBoundOptions gopts;
    gopts.lambda = cfg.lambda_class;
    gopts.t_min = std::max(cfg.t_min, 1e-6);
    gopts.t_max = std::min(cfg.t_max, 1.0);
    gopts.x_samples = cfg.x_samples;
    gopts.seed = cfg.seed;
    const GaussianBoundFit fit = verify_gaussian_bound(w, gopts);

    DifferentiabilityOptions dopts;
    dopts.seed = cfg.seed;
    const ExperimentReport diff = check_l1_linf_differentiability(sp, dopts);

    AnalyticityOptions aopts;
    aopts.p = cfg.p;
    aopts.seed = cfg.seed;
    aopts.n_fields = cfg.n_fields;
    const ExperimentReport ana = check_analyticity(sp, aopts);

    const std::vector<ExperimentReport> reports = {fit.report, diff, ana};
    write_artifacts(cfg, "kernel-bounds", reports, log);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed;
    return ok ? 0 : 1;
}

int run_riesz_bounds(const ExperimentConfig& cfg, std::ostream& log) {
    const Spectrum sp(cfg.make_lattice(), cfg.make_weights());
    const auto dict = trial_dictionary(sp.lattice(), cfg.seed, 4);
    std::vector<double> ps = cfg.p_list.empty() ? std::vector<double>{1.25, 1.5, 2.0, 3.0, 4.0}
                                                : cfg.p_list;
    std::vector<RieszOp> ops = {RieszOp::first(1), RieszOp::vector()};
    if (sp.dimension() >= 2) ops.push_back(RieszOp::second(1, 2));

    TsvTable table;
    table.name = "best_ratios";
    table.columns = {"p", "op", "best_ratio", "bound", "slack", "witness_seed"};
    bool ok = true;
    ExperimentReport rep;
    rep.experiment = "riesz_bounds";
    rep.note("seed", fmt(static_cast<int>(cfg.seed)));
    for (double p : ps)
        for (const auto& op : ops) {
            const RatioEstimate est = estimate_operator_ratio(sp, op, p, dict);
            const double bound = 2.0 * (pstar(p) - 1.0);
            table.add_row({fmt(p), op.name(), fmt(est.best_ratio), fmt(bound),
                           fmt(bound - est.best_ratio), fmt(est.argmax_index)});
            rep.require(op.name() + "_p" + fmt(p), bound + 1e-6 - est.best_ratio);
            ok = ok && est.report.passed;
        }
    rep.tables.push_back(std::move(table));
    write_artifacts(cfg, "riesz-bounds", {rep}, log);
    return ok ? 0 : 1;
}

int run_gradient_bounds(const ExperimentConfig& cfg, std::ostream& log) {
    const Spectrum sp(cfg.make_lattice(), cfg.make_weights());
    GradientBoundOptions opts;
    if (!cfg.p_list.empty()) opts.p_list = cfg.p_list;
    opts.seed = cfg.seed;
    opts.n_fields = std::min<std::size_t>(cfg.n_fields, 50);
    const GradientBoundFit fit = gradient_bound_check(sp, opts);
    write_artifacts(cfg, "gradient-bounds", {fit.report}, log);
    log << "K_hat = " << fmt(fit.k_hat) << ", endpoint C_hat = " << fmt(fit.c_hat) << "\n";
    return fit.report.passed ? 0 : 1;
}

int run_seminorm(const ExperimentConfig& cfg, std::ostream& log) {
    const Spectrum sp(cfg.make_lattice(), cfg.make_weights());
    const auto family = comparison_family(sp.lattice(), cfg.seed, cfg.n_fields, cfg.theta);

    LambdaOptions lopts;
    lopts.t_min = cfg.t_min;
    lopts.t_max = std::max(cfg.t_max, 10.0);
    lopts.t_points = std::max<std::size_t>(cfg.t_points, 120);

    TsvTable table;
    table.name = "seminorms";
    table.columns = {"field_id", "scale", "theta", "order", "p", "value", "argmax", "flag"};
    for (std::size_t fi = 0; fi < family.size(); ++fi) {
        const SeminormReport lam =
            lambda_seminorm(sp, family[fi], cfg.theta, cfg.order, cfg.p, lopts);
        table.add_row({fmt(fi), "lambda", fmt(cfg.theta), fmt(cfg.order), fmt(cfg.p),
                       fmt(lam.value), fmt(lam.argmax_t),
                       lam.boundary_attained ? "boundary" : ""});
        const int k = std::max(cfg.order, static_cast<int>(std::floor(cfg.theta)) + 1);
        const SeminormReport dis = dist_seminorm(sp, family[fi], cfg.theta, k, cfg.p);
        table.add_row({fmt(fi), "dist", fmt(cfg.theta), fmt(k), fmt(cfg.p), fmt(dis.value),
                       fmt(dis.argmax_dist), dis.boundary_attained ? "boundary" : ""});
    }
    ExperimentReport rep;
    rep.experiment = "seminorm_table";
    rep.note("n_fields", fmt(family.size()));
    rep.tables.push_back(std::move(table));
    write_artifacts(cfg, "seminorm", {rep}, log);
    return 0;
}

int run_seminorm_compare(const ExperimentConfig& cfg, std::ostream& log) {
    const Spectrum sp(cfg.make_lattice(), cfg.make_weights());
    const auto family = comparison_family(sp.lattice(), cfg.seed, cfg.n_fields, cfg.theta);
    std::vector<ExperimentReport> reports;

    const ScaleComparison fwd =
        compare_scales_forward(sp, family, cfg.theta, cfg.lambda_class, cfg.p);
    reports.push_back(fwd.report);

    // the backward direction needs theta < 1; clamp just under when the
    // forward theta sits above
    const double bwd_theta = std::min(cfg.theta, 0.99);
    const ScaleComparison bwd = compare_scales_backward(
        sp, family, bwd_theta, cfg.p, (cfg.p == 1.0 || cfg.p == kInfinity) ? cfg.lambda_class : 0.0);
    reports.push_back(bwd.report);

    reports.push_back(herz_check(sp, family, bwd_theta, 1, cfg.p));
    write_artifacts(cfg, "seminorm-compare", reports, log);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed;
    return ok ? 0 : 1;
}

int run_poisson_regularity(const ExperimentConfig& cfg, std::ostream& log) {
    const Spectrum sp(cfg.make_lattice(), cfg.make_weights());
    SpectralField f(sp.lattice());
    {
        RngStream rng(cfg.seed, 0xdecafULL);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::size_t j = f.lattice().negate(i);
            if (j <= i) continue;
            const double amp = std::pow(1.0 + sp.eigenvalue(i), -1.5);
            const Complex c = std::polar(amp, rng.uniform(0.0, 2.0 * M_PI));
            f[i] = c;
            f[j] = std::conj(c);
        }
    }
    const SpectralField u = solve_poisson(sp, f);

    std::vector<ExperimentReport> reports;
    reports.push_back(sobolev_report(sp, u, cfg.p == 1.0 || cfg.p == kInfinity ? 2.0 : cfg.p));

    TailOptions topts;
    topts.scale = cfg.scale == "Lambda" ? TailScale::Lambda
                  : cfg.scale == "Dist" ? TailScale::Dist
                                        : TailScale::Lp;
    topts.theta = cfg.theta;
    topts.order = cfg.order;
    reports.push_back(tail_convergence(sp, u, cfg.p, topts));

    LipschitzRegularityOptions lopts;
    lopts.theta = cfg.theta;
    lopts.lambda_class = cfg.lambda_class;
    reports.push_back(lipschitz_regularity_report(sp, f, cfg.p, lopts));

    write_artifacts(cfg, "poisson-regularity", reports, log);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed;
    return ok ? 0 : 1;
}

int run_mc_riesz(const ExperimentConfig& cfg, std::ostream& log) {
    const Spectrum sp(cfg.make_lattice(), cfg.make_weights());
    const std::size_t d = sp.dimension();
    std::vector<int> e1(d, 0);
    e1[0] = 1;
    const SpectralField f = single_mode(sp.lattice(), e1);
    SpectralField h(sp.lattice());
    {
        const std::size_t i = sp.lattice().encode(e1);
        h[i] = Complex(0.0, -0.5);
        h[sp.lattice().negate(i)] = Complex(0.0, 0.5);
    }

    PathConfig pc;
    pc.dt = cfg.dt;
    pc.y0 = cfg.y0;
    pc.n_paths = cfg.n_paths;
    pc.seed = cfg.seed;
    pc.keep_paths = cfg.dump_paths;
    const PairingResult pr = mc_riesz_pairing(sp, h, f, cfg.direction, pc);

    if (cfg.dump_paths) {
        namespace fs = std::filesystem;
        const fs::path dir(cfg.resolved_output_dir());
        fs::create_directories(dir);
        const fs::path path = dir / "mc-riesz_paths.tsv";
        std::ofstream out(path);
        out << "path\ttau\tcontribution\n";
        for (std::size_t i = 0; i < pr.path_tau.size(); ++i)
            out << i << '\t' << fmt(pr.path_tau[i]) << '\t' << fmt(pr.path_contributions[i])
                << '\n';
        log << "wrote " << path.string() << "\n";
    }

    const SubordinationResult sub =
        subordination_check(sp, f, 1.0, std::vector<double>(d, 0.5), pc);

    write_artifacts(cfg, "mc-riesz", {pr.report, sub.report}, log);
    log << "pairing " << fmt(pr.estimate) << " +- " << fmt(pr.se) << " vs reference "
        << fmt(pr.reference) << " (z = " << fmt(pr.z) << ")\n";
    return (pr.report.passed && sub.report.passed) ? 0 : 1;
}

int run_suite_cmd(const ExperimentConfig& cfg, std::ostream& log) {
    const SuiteResult res =
        cfg.suite_name == "quick" ? run_quick_suite(log) : run_acceptance_suite(log);
    namespace fs = std::filesystem;
    const fs::path dir(cfg.resolved_output_dir());
    fs::create_directories(dir);
    const fs::path path = dir / "suite_summary.json";
    std::ofstream(path) << res.to_json() << "\n";
    log << "wrote " << path.string() << "\n";
    return res.passed ? 0 : 1;
}

} // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();
    if (cfg.experiment == "classify") return run_classify(cfg, log);
    if (cfg.experiment == "kernel-bounds") return run_kernel_bounds(cfg, log);
    if (cfg.experiment == "riesz-bounds") return run_riesz_bounds(cfg, log);
    if (cfg.experiment == "gradient-bounds") return run_gradient_bounds(cfg, log);
    if (cfg.experiment == "seminorm") return run_seminorm(cfg, log);
    if (cfg.experiment == "seminorm-compare") return run_seminorm_compare(cfg, log);
    if (cfg.experiment == "poisson-regularity") return run_poisson_regularity(cfg, log);
    if (cfg.experiment == "mc-riesz") return run_mc_riesz(cfg, log);
    if (cfg.experiment == "suite") return run_suite_cmd(cfg, log);
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

} // namespace torusheat
