#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "torusheat/config.hpp"

using namespace torusheat;

namespace {

std::string temp_dir(const char* tag) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / (std::string("torusheat_test_") + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// reports section only: the timestamp field is allowed to differ
std::string reports_section(const std::string& json) {
    const auto pos = json.find("\"reports\"");
    REQUIRE(pos != std::string::npos);
    return json.substr(pos);
}

} // namespace

TEST_CASE("config parses, validates, and rejects unknown keys") {
    const char* good = R"({
        "schema_version": 1,
        "experiment": "classify",
        "weights": {"kind": "power", "lambda": 0.5, "d": 4},
        "lattice": {"b1": 6},
        "params": {"t_min": 1e-6, "t_max": 1.0, "t_points": 60},
        "output_dir": "unused"
    })";
    const ExperimentConfig cfg = ExperimentConfig::from_json(good);
    CHECK(cfg.experiment == "classify");
    CHECK(cfg.weight_lambda == 0.5);
    CHECK(cfg.dimension == 4);
    CHECK(cfg.make_weights().weight(2) == doctest::Approx(4.0));

    CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"experiment":"classify","typo":1})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"experiment":"nope"})"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(R"({"schema_version":2,"experiment":"classify"})"),
                    ConfigError);
    CHECK_THROWS_AS(
        ExperimentConfig::from_json(
            R"({"experiment":"classify","params":{"mystery":1}})"),
        ConfigError);
    CHECK_THROWS_AS(
        ExperimentConfig::from_json(
            R"({"experiment":"suite","params":{"name":"unknown"}})"),
        ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json("not json"), ConfigError);
}

TEST_CASE("classify experiment writes its artifacts and exits zero") {
    ExperimentConfig cfg;
    cfg.experiment = "classify";
    cfg.weight_kind = "geometric";
    cfg.weight_sigma = 1.0;
    cfg.dimension = 4;
    cfg.t_points = 60;
    cfg.output_dir = temp_dir("classify");
    std::ostringstream log;
    CHECK(run_experiment(cfg, log) == 0);
    namespace fs = std::filesystem;
    CHECK(fs::exists(fs::path(cfg.output_dir) / "classify_report.json"));
    CHECK(fs::exists(fs::path(cfg.output_dir) / "classify_ck_classification.tsv"));

    const std::string json = slurp((fs::path(cfg.output_dir) / "classify_report.json").string());
    CHECK(json.find("\"config\"") != std::string::npos);
    CHECK(json.find("geometric") != std::string::npos);
}

TEST_CASE("identical configs produce identical reports modulo the timestamp") {
    ExperimentConfig cfg;
    cfg.experiment = "mc-riesz";
    cfg.weight_kind = "explicit";
    cfg.weight_values = {1.0};
    cfg.dimension = 1;
    cfg.bandwidths = {4};
    cfg.n_paths = 300;
    cfg.seed = 5;

    cfg.output_dir = temp_dir("det1");
    std::ostringstream log1;
    const int rc1 = run_experiment(cfg, log1);
    const std::string json1 =
        slurp((std::filesystem::path(cfg.output_dir) / "mc-riesz_report.json").string());

    cfg.output_dir = temp_dir("det2");
    std::ostringstream log2;
    const int rc2 = run_experiment(cfg, log2);
    const std::string json2 =
        slurp((std::filesystem::path(cfg.output_dir) / "mc-riesz_report.json").string());

    CHECK(rc1 == rc2);
    CHECK(reports_section(json1) == reports_section(json2));
}

TEST_CASE("riesz-bounds experiment passes on a small lattice") {
    ExperimentConfig cfg;
    cfg.experiment = "riesz-bounds";
    cfg.weight_kind = "explicit";
    cfg.weight_values = {1.0, 2.0};
    cfg.dimension = 2;
    cfg.bandwidths = {4, 4};
    cfg.p_list = {1.5, 2.0};
    cfg.output_dir = temp_dir("riesz");
    std::ostringstream log;
    CHECK(run_experiment(cfg, log) == 0);
    CHECK(std::filesystem::exists(std::filesystem::path(cfg.output_dir) /
                                  "riesz-bounds_best_ratios.tsv"));
}

TEST_CASE("config round-trips through its own json dump") {
    ExperimentConfig cfg;
    cfg.experiment = "seminorm";
    cfg.weight_kind = "explicit";
    cfg.weight_values = {1.0, 4.0};
    cfg.dimension = 2;
    cfg.theta = 0.7;
    cfg.output_dir = "somewhere";
    const ExperimentConfig back = ExperimentConfig::from_json(cfg.to_json());
    CHECK(back.experiment == cfg.experiment);
    CHECK(back.theta == cfg.theta);
    CHECK(back.weight_values == cfg.weight_values);
}
