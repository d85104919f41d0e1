#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "loggas/config.hpp"
#include "loggas/errors.hpp"

using namespace loggas;
namespace fs = std::filesystem;

namespace {

const char* kBaseConfig = R"json({
  "biorthogonal": {
    "theta": 2,
    "kappa": 1.0,
    "weight": {"family": "power-exp", "alpha": 0.0, "tau": 1.0},
    "support": [0.0, null]
  },
  "sampler": {"n": 8, "sweeps": 500, "burn_in": 100, "thinning": 5},
  "equilibrium": {"grid": 100, "tolerance": 1e-6},
  "verify": {"against": "rho-infinity", "metric": "w1", "threshold": 0.05},
  "seed": 11
})json";

fs::path fresh_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("loggas_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(LOGGAS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string cli_config() {
    return R"json({
  "biorthogonal": {
    "theta": 1,
    "kappa": 1.0,
    "weight": {"family": "jacobi-power", "alpha": 0.0, "beta": 0.0},
    "support": [0.0, 1.0]
  },
  "sampler": {"n": 4, "sweeps": 200, "burn_in": 50, "thinning": 5},
  "equilibrium": {"grid": 60, "tolerance": 1e-6},
  "verify": {"against": "oracle", "metric": "w1", "threshold": 0.05},
  "oracle": {"n": 2, "resolution": 64},
  "boson": {"n": 4, "alpha": 0, "draws": 3},
  "seed": 7
})json";
}

}  // namespace

TEST_CASE("serialize(parse(s)) is a fixed point") {
    const ExperimentConfig cfg = parse_config(kBaseConfig);
    const std::string once = serialize_config(cfg);
    const std::string twice = serialize_config(parse_config(once));
    CHECK(once == twice);
    CHECK(cfg.biorthogonal.has_value());
    CHECK(cfg.biorthogonal->theta == 2);
    CHECK(cfg.biorthogonal->support.hi == kPosInf);  // null round-trips to infinity
    CHECK(cfg.sampler.sweeps == 500);
    CHECK(cfg.sampler.seed == 11);  // chain seed follows the experiment seed
}

TEST_CASE("config validation rejects inconsistent experiments") {
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("{}"), ConfigError);  // no ensemble section
    // both ensembles at once
    nlohmann::json both = nlohmann::json::parse(kBaseConfig);
    both["angelesco"] = {{"species",
                          {{{"interval", {0.0, 1.0}},
                            {"ratio", 1.0},
                            {"potential", {{"family", "gauss-power"}, {"alpha", 0.0}}}}}}};
    CHECK_THROWS_AS(parse_config(both.dump()), ConfigError);
    // rho-infinity reference needs theta = 2 with a power-exp weight
    nlohmann::json wrong_theta = nlohmann::json::parse(kBaseConfig);
    wrong_theta["biorthogonal"]["theta"] = 1;
    CHECK_THROWS_AS(parse_config(wrong_theta.dump()), ConfigError);
    // unknown schema version
    nlohmann::json vers = nlohmann::json::parse(kBaseConfig);
    vers["schema_version"] = 99;
    CHECK_THROWS_AS(parse_config(vers.dump()), ConfigError);
    // unknown weight family
    nlohmann::json fam = nlohmann::json::parse(kBaseConfig);
    fam["biorthogonal"]["weight"]["family"] = "cubic";
    CHECK_THROWS_AS(parse_config(fam.dump()), ConfigError);
}

TEST_CASE("dotted-key overrides") {
    ExperimentConfig cfg = parse_config(kBaseConfig);
    apply_override(cfg, "sampler.sweeps=5000");
    CHECK(cfg.sampler.sweeps == 5000);
    apply_override(cfg, "equilibrium.grid=222");
    CHECK(cfg.grid_size == 222);
    apply_override(cfg, "verify.metric=bl");
    CHECK(cfg.metric == "bl");
    apply_override(cfg, "seed=99");
    CHECK(cfg.seed == 99);
    CHECK(cfg.sampler.seed == 99);
    apply_override(cfg, "equilibrium.truncate=[0.001,8.0]");
    REQUIRE(cfg.truncation.has_value());
    CHECK(cfg.truncation->hi == doctest::Approx(8.0));
    // an override producing an invalid config is rejected with the usual message
    CHECK_THROWS_AS(apply_override(cfg, "sampler.sweeps=-3"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "no-equals-sign"), ConfigError);
}

TEST_CASE("config hash is stable and sensitive") {
    const ExperimentConfig a = parse_config(kBaseConfig);
    ExperimentConfig b = parse_config(kBaseConfig);
    CHECK(config_hash(a) == config_hash(b));
    apply_override(b, "sampler.sweeps=501");
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("manifest refuses to list missing files") {
    const fs::path dir = fresh_dir("manifest");
    RunManifest m;
    m.config_hash = "abc";
    m.tool_version = "test";
    m.started_at = m.finished_at = "2000-01-01T00:00:00Z";
    m.stage_outputs["stage"] = {(dir / "missing.csv").string()};
    CHECK_THROWS_AS(write_manifest(m, (dir / "manifest.json").string()), ContractError);

    std::ofstream(dir / "missing.csv") << "now it exists\n";
    CHECK_NOTHROW(write_manifest(m, (dir / "manifest.json").string()));
    CHECK(fs::exists(dir / "manifest.json"));
    const std::string text = serialize_manifest(m);
    CHECK(text.find("\"config_hash\"") != std::string::npos);
}

TEST_CASE("cli end-to-end") {
    const fs::path dir = fresh_dir("cli");
    const fs::path cfg_path = dir / "experiment.json";
    std::ofstream(cfg_path) << cli_config();
    const std::string cfg_arg = "--config " + cfg_path.string();

    SUBCASE("oracle run writes its outputs and the manifest") {
        const fs::path out = dir / "out_oracle";
        CHECK(run_cli(cfg_arg + " --out " + out.string() + " oracle") == 0);
        CHECK(fs::exists(out / "oracle.json"));
        CHECK(fs::exists(out / "oracle_cdf.csv"));
        CHECK(fs::exists(out / "manifest.json"));
        CHECK_FALSE(fs::exists(out / ".lock"));  // lock released

        std::ifstream in(out / "oracle.json");
        nlohmann::json j;
        in >> j;
        CHECK(j["particle_count"].get<int>() == 2);
        CHECK(j["z"].get<double>() == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
    }

    SUBCASE("equilibrium and sample runs succeed") {
        const fs::path out = dir / "out_eq";
        CHECK(run_cli(cfg_arg + " --out " + out.string() + " equilibrium") == 0);
        CHECK(fs::exists(out / "minimizer.csv"));
        CHECK(fs::exists(out / "rate_report.json"));
        const fs::path out2 = dir / "out_sample";
        CHECK(run_cli(cfg_arg + " --out " + out2.string() + " --seed 5 sample") == 0);
        CHECK(fs::exists(out2 / "chain_0.csv"));
        CHECK(fs::exists(out2 / "empirical.csv"));
    }

    SUBCASE("verify exits 0 and records the verdict in the report") {
        const fs::path out = dir / "out_verify";
        CHECK(run_cli(cfg_arg + " --out " + out.string() + " verify --against oracle") == 0);
        std::ifstream in(out / "verify_report.json");
        nlohmann::json j;
        in >> j;
        CHECK(j.contains("passed"));
        CHECK(j["value"].get<double>() >= 0.0);
        CHECK(j["against"].get<std::string>() == "oracle");
    }

    SUBCASE("boson-matrix run") {
        const fs::path out = dir / "out_boson";
        CHECK(run_cli(cfg_arg + " --out " + out.string() + " boson-matrix") == 0);
        CHECK(fs::exists(out / "frequencies.csv"));
        CHECK(fs::exists(out / "boson_manifest.json"));
    }

    SUBCASE("invalid override is a config error (exit 2)") {
        const fs::path out = dir / "out_bad";
        CHECK(run_cli(cfg_arg + " --out " + out.string() +
                      " --set 'equilibrium.truncate=[2.0,1.0]' equilibrium") == 2);
    }

    SUBCASE("a held lock makes a second run fail with a config error") {
        const fs::path out = dir / "out_locked";
        fs::create_directories(out);
        std::ofstream(out / ".lock") << "pid 0\n";
        CHECK(run_cli(cfg_arg + " --out " + out.string() + " oracle") == 2);
    }

    SUBCASE("missing required --config is a usage error") {
        CHECK(run_cli("oracle") != 0);
    }
}
