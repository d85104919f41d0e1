#include "loggas/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "loggas/errors.hpp"

namespace loggas {

using nlohmann::json;

namespace {

json weight_to_json(const WeightFamily& w) {
    json j;
    if (const auto* pe = std::get_if<PowerExp>(&w)) {
        j["family"] = "power-exp";
        j["alpha"] = pe->alpha;
        j["tau"] = pe->tau;
    } else if (const auto* gp = std::get_if<GaussPower>(&w)) {
        j["family"] = "gauss-power";
        j["alpha"] = gp->alpha;
    } else if (const auto* jp = std::get_if<JacobiPower>(&w)) {
        j["family"] = "jacobi-power";
        j["alpha"] = jp->alpha;
        j["beta"] = jp->beta;
    } else if (const auto* ls = std::get_if<LogSquare>(&w)) {
        j["family"] = "log-square";
        j["c"] = ls->c;
    } else {
        const auto& tp = std::get<TablePotential>(w);
        j["family"] = "table";
        j["nodes"] = tp.nodes;
        j["values"] = tp.values;
    }
    return j;
}

WeightFamily weight_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError(where + ": weight must be an object with a \"family\" field");
    const std::string fam = j.at("family").get<std::string>();
    try {
        if (fam == "power-exp")
            return PowerExp{j.value("alpha", 0.0), j.value("tau", 1.0)};
        if (fam == "gauss-power") return GaussPower{j.value("alpha", 0.0)};
        if (fam == "jacobi-power")
            return JacobiPower{j.value("alpha", 0.0), j.value("beta", 0.0)};
        if (fam == "log-square") return LogSquare{j.value("c", 1.0)};
        if (fam == "table")
            return TablePotential{j.at("nodes").get<std::vector<double>>(),
                                  j.at("values").get<std::vector<double>>()};
    } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ": unknown weight family \"" + fam + "\"");
}

json interval_to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

Interval interval_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigError(where + ": interval must be a [lo, hi] array");
    Interval iv;
    // null encodes an infinite endpoint
    iv.lo = j[0].is_null() ? kNegInf : j[0].get<double>();
    iv.hi = j[1].is_null() ? kPosInf : j[1].get<double>();
    return iv;
}

template <typename T>
T get_field(const json& j, const std::string& key, T fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (schema_version != 1) throw ConfigError("schema_version: only version 1 is supported");
    if (biorthogonal.has_value() == angelesco.has_value())
        throw ConfigError("ensemble: exactly one of \"biorthogonal\"/\"angelesco\" required");
    if (biorthogonal) biorthogonal->validate();
    if (angelesco) angelesco->validate();
    sampler.validate();
    if (chains < 1) throw ConfigError("sampler.chains: must be positive");
    if (grid_size < 2) throw ConfigError("equilibrium.grid: must be >= 2");
    if (truncation && !(truncation->lo < truncation->hi))
        throw ConfigError("equilibrium.truncate: need a < b");
    if (!(tolerance > 0.0)) throw ConfigError("equilibrium.tolerance: must be > 0");
    if (reference != "rho-infinity" && reference != "semicircle" && reference != "oracle")
        throw ConfigError("verify.against: must be rho-infinity, semicircle or oracle");
    if (metric != "w1" && metric != "bl") throw ConfigError("verify.metric: must be w1 or bl");
    if (!(threshold > 0.0)) throw ConfigError("verify.threshold: must be > 0");
    if (reference == "rho-infinity") {
        if (!biorthogonal || biorthogonal->theta != 2 ||
            !std::holds_alternative<PowerExp>(biorthogonal->weight))
            throw ConfigError(
                "verify.against=rho-infinity requires a biorthogonal theta=2 power-exp ensemble");
    }
    if (reference == "semicircle") {
        if (!biorthogonal || biorthogonal->theta != 1)
            throw ConfigError("verify.against=semicircle requires a biorthogonal theta=1 ensemble");
    }
    if (boson_n < 1 || boson_alpha < 0 || boson_draws < 1)
        throw ConfigError("boson: need n >= 1, alpha >= 0, draws >= 1");
    if (boson_frequency_scale < 0.0)
        throw ConfigError("boson.frequency_scale: must be >= 0 (0 = library default)");
    if (oracle_n < 1 || oracle_n > 3) throw ConfigError("oracle.n: must be 1..3");
    if (oracle_resolution < 32) throw ConfigError("oracle.resolution: must be >= 32");
    if (output_dir.empty()) throw ConfigError("output_dir: must be nonempty");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.schema_version = get_field(j, "schema_version", 1, "config");

    if (j.contains("biorthogonal")) {
        const json& b = j.at("biorthogonal");
        EnsembleSpec spec;
        spec.theta = get_field(b, "theta", 1, "biorthogonal");
        spec.kappa = get_field(b, "kappa", 1.0, "biorthogonal");
        spec.weight = b.contains("weight") ? weight_from_json(b.at("weight"), "biorthogonal.weight")
                                           : WeightFamily{PowerExp{}};
        if (b.contains("support")) {
            spec.support = interval_from_json(b.at("support"), "biorthogonal.support");
        } else {
            spec = EnsembleSpec::make(spec.theta, spec.kappa, spec.weight);
        }
        cfg.biorthogonal = spec;
    }
    if (j.contains("angelesco")) {
        const json& a = j.at("angelesco");
        if (!a.contains("species") || !a.at("species").is_array())
            throw ConfigError("angelesco.species: array required");
        AngelescoSpec spec;
        int idx = 0;
        for (const json& s : a.at("species")) {
            const std::string where = "angelesco.species[" + std::to_string(idx++) + "]";
            AngelescoSpec::Species sp;
            if (!s.contains("interval")) throw ConfigError(where + ".interval: required");
            sp.interval = interval_from_json(s.at("interval"), where + ".interval");
            sp.ratio = get_field(s, "ratio", 0.0, where);
            if (!s.contains("potential")) throw ConfigError(where + ".potential: required");
            sp.potential = weight_from_json(s.at("potential"), where + ".potential");
            spec.species.push_back(std::move(sp));
        }
        cfg.angelesco = spec;
    }

    if (j.contains("sampler")) {
        const json& s = j.at("sampler");
        cfg.sampler.n = get_field(s, "n", cfg.sampler.n, "sampler");
        cfg.sampler.sweeps = get_field(s, "sweeps", cfg.sampler.sweeps, "sampler");
        cfg.sampler.burn_in = get_field(s, "burn_in", cfg.sampler.burn_in, "sampler");
        cfg.sampler.thinning = get_field(s, "thinning", cfg.sampler.thinning, "sampler");
        cfg.sampler.step_size = get_field(s, "step_size", cfg.sampler.step_size, "sampler");
        cfg.sampler.adapt = get_field(s, "adapt", cfg.sampler.adapt, "sampler");
        cfg.chains = get_field(s, "chains", cfg.chains, "sampler");
    }
    if (j.contains("equilibrium")) {
        const json& e = j.at("equilibrium");
        cfg.grid_size = get_field(e, "grid", cfg.grid_size, "equilibrium");
        if (e.contains("truncate"))
            cfg.truncation = interval_from_json(e.at("truncate"), "equilibrium.truncate");
        cfg.tolerance = get_field(e, "tolerance", cfg.tolerance, "equilibrium");
    }
    if (j.contains("verify")) {
        const json& v = j.at("verify");
        cfg.reference = get_field<std::string>(v, "against", cfg.reference, "verify");
        cfg.metric = get_field<std::string>(v, "metric", cfg.metric, "verify");
        cfg.threshold = get_field(v, "threshold", cfg.threshold, "verify");
    }
    if (j.contains("boson")) {
        const json& b = j.at("boson");
        cfg.boson_n = get_field(b, "n", cfg.boson_n, "boson");
        cfg.boson_alpha = get_field(b, "alpha", cfg.boson_alpha, "boson");
        cfg.boson_draws = get_field(b, "draws", cfg.boson_draws, "boson");
        cfg.boson_frequency_scale =
            get_field(b, "frequency_scale", cfg.boson_frequency_scale, "boson");
    }
    if (j.contains("oracle")) {
        const json& o = j.at("oracle");
        cfg.oracle_n = get_field(o, "n", cfg.oracle_n, "oracle");
        cfg.oracle_resolution = get_field(o, "resolution", cfg.oracle_resolution, "oracle");
    }
    cfg.output_dir = get_field<std::string>(j, "output_dir", cfg.output_dir, "config");
    cfg.seed = get_field<std::uint64_t>(j, "seed", cfg.seed, "config");
    cfg.sampler.seed = cfg.seed;
    cfg.validate();
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json j;
    j["schema_version"] = cfg.schema_version;
    if (cfg.biorthogonal) {
        json b;
        b["theta"] = cfg.biorthogonal->theta;
        b["kappa"] = cfg.biorthogonal->kappa;
        b["weight"] = weight_to_json(cfg.biorthogonal->weight);
        json sup = json::array();
        sup.push_back(cfg.biorthogonal->support.lo == kNegInf
                          ? json(nullptr)
                          : json(cfg.biorthogonal->support.lo));
        sup.push_back(cfg.biorthogonal->support.hi == kPosInf
                          ? json(nullptr)
                          : json(cfg.biorthogonal->support.hi));
        b["support"] = sup;
        j["biorthogonal"] = b;
    }
    if (cfg.angelesco) {
        json a;
        a["species"] = json::array();
        for (const auto& sp : cfg.angelesco->species) {
            json s;
            s["interval"] = interval_to_json(sp.interval);
            s["ratio"] = sp.ratio;
            s["potential"] = weight_to_json(sp.potential);
            a["species"].push_back(s);
        }
        j["angelesco"] = a;
    }
    j["sampler"] = {{"n", cfg.sampler.n},
                    {"sweeps", cfg.sampler.sweeps},
                    {"burn_in", cfg.sampler.burn_in},
                    {"thinning", cfg.sampler.thinning},
                    {"step_size", cfg.sampler.step_size},
                    {"adapt", cfg.sampler.adapt},
                    {"chains", cfg.chains}};
    json e;
    e["grid"] = cfg.grid_size;
    if (cfg.truncation) e["truncate"] = interval_to_json(*cfg.truncation);
    e["tolerance"] = cfg.tolerance;
    j["equilibrium"] = e;
    j["verify"] = {{"against", cfg.reference}, {"metric", cfg.metric}, {"threshold", cfg.threshold}};
    j["boson"] = {{"n", cfg.boson_n},
                  {"alpha", cfg.boson_alpha},
                  {"draws", cfg.boson_draws},
                  {"frequency_scale", cfg.boson_frequency_scale}};
    j["oracle"] = {{"n", cfg.oracle_n}, {"resolution", cfg.oracle_resolution}};
    j["output_dir"] = cfg.output_dir;
    j["seed"] = cfg.seed;
    return j.dump(2) + "\n";
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set: expected key=value, got \"" + kv + "\"");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    // route through JSON so the override grammar matches the config schema
    json j = json::parse(serialize_config(cfg));
    json* node = &j;
    std::string rest = key;
    std::size_t dot;
    while ((dot = rest.find('.')) != std::string::npos) {
        node = &(*node)[rest.substr(0, dot)];
        rest = rest.substr(dot + 1);
    }
    json parsed_value;
    try {
        parsed_value = json::parse(value);
    } catch (const json::exception&) {
        parsed_value = value;  // bare strings allowed unquoted
    }
    (*node)[rest] = parsed_value;
    cfg = parse_config(j.dump());
}

std::string config_hash(const ExperimentConfig& cfg) {
    const std::string s = serialize_config(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string serialize_manifest(const RunManifest& m) {
    json j;
    j["config_hash"] = m.config_hash;
    j["tool_version"] = m.tool_version;
    j["started_at"] = m.started_at;
    j["finished_at"] = m.finished_at;
    j["stage_outputs"] = m.stage_outputs;
    j["headline_metrics"] = m.headline_metrics;
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& path) {
    for (const auto& [stage, files] : m.stage_outputs)
        for (const auto& f : files)
            if (!std::filesystem::exists(f))
                throw ContractError("manifest: missing listed file " + f + " (stage " + stage + ")");
    std::ofstream out(path);
    if (!out) throw ConfigError("manifest: cannot write " + path);
    out << serialize_manifest(m);
}

}  // namespace loggas
