// Experiment runner: config-driven sampling, equilibrium solving,
// verification against reference laws, LDP probing, and the matrix model.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "loggas/angelesco_solver.hpp"
#include "loggas/boson_model.hpp"
#include "loggas/config.hpp"
#include "loggas/errors.hpp"
#include "loggas/frank_wolfe.hpp"
#include "loggas/kernel.hpp"
#include "loggas/ldp.hpp"
#include "loggas/mcmc.hpp"
#include "loggas/metrics.hpp"
#include "loggas/oracle.hpp"
#include "loggas/reference_laws.hpp"
#include "loggas/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace loggas;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string iso_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

/// One process owns the output directory for the duration of a run.
class DirLock {
public:
    explicit DirLock(const fs::path& dir) : path_(dir / ".lock") {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (fs::exists(path_))
            throw ConfigError("output directory is locked by another run: " + path_.string());
        std::ofstream(path_) << "pid " << ::getpid() << "\n";
    }
    ~DirLock() {
        std::error_code ec;
        fs::remove(path_, ec);
    }

private:
    fs::path path_;
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write " + p.string());
    out << text;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

DiscreteMeasure reference_measure(const ExperimentConfig& cfg, double lo, double hi, int cells) {
    if (cfg.reference == "rho-infinity") {
        const AtomList atoms = discretize_density(rho_infinity, 1e-9, rho_infinity_edge(), cells);
        return DiscreteMeasure::from_atoms(atoms.atoms, atoms.masses);
    }
    if (cfg.reference == "semicircle") {
        const AtomList atoms = discretize_density(semicircle, -2.0, 2.0, cells);
        return DiscreteMeasure::from_atoms(atoms.atoms, atoms.masses);
    }
    (void)lo;
    (void)hi;
    throw ConfigError("verify.against=oracle is handled by its own code path");
}

struct StageFiles {
    std::vector<std::string> files;
    void add(const fs::path& p) { files.push_back(p.string()); }
};

int run_sample(const ExperimentConfig& cfg, const fs::path& out, RunManifest& man) {
    StageFiles stage;
    std::vector<SampleBatch> batches;
    double acc_sum = 0.0;
    for (int c = 0; c < cfg.chains; ++c) {
        ChainConfig cc = cfg.sampler;
        cc.seed = cfg.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(c) + 1ULL;
        SampleBatch batch = cfg.biorthogonal ? run_chain(*cfg.biorthogonal, cc)
                                             : run_chain(*cfg.angelesco, cc);
        acc_sum += batch.acceptance_rate;

        const fs::path chain_csv = out / ("chain_" + std::to_string(c) + ".csv");
        std::ostringstream csv;
        for (std::size_t k = 0; k < batch.configurations.size(); ++k) {
            csv << k;
            for (double x : batch.configurations[k]) csv << "," << format_double(x);
            csv << "\n";
        }
        write_text(chain_csv, csv.str());
        stage.add(chain_csv);
        batches.push_back(std::move(batch));
    }

    // pooled empirical measure over all chains
    std::vector<double> atoms;
    for (const auto& b : batches)
        for (const auto& c : b.configurations) atoms.insert(atoms.end(), c.begin(), c.end());
    DiscreteMeasure pooled = DiscreteMeasure::from_points(std::move(atoms));
    std::ostringstream ecsv;
    ecsv << "atom,mass\n";
    for (std::size_t i = 0; i < pooled.atoms.size(); ++i)
        ecsv << format_double(pooled.atoms[i]) << "," << format_double(pooled.masses[i]) << "\n";
    const fs::path emp_csv = out / "empirical.csv";
    write_text(emp_csv, ecsv.str());
    stage.add(emp_csv);

    json report;
    report["config_hash"] = config_hash(cfg);
    report["chains"] = cfg.chains;
    json accs = json::array();
    for (const auto& b : batches) accs.push_back(b.acceptance_rate);
    report["acceptance_rates"] = accs;
    const fs::path rep_json = out / "sample_report.json";
    write_text(rep_json, report.dump(2) + "\n");
    stage.add(rep_json);

    man.stage_outputs["sample"] = stage.files;
    man.headline_metrics["mean_acceptance_rate"] = acc_sum / cfg.chains;
    return 0;
}

RateReport solve_equilibrium(const ExperimentConfig& cfg, InteractionKernel* kernel_out = nullptr) {
    const EnsembleSpec& spec = *cfg.biorthogonal;
    const Interval trunc = cfg.truncation ? *cfg.truncation : suggest_truncation(spec);
    if (!(trunc.lo < trunc.hi)) throw ConfigError("equilibrium.truncate: need a < b");
    InteractionKernel kernel = assemble_kernel(spec, trunc.lo, trunc.hi, cfg.grid_size);
    RateReport rep = minimize(kernel, spec.kappa, cfg.tolerance);
    if (kernel_out) *kernel_out = std::move(kernel);
    return rep;
}

int run_equilibrium(const ExperimentConfig& cfg, const fs::path& out, RunManifest& man) {
    StageFiles stage;
    json report;
    if (cfg.biorthogonal) {
        const RateReport rep = solve_equilibrium(cfg);
        std::ostringstream csv, plot;
        csv << "node,weight,density\n";
        const auto& mu = rep.minimizer;
        const bool with_ref = cfg.reference == "rho-infinity" || cfg.reference == "semicircle";
        for (int i = 0; i < mu.size(); ++i) {
            const double dens = mu.weights[i] / mu.delta;
            csv << format_double(mu.nodes[i]) << "," << format_double(mu.weights[i]) << ","
                << format_double(dens) << "\n";
            plot << format_double(mu.nodes[i]) << " " << format_double(dens);
            if (with_ref) {
                const double ref = cfg.reference == "rho-infinity" ? rho_infinity(mu.nodes[i])
                                                                   : semicircle(mu.nodes[i]);
                plot << " " << format_double(ref);
            }
            plot << "\n";
        }
        const fs::path mcsv = out / "minimizer.csv";
        const fs::path pdat = out / "equilibrium_plot.dat";
        write_text(mcsv, csv.str());
        write_text(pdat, plot.str());
        stage.add(mcsv);
        stage.add(pdat);
        report["energy_value"] = rep.energy_value;
        report["c_constant"] = rep.c_constant;
        report["iterations"] = rep.iterations;
        report["final_duality_gap"] = rep.final_duality_gap;
        man.headline_metrics["c_constant"] = rep.c_constant;
    } else {
        const AngelescoSpec& spec = *cfg.angelesco;
        std::vector<GridMeasure> grids;
        for (const auto& sp : spec.species)
            grids.push_back(GridMeasure::uniform(sp.interval.lo, sp.interval.hi, cfg.grid_size));
        const AngelescoRateReport rep = minimize_angelesco(spec, grids, cfg.tolerance);
        for (std::size_t jx = 0; jx < rep.minimizers.size(); ++jx) {
            std::ostringstream csv;
            csv << "node,weight,density\n";
            const auto& mu = rep.minimizers[jx];
            for (int i = 0; i < mu.size(); ++i)
                csv << format_double(mu.nodes[i]) << "," << format_double(mu.weights[i]) << ","
                    << format_double(mu.weights[i] / mu.delta) << "\n";
            const fs::path mcsv = out / ("minimizer_species_" + std::to_string(jx) + ".csv");
            write_text(mcsv, csv.str());
            stage.add(mcsv);
        }
        report["energy_value"] = rep.energy_value;
        report["c_constant"] = rep.c_constant;
        report["cycles"] = rep.cycles;
        man.headline_metrics["c_constant"] = rep.c_constant;
    }
    const fs::path rj = out / "rate_report.json";
    write_text(rj, report.dump(2) + "\n");
    stage.add(rj);
    man.stage_outputs["equilibrium"] = stage.files;
    return 0;
}

int run_verify(const ExperimentConfig& cfg, const fs::path& out, RunManifest& man) {
    if (!cfg.biorthogonal) throw ConfigError("verify: requires a biorthogonal ensemble");
    StageFiles stage;
    json report;

    if (cfg.reference == "oracle") {
        const OracleResult oracle =
            quadrature_oracle(*cfg.biorthogonal, cfg.oracle_n, cfg.oracle_resolution);
        ChainConfig cc = cfg.sampler;
        cc.n = cfg.oracle_n;
        cc.seed = cfg.seed;
        const SampleBatch batch = run_chain(*cfg.biorthogonal, cc);
        const EmpiricalMeasure emp = empirical_measure(batch, true);
        double sup = 0.0;
        double cum = 0.0;
        for (double a : emp.atoms) {
            sup = std::max(sup, std::abs(cum - oracle.cdf_at(a)));
            cum += emp.atom_mass;
            sup = std::max(sup, std::abs(cum - oracle.cdf_at(a)));
        }
        report["metric"] = "cdf-sup";
        report["value"] = sup;
        report["passed"] = sup <= cfg.threshold;
        man.headline_metrics["cdf_sup_distance"] = sup;
    } else {
        ChainConfig cc = cfg.sampler;
        cc.seed = cfg.seed;
        const SampleBatch batch = run_chain(*cfg.biorthogonal, cc);
        const EmpiricalMeasure emp = empirical_measure(batch, true);
        const DiscreteMeasure ref = reference_measure(cfg, 0.0, 0.0, 2000);
        MeasurePair pair(emp.discrete(), ref);
        double value;
        if (cfg.metric == "w1") {
            value = wasserstein1(pair);
            report["metric"] = "w1";
        } else {
            const BoundedLipschitzEstimate est = bounded_lipschitz(pair, 64);
            value = est.lower;
            report["metric"] = "bl";
            report["upper"] = est.upper;
        }
        report["value"] = value;
        report["passed"] = value <= cfg.threshold;
        man.headline_metrics[cfg.metric] = value;
    }
    report["against"] = cfg.reference;
    report["threshold"] = cfg.threshold;
    const fs::path rj = out / "verify_report.json";
    write_text(rj, report.dump(2) + "\n");
    stage.add(rj);
    man.stage_outputs["verify"] = stage.files;
    std::cout << "verify against " << cfg.reference << ": " << report["metric"].get<std::string>()
              << " = " << report["value"].get<double>() << " (threshold " << cfg.threshold << ", "
              << (report["passed"].get<bool>() ? "within" : "EXCEEDED") << ")\n";
    return 0;
}

std::function<double(double)> event_function(const std::string& name) {
    if (name == "x") return [](double x) { return x; };
    if (name == "x2" || name == "x^2") return [](double x) { return x * x; };
    if (name == "abs" || name == "|x|") return [](double x) { return std::abs(x); };
    throw ConfigError("ldp-probe: unknown event function \"" + name + "\" (use x, x2 or abs)");
}

int run_ldp_probe(const ExperimentConfig& cfg, const fs::path& out, RunManifest& man,
                  const std::string& event_arg, int n_max) {
    if (!cfg.biorthogonal) throw ConfigError("ldp-probe: requires a biorthogonal ensemble");
    const auto comma = event_arg.find(',');
    if (comma == std::string::npos) throw ConfigError("--event: expected g,t");
    const auto g = event_function(event_arg.substr(0, comma));
    const double t = std::stod(event_arg.substr(comma + 1));

    InteractionKernel kernel;
    const RateReport unconstrained = solve_equilibrium(cfg, &kernel);
    std::vector<double> gnodes(kernel.nodes.size());
    for (std::size_t i = 0; i < gnodes.size(); ++i) gnodes[i] = g(kernel.nodes[i]);
    const RateReport constrained = constrained_minimize(kernel, cfg.biorthogonal->kappa, gnodes, t,
                                                        cfg.tolerance);
    const double rate = constrained.energy_value - unconstrained.energy_value;

    const LdpProbeReport rep =
        ldp_probe(*cfg.biorthogonal, g, t, n_max, rate, cfg.oracle_resolution);

    json j;
    j["constrained_rate"] = rep.constrained_rate;
    j["bound_line"] = rep.bound_line;
    j["monotone_toward_limit"] = rep.monotone_toward_limit;
    j["flags"] = rep.flags;
    j["points"] = json::array();
    std::cout << "  n   Q_n(A)          exponent        (rate " << rate << ", bound line "
              << rep.bound_line << ")\n";
    for (const auto& pt : rep.points) {
        json p;
        p["n"] = pt.n;
        p["event_probability"] = pt.event_probability;
        p["exponent"] = std::isfinite(pt.exponent) ? json(pt.exponent) : json("inf");
        p["below_bound_line"] = pt.below_bound_line;
        j["points"].push_back(p);
        std::printf("  %d   %-15.6e %-15.6g %s\n", pt.n, pt.event_probability, pt.exponent,
                    pt.below_bound_line ? "[below bound line]" : "");
    }
    const fs::path rj = out / "ldp_probe.json";
    write_text(rj, j.dump(2) + "\n");
    man.stage_outputs["ldp-probe"] = {rj.string()};
    man.headline_metrics["constrained_rate"] = rate;
    return 0;
}

int run_boson(const ExperimentConfig& cfg, const fs::path& out, RunManifest& man) {
    const double scale =
        cfg.boson_frequency_scale > 0.0 ? cfg.boson_frequency_scale : kBosonFrequencyScale;
    const auto t0 = std::chrono::steady_clock::now();
    const BosonBatch batch =
        sample_boson_batch(cfg.boson_n, cfg.boson_alpha, cfg.boson_draws, cfg.seed, scale);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream csv;
    for (const auto& d : batch.draws) {
        csv << d.seed << "," << d.n << "," << d.alpha;
        for (double f : d.frequencies) csv << "," << format_double(f);
        csv << "\n";
    }
    const fs::path fcsv = out / "frequencies.csv";
    write_text(fcsv, csv.str());

    json j;
    j["n"] = cfg.boson_n;
    j["alpha"] = cfg.boson_alpha;
    j["draws"] = cfg.boson_draws;
    j["frequency_scale"] = scale;
    j["seed"] = cfg.seed;
    j["wall_seconds"] = wall;
    const fs::path mj = out / "boson_manifest.json";
    write_text(mj, j.dump(2) + "\n");

    man.stage_outputs["boson-matrix"] = {fcsv.string(), mj.string()};
    man.headline_metrics["boson_wall_seconds"] = wall;
    return 0;
}

int run_oracle(const ExperimentConfig& cfg, const fs::path& out, RunManifest& man) {
    if (!cfg.biorthogonal) throw ConfigError("oracle: requires a biorthogonal ensemble");
    const OracleResult res =
        quadrature_oracle(*cfg.biorthogonal, cfg.oracle_n, cfg.oracle_resolution);
    json j;
    j["n"] = res.n;
    j["particle_count"] = res.particle_count;
    j["z"] = res.z;
    j["log_z"] = res.log_z;
    j["error_estimate"] = res.error_estimate;
    j["truncation"] = {res.truncation.lo, res.truncation.hi};
    const fs::path rj = out / "oracle.json";
    write_text(rj, j.dump(2) + "\n");

    std::ostringstream csv;
    csv << "x,cdf\n";
    for (std::size_t i = 0; i < res.cdf_abscissae.size(); ++i)
        csv << format_double(res.cdf_abscissae[i]) << "," << format_double(res.cdf_values[i])
            << "\n";
    const fs::path cdf = out / "oracle_cdf.csv";
    write_text(cdf, csv.str());

    man.stage_outputs["oracle"] = {rj.string(), cdf.string()};
    man.headline_metrics["log_z"] = res.log_z;
    std::cout << "Z_" << res.n << " = " << res.z << " (error estimate " << res.error_estimate
              << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biorthogonal / multi-species log-gas laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed_override = 0;
    bool have_seed = false;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "experiment config (JSON)")->required();
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--seed", seed_override, "seed (overrides config)")
        ->each([&](const std::string&) { have_seed = true; });
    app.add_option("--set", overrides, "config override key=value (repeatable)");

    auto* sc_sample = app.add_subcommand("sample", "run MCMC chains");
    auto* sc_eq = app.add_subcommand("equilibrium", "minimize the rate functional");
    auto* sc_verify = app.add_subcommand("verify", "compare samples with a reference law");
    std::string against, metric;
    sc_verify->add_option("--against", against, "rho-infinity | semicircle | oracle");
    sc_verify->add_option("--metric", metric, "w1 | bl");
    auto* sc_ldp = app.add_subcommand("ldp-probe", "finite-size exponents vs constrained rate");
    std::string event_arg = "x,1.0";
    std::string n_list = "1,2,3";
    sc_ldp->add_option("--event", event_arg, "g,t with g in {x, x2, abs}");
    sc_ldp->add_option("--n", n_list, "largest n of the sweep, e.g. 1,2,3");
    auto* sc_boson = app.add_subcommand("boson-matrix", "matrix-model frequency draws");
    auto* sc_oracle = app.add_subcommand("oracle", "brute-force quadrature at n <= 3");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = load_config_file(config_path);
        for (const auto& kv : overrides) apply_override(cfg, kv);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (have_seed) {
            cfg.seed = seed_override;
            cfg.sampler.seed = seed_override;
        }
        if (!against.empty()) cfg.reference = against;
        if (!metric.empty()) cfg.metric = metric;
        cfg.validate();

        const fs::path out(cfg.output_dir);
        DirLock lock(out);

        RunManifest man;
        man.config_hash = config_hash(cfg);
        man.tool_version = kToolVersion;
        man.started_at = iso_now();

        int rc = 0;
        if (sc_sample->parsed()) rc = run_sample(cfg, out, man);
        else if (sc_eq->parsed()) rc = run_equilibrium(cfg, out, man);
        else if (sc_verify->parsed()) rc = run_verify(cfg, out, man);
        else if (sc_ldp->parsed()) {
            int n_max = 3;
            const auto last_comma = n_list.find_last_of(',');
            n_max = std::stoi(last_comma == std::string::npos ? n_list
                                                              : n_list.substr(last_comma + 1));
            rc = run_ldp_probe(cfg, out, man, event_arg, n_max);
        } else if (sc_boson->parsed()) rc = run_boson(cfg, out, man);
        else if (sc_oracle->parsed()) rc = run_oracle(cfg, out, man);

        man.finished_at = iso_now();
        write_manifest(man, (out / "manifest.json").string());
        return rc;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
