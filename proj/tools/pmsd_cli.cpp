// pmsd: command-line front end for the scheduling solvers.
//
// Exit codes: 0 success, 1 usage or input error, 2 runtime failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmsd/pmsd.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    bool verbose = false;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

struct GenerateCmd {
    int n = 8, m = 2;
    double xi = 0.5;
    std::string interval = "H1";
    pmsd::Time setup_lo = 1, setup_hi = 10;
    std::string out;
    std::string label;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("generate", "Generate a random instance");
        c->add_option("--n", n, "Number of jobs")->check(CLI::PositiveNumber);
        c->add_option("--m", m, "Number of machines")->check(CLI::PositiveNumber);
        c->add_option("--xi", xi, "Penalty scale in (0, 1]")->check(CLI::Range(0.0, 1.0));
        c->add_option("--interval", interval, "Deteriorating-date interval class")->check(CLI::IsMember({"H1", "H2", "H3"}));
        c->add_option("--setup-lo", setup_lo, "Lowest setup time")->check(CLI::PositiveNumber);
        c->add_option("--setup-hi", setup_hi, "Highest setup time")->check(CLI::PositiveNumber);
        c->add_option("--label", label, "Instance label (default derived from the configuration)");
        c->add_option("--out", out, "Output instance file (JSON); standard output if omitted");
    }

    int run(const GlobalOptions& g) const {
        pmsd::GeneratorConfig cfg;
        cfg.n = n;
        cfg.m = m;
        cfg.xi = xi;
        cfg.interval = pmsd::parse_interval_class(interval);
        cfg.setup_range = {setup_lo, setup_hi};
        cfg.seed = g.seed.value_or(0);
        pmsd::Instance inst = pmsd::generate(cfg);
        if (!label.empty()) inst.label = label;
        const std::string text = pmsd::instance_to_json(inst).dump(2) + "\n";
        if (out.empty()) {
            std::cout << text;
        } else {
            write_text(out, text);
            if (g.verbose) std::cerr << "wrote " << out << '\n';
        }
        return 0;
    }
};

struct SolveCmd {
    std::string instance;
    std::string algo = "hdcs";
    pmsd::HdcsParams params;
    std::string out;
    bool dump = false;
    bool no_timing = false;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("solve", "Run a heuristic or metaheuristic on an instance");
        c->add_option("--instance", instance, "Instance file (JSON)")->required()->check(CLI::ExistingFile);
        c->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember({"hdcs", "dcs", "vns", "mbhg"}));
        c->add_option("--pop", params.population, "Population size");
        c->add_option("--rho", params.discovery_prob, "Discovery probability rho_a");
        c->add_option("--tmax", params.t_max, "Maximum iterations");
        c->add_option("--tnip", params.t_nip, "Iterations without improvement before stopping");
        c->add_option("--out", out, "Result document (JSON)");
        c->add_flag("--dump-schedule", dump, "Print the per-machine schedule");
        c->add_flag("--no-timing", no_timing, "Write zero elapsed time so outputs are reproducible byte for byte");
    }

    int run(const GlobalOptions& g) {
        const pmsd::Instance inst = pmsd::read_instance(instance);
        params.seed = g.seed.value_or(0);
        pmsd::validate_params(params);
        pmsd::RunResult r;
        if (algo == "hdcs") r = pmsd::hdcs(inst, params);
        else if (algo == "dcs") r = pmsd::dcs(inst, params);
        else if (algo == "vns") r = pmsd::vns_baseline(inst, params);
        else r = pmsd::mbhg_run(inst);

        std::cout << "algorithm: " << r.algorithm << '\n';
        if (!r.note.empty()) std::cout << "note: " << r.note << '\n';
        std::cout << "best total tardiness: " << r.best_value << '\n';
        std::cout << "iterations: " << r.iterations << '\n';
        if (g.verbose && !no_timing) std::cout << "elapsed: " << r.elapsed_seconds << " s\n";
        if (dump) pmsd::dump_schedule(std::cout, r.schedule);
        if (!out.empty()) write_text(out, pmsd::run_result_to_json(r, params, inst, !no_timing).dump(2) + "\n");
        return 0;
    }
};

struct ExactCmd {
    std::string instance;
    double time_limit = 60.0;
    std::string out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("exact", "Solve an instance to optimality by branch and bound");
        c->add_option("--instance", instance, "Instance file (JSON)")->required()->check(CLI::ExistingFile);
        c->add_option("--time-limit", time_limit, "Time limit in seconds")->check(CLI::PositiveNumber);
        c->add_option("--out", out, "Result document (JSON)");
    }

    int run(const GlobalOptions& g) const {
        const pmsd::Instance inst = pmsd::read_instance(instance);
        const auto r = pmsd::branch_and_bound(inst, time_limit);
        std::cout << "total tardiness: " << r.schedule.total_tardiness << '\n';
        std::cout << "proven optimal: " << (r.proven_optimal ? "yes" : "no") << '\n';
        if (g.verbose) std::cout << "nodes: " << r.nodes << '\n';
        pmsd::dump_schedule(std::cout, r.schedule);
        if (!out.empty()) {
            nlohmann::ordered_json j;
            j["algorithm"] = "exact";
            j["instance"] = inst.label;
            j["best_value"] = r.schedule.total_tardiness;
            j["proven_optimal"] = r.proven_optimal;
            j["machine_sequences"] = r.schedule.machine_sequences;
            j["time_limit_s"] = time_limit;
            write_text(out, j.dump(2) + "\n");
        }
        return 0;
    }
};

struct ExportLpCmd {
    std::string instance;
    std::string out;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("export-lp", "Write the MIP model in LP format");
        c->add_option("--instance", instance, "Instance file (JSON)")->required()->check(CLI::ExistingFile);
        c->add_option("--out", out, "LP file")->required();
    }

    int run(const GlobalOptions& g) const {
        const pmsd::Instance inst = pmsd::read_instance(instance);
        pmsd::export_lp(inst, out);
        if (g.verbose) std::cerr << "wrote " << out << " (M = " << pmsd::big_m(inst) << ")\n";
        return 0;
    }
};

struct BenchCmd {
    std::string plan_path;
    std::string out_dir;
    int workers = 0;
    bool no_timing = false;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("bench", "Run an experiment plan and write RPD tables");
        c->add_option("--plan", plan_path, "Plan file (JSON)")->required()->check(CLI::ExistingFile);
        c->add_option("--out", out_dir, "Output directory")->required();
        c->add_option("--workers", workers, "Worker threads (default: PMSD_WORKERS or hardware concurrency)");
        c->add_flag("--no-timing", no_timing, "Write zero times so outputs are reproducible byte for byte");
    }

    int run(const GlobalOptions& g) const {
        std::ifstream in(plan_path);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(plan_path + ": " + e.what());
        }
        pmsd::ExperimentPlan plan = pmsd::plan_from_json(doc);
        if (g.seed) plan.master_seed = *g.seed;
        if (workers > 0) plan.workers = workers;
        plan.record_time = !no_timing;

        const auto result = pmsd::run_experiment(plan);
        fs::create_directories(out_dir);
        std::ostringstream csv, raw;
        pmsd::write_csv(csv, result.rows);
        pmsd::write_records(raw, result.records);
        write_text(fs::path(out_dir) / "results.csv", csv.str());
        write_text(fs::path(out_dir) / "runs.jsonl", raw.str());

        int infinite = 0, incomplete = 0;
        for (const auto& r : result.rows) {
            infinite += r.infinite_runs;
            incomplete += r.complete ? 0 : 1;
        }
        std::cout << "rows: " << result.rows.size() << ", runs: " << result.records.size() << '\n';
        if (infinite) std::cout << "note: " << infinite << " run(s) with zero best-known value excluded from RPD averages\n";
        if (incomplete) std::cout << "warning: " << incomplete << " row(s) incomplete (failed runs, see runs.jsonl)\n";
        print_summary(pmsd::summarize(result.rows));
        return 0;
    }

    static void print_summary(const std::vector<pmsd::SummaryRow>& s) {
        std::cout << "interval,algorithm,rpd_best,rpd_avg,rpd_worst,mean_time_s\n";
        for (const auto& r : s)
            std::cout << pmsd::to_string(r.interval) << ',' << pmsd::to_string(r.algorithm) << ','
                      << pmsd::format_fixed(r.rpd_best, 2) << ',' << pmsd::format_fixed(r.rpd_avg, 2) << ','
                      << pmsd::format_fixed(r.rpd_worst, 2) << ',' << pmsd::format_fixed(r.mean_time_s, 3) << '\n';
    }
};

struct ReportCmd {
    std::string csv;

    void add(CLI::App& app) {
        auto* c = app.add_subcommand("report", "Print per-interval averages of a results CSV");
        c->add_option("--csv", csv, "results.csv written by bench")->required()->check(CLI::ExistingFile);
    }

    int run(const GlobalOptions&) const {
        std::ifstream in(csv);
        BenchCmd::print_summary(pmsd::summarize(pmsd::read_csv(in)));
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parallel machine scheduling with step-deteriorating jobs and setup times"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Random seed (generation, solver runs, bench master seed)");
    app.add_flag("--verbose,-v", global.verbose, "Extra diagnostics");

    GenerateCmd generate;
    SolveCmd solve;
    ExactCmd exact;
    ExportLpCmd export_lp;
    BenchCmd bench;
    ReportCmd report;
    generate.add(app);
    solve.add(app);
    exact.add(app);
    export_lp.add(app);
    bench.add(app);
    report.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (app.got_subcommand("generate")) return generate.run(global);
        if (app.got_subcommand("solve")) return solve.run(global);
        if (app.got_subcommand("exact")) return exact.run(global);
        if (app.got_subcommand("export-lp")) return export_lp.run(global);
        if (app.got_subcommand("bench")) return bench.run(global);
        if (app.got_subcommand("report")) return report.run(global);
    } catch (const pmsd::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}
