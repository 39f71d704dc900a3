#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pmsd/exact.hpp"
#include "pmsd/generator.hpp"
#include "pmsd/solvers.hpp"

namespace pmsd {

/// Relative percentage deviation from the best known value. When the best
/// known value is 0, a zero result scores 0 and any positive result scores +inf.
inline double rpd(Time alg_sol, Time min_sol) {
    if (min_sol < 0) throw std::invalid_argument("rpd: min_sol must be >= 0");
    if (min_sol == 0) return alg_sol == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return 100.0 * static_cast<double>(alg_sol - min_sol) / static_cast<double>(min_sol);
}

enum class Algorithm { Hdcs, Dcs, Vns, Mbhg, Exact };

inline std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Hdcs: return "hdcs";
        case Algorithm::Dcs: return "dcs";
        case Algorithm::Vns: return "vns";
        case Algorithm::Mbhg: return "mbhg";
        case Algorithm::Exact: return "exact";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
    for (auto a : {Algorithm::Hdcs, Algorithm::Dcs, Algorithm::Vns, Algorithm::Mbhg, Algorithm::Exact})
        if (to_string(a) == s) return a;
    throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

/// Deterministic algorithms are run once per instance regardless of `runs`.
constexpr bool is_deterministic(Algorithm a) { return a == Algorithm::Mbhg || a == Algorithm::Exact; }

struct ExperimentPlan {
    std::vector<std::pair<int, int>> combos;  // (n, m)
    std::vector<IntervalClass> intervals{IntervalClass::H1, IntervalClass::H2, IntervalClass::H3};
    int replicates = 10;
    int runs = 5;
    std::vector<Algorithm> algorithms{Algorithm::Hdcs, Algorithm::Dcs, Algorithm::Vns};
    HdcsParams params{};
    std::uint64_t master_seed = 0;
    double xi = 0.5;
    std::pair<Time, Time> setup_range{1, 10};
    double exact_time_limit = 60.0;
    int workers = 1;
    bool record_time = true;  // false writes zero times so outputs are byte-reproducible
};

inline void validate_plan(const ExperimentPlan& p) {
    if (p.combos.empty()) throw std::invalid_argument("plan: no (n, m) combinations");
    if (p.intervals.empty()) throw std::invalid_argument("plan: no interval classes");
    if (p.algorithms.empty()) throw std::invalid_argument("plan: no algorithms");
    if (p.replicates < 1) throw std::invalid_argument("plan: replicates must be >= 1");
    if (p.runs < 1) throw std::invalid_argument("plan: runs must be >= 1");
    for (auto [n, m] : p.combos)
        if (n < 1 || m < 1) throw std::invalid_argument("plan: n and m must be >= 1");
    validate_params(p.params);
}

/// One execution of one algorithm on one instance.
struct RunRecord {
    int n = 0, m = 0;
    IntervalClass interval = IntervalClass::H1;
    int replicate = 0;
    Algorithm algorithm = Algorithm::Hdcs;
    int run = 0;
    std::uint64_t instance_seed = 0;
    std::uint64_t seed = 0;
    Time value = 0;
    Time min_sol = 0;
    double rpd = 0.0;
    double time_s = 0.0;
    bool ok = true;
    bool proven_optimal = false;  // exact only
    std::string error;
};

/// Per instance and algorithm: best / average / worst RPD over its runs.
struct InstanceOutcome {
    int n = 0, m = 0;
    IntervalClass interval = IntervalClass::H1;
    int replicate = 0;
    Algorithm algorithm = Algorithm::Hdcs;
    Time min_sol = 0;
    Time best_value = 0;
    double mean_value = 0.0;
    double rpd_best = 0.0, rpd_avg = 0.0, rpd_worst = 0.0;
    double mean_time_s = 0.0;
    int infinite_runs = 0;  // runs with RPD = +inf (min_sol = 0), left out of the averages
    int failed_runs = 0;
};

struct ResultRow {
    int n = 0, m = 0;
    IntervalClass interval = IntervalClass::H1;
    Algorithm algorithm = Algorithm::Hdcs;
    double rpd_best = 0.0, rpd_avg = 0.0, rpd_worst = 0.0;
    double mean_time_s = 0.0;
    int infinite_runs = 0;
    bool complete = true;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<InstanceOutcome> instances;
    std::vector<RunRecord> records;
};

inline std::uint64_t instance_seed(const ExperimentPlan& plan, std::size_t combo, IntervalClass c, int replicate) {
    return derive_seed(plan.master_seed, {combo, static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(replicate)});
}

inline std::uint64_t run_seed(const ExperimentPlan& plan, std::size_t combo, IntervalClass c, int replicate,
                              Algorithm a, int run) {
    return derive_seed(plan.master_seed, {combo, static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(replicate),
                                          100 + static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(run)});
}

/// Runs one algorithm and returns its objective value.
inline Time run_algorithm(const Instance& inst, Algorithm a, HdcsParams params, std::uint64_t seed,
                          double exact_time_limit, bool* proven_optimal = nullptr) {
    params.seed = seed;
    switch (a) {
        case Algorithm::Hdcs: return hdcs(inst, params).best_value;
        case Algorithm::Dcs: return dcs(inst, params).best_value;
        case Algorithm::Vns: return vns_baseline(inst, params).best_value;
        case Algorithm::Mbhg: return mbhg(inst).value;
        case Algorithm::Exact: {
            auto r = branch_and_bound(inst, exact_time_limit);
            if (proven_optimal) *proven_optimal = r.proven_optimal;
            return r.schedule.total_tardiness;
        }
    }
    throw std::invalid_argument("unknown algorithm");
}

/// Runs `jobs` tasks on a bounded pool; task i writes only slot i.
template <class Fn>
void parallel_for(std::size_t jobs, int workers, Fn&& fn) {
    const auto w = static_cast<std::size_t>(std::max(1, workers));
    if (w == 1 || jobs < 2) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(w, jobs); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

/// Worker count from PMSD_WORKERS, else the hardware concurrency.
inline int default_worker_count() {
    if (const char* env = std::getenv("PMSD_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

inline ExperimentResult run_experiment(const ExperimentPlan& plan) {
    validate_plan(plan);

    struct InstanceTask {
        std::size_t combo;
        IntervalClass interval;
        int replicate;
        std::uint64_t seed;
        Instance instance;
    };
    std::vector<InstanceTask> instances;
    for (std::size_t c = 0; c < plan.combos.size(); ++c)
        for (auto iv : plan.intervals)
            for (int r = 0; r < plan.replicates; ++r) {
                GeneratorConfig cfg;
                cfg.n = plan.combos[c].first;
                cfg.m = plan.combos[c].second;
                cfg.xi = plan.xi;
                cfg.interval = iv;
                cfg.setup_range = plan.setup_range;
                cfg.seed = instance_seed(plan, c, iv, r);
                instances.push_back({c, iv, r, cfg.seed, generate(cfg)});
            }

    // Canonical task order: instance, algorithm, run.
    std::vector<RunRecord> records;
    std::vector<std::size_t> owner;  // instance index of each record
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& it = instances[i];
        for (auto a : plan.algorithms) {
            const int runs = is_deterministic(a) ? 1 : plan.runs;
            for (int k = 0; k < runs; ++k) {
                RunRecord rec;
                rec.n = plan.combos[it.combo].first;
                rec.m = plan.combos[it.combo].second;
                rec.interval = it.interval;
                rec.replicate = it.replicate;
                rec.algorithm = a;
                rec.run = k;
                rec.instance_seed = it.seed;
                rec.seed = run_seed(plan, it.combo, it.interval, it.replicate, a, k);
                records.push_back(rec);
                owner.push_back(i);
            }
        }
    }

    parallel_for(records.size(), plan.workers, [&](std::size_t t) {
        RunRecord& rec = records[t];
        const auto start = std::chrono::steady_clock::now();
        try {
            bool proven = false;
            rec.value = run_algorithm(instances[owner[t]].instance, rec.algorithm, plan.params, rec.seed,
                                      plan.exact_time_limit, &proven);
            rec.proven_optimal = proven;
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.error = e.what();
        }
        if (plan.record_time)
            rec.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });

    // Min_sol per instance over every successful run of every algorithm.
    std::vector<Time> min_sol(instances.size(), std::numeric_limits<Time>::max());
    for (std::size_t t = 0; t < records.size(); ++t)
        if (records[t].ok) min_sol[owner[t]] = std::min(min_sol[owner[t]], records[t].value);
    for (std::size_t t = 0; t < records.size(); ++t) {
        auto& rec = records[t];
        rec.min_sol = min_sol[owner[t]] == std::numeric_limits<Time>::max() ? 0 : min_sol[owner[t]];
        rec.rpd = rec.ok ? rpd(rec.value, rec.min_sol) : std::numeric_limits<double>::quiet_NaN();
    }

    ExperimentResult out;
    // Per (instance, algorithm) outcomes; records are contiguous per pair.
    std::size_t t = 0;
    while (t < records.size()) {
        std::size_t e = t;
        while (e < records.size() && owner[e] == owner[t] && records[e].algorithm == records[t].algorithm) ++e;
        InstanceOutcome o;
        o.n = records[t].n;
        o.m = records[t].m;
        o.interval = records[t].interval;
        o.replicate = records[t].replicate;
        o.algorithm = records[t].algorithm;
        o.min_sol = records[t].min_sol;
        double sum_rpd = 0.0, sum_val = 0.0, sum_time = 0.0;
        int finite = 0, ok = 0;
        o.rpd_best = std::numeric_limits<double>::infinity();
        o.rpd_worst = -std::numeric_limits<double>::infinity();
        o.best_value = std::numeric_limits<Time>::max();
        for (std::size_t q = t; q < e; ++q) {
            const auto& r = records[q];
            sum_time += r.time_s;
            if (!r.ok) {
                ++o.failed_runs;
                continue;
            }
            ++ok;
            sum_val += static_cast<double>(r.value);
            o.best_value = std::min(o.best_value, r.value);
            if (std::isinf(r.rpd)) {
                ++o.infinite_runs;
                continue;
            }
            ++finite;
            sum_rpd += r.rpd;
            o.rpd_best = std::min(o.rpd_best, r.rpd);
            o.rpd_worst = std::max(o.rpd_worst, r.rpd);
        }
        o.mean_value = ok ? sum_val / ok : std::numeric_limits<double>::quiet_NaN();
        o.rpd_avg = finite ? sum_rpd / finite : std::numeric_limits<double>::quiet_NaN();
        if (!finite) o.rpd_best = o.rpd_worst = std::numeric_limits<double>::quiet_NaN();
        o.mean_time_s = sum_time / static_cast<double>(e - t);
        out.instances.push_back(o);
        t = e;
    }

    // Per (combo, interval, algorithm) rows: average over replicates.
    for (auto [n, m] : plan.combos)
        for (auto iv : plan.intervals)
            for (auto a : plan.algorithms) {
                ResultRow row;
                row.n = n;
                row.m = m;
                row.interval = iv;
                row.algorithm = a;
                double sb = 0, sa = 0, sw = 0, st = 0;
                int cnt = 0, all = 0;
                for (const auto& o : out.instances) {
                    if (o.n != n || o.m != m || o.interval != iv || o.algorithm != a) continue;
                    ++all;
                    st += o.mean_time_s;
                    row.infinite_runs += o.infinite_runs;
                    if (o.failed_runs) row.complete = false;
                    if (std::isnan(o.rpd_avg)) continue;
                    ++cnt;
                    sb += o.rpd_best;
                    sa += o.rpd_avg;
                    sw += o.rpd_worst;
                }
                if (cnt) {
                    row.rpd_best = sb / cnt;
                    row.rpd_avg = sa / cnt;
                    row.rpd_worst = sw / cnt;
                }
                row.mean_time_s = all ? st / all : 0.0;
                out.rows.push_back(row);
            }
    out.records = std::move(records);
    return out;
}

struct SummaryRow {
    IntervalClass interval = IntervalClass::H1;
    Algorithm algorithm = Algorithm::Hdcs;
    double rpd_best = 0.0, rpd_avg = 0.0, rpd_worst = 0.0;
    double mean_time_s = 0.0;
    int rows = 0;
};

/// Column means grouped by (interval, algorithm), in order of first appearance.
inline std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    std::vector<SummaryRow> out;
    for (const auto& r : rows) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const SummaryRow& s) { return s.interval == r.interval && s.algorithm == r.algorithm; });
        if (it == out.end()) {
            out.push_back({r.interval, r.algorithm});
            it = out.end() - 1;
        }
        it->rpd_best += r.rpd_best;
        it->rpd_avg += r.rpd_avg;
        it->rpd_worst += r.rpd_worst;
        it->mean_time_s += r.mean_time_s;
        ++it->rows;
    }
    for (auto& s : out) {
        s.rpd_best /= s.rows;
        s.rpd_avg /= s.rows;
        s.rpd_worst /= s.rows;
        s.mean_time_s /= s.rows;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialisation
// ---------------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "n,m,interval,algorithm,rpd_best,rpd_avg,rpd_worst,mean_time_s";

inline std::string format_fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << kCsvHeader << '\n';
    for (const auto& r : rows)
        os << r.n << ',' << r.m << ',' << to_string(r.interval) << ',' << to_string(r.algorithm) << ','
           << format_fixed(r.rpd_best, 4) << ',' << format_fixed(r.rpd_avg, 4) << ',' << format_fixed(r.rpd_worst, 4)
           << ',' << format_fixed(r.mean_time_s, 6) << '\n';
}

inline std::vector<ResultRow> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw std::runtime_error("results CSV: unexpected header");
    std::vector<ResultRow> rows;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 8) throw std::runtime_error("results CSV line " + std::to_string(lineno) + ": expected 8 fields");
        try {
            ResultRow r;
            r.n = std::stoi(f[0]);
            r.m = std::stoi(f[1]);
            r.interval = parse_interval_class(f[2]);
            r.algorithm = parse_algorithm(f[3]);
            r.rpd_best = std::stod(f[4]);
            r.rpd_avg = std::stod(f[5]);
            r.rpd_worst = std::stod(f[6]);
            r.mean_time_s = std::stod(f[7]);
            rows.push_back(r);
        } catch (const std::exception& e) {
            throw std::runtime_error("results CSV line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

inline nlohmann::ordered_json record_to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["interval"] = to_string(r.interval);
    j["replicate"] = r.replicate;
    j["algorithm"] = to_string(r.algorithm);
    j["run"] = r.run;
    j["instance_seed"] = r.instance_seed;
    j["seed"] = r.seed;
    j["ok"] = r.ok;
    if (r.ok) {
        j["value"] = r.value;
        j["min_sol"] = r.min_sol;
        if (std::isinf(r.rpd))
            j["rpd"] = "inf";
        else
            j["rpd"] = r.rpd;
    } else {
        j["error"] = r.error;
    }
    if (r.algorithm == Algorithm::Exact) j["proven_optimal"] = r.proven_optimal;
    j["time_s"] = r.time_s;
    return j;
}

/// One JSON document per line, one line per run.
inline void write_records(std::ostream& os, const std::vector<RunRecord>& records) {
    for (const auto& r : records) os << record_to_json(r).dump() << '\n';
}

inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
    ExperimentPlan p;
    try {
        for (const auto& c : j.at("combos")) p.combos.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
        if (j.contains("intervals")) {
            p.intervals.clear();
            for (const auto& s : j["intervals"]) p.intervals.push_back(parse_interval_class(s.get<std::string>()));
        }
        if (j.contains("algorithms")) {
            p.algorithms.clear();
            for (const auto& s : j["algorithms"]) p.algorithms.push_back(parse_algorithm(s.get<std::string>()));
        }
        p.replicates = j.value("replicates", p.replicates);
        p.runs = j.value("runs", p.runs);
        p.master_seed = j.value("master_seed", p.master_seed);
        p.xi = j.value("xi", p.xi);
        p.exact_time_limit = j.value("exact_time_limit", p.exact_time_limit);
        if (j.contains("setup_range")) p.setup_range = {j["setup_range"].at(0).get<Time>(), j["setup_range"].at(1).get<Time>()};
        if (j.contains("params")) {
            const auto& q = j["params"];
            p.params.population = q.value("pop", p.params.population);
            p.params.discovery_prob = q.value("rho", p.params.discovery_prob);
            p.params.t_max = q.value("tmax", p.params.t_max);
            p.params.t_nip = q.value("tnip", p.params.t_nip);
            p.params.restart_fraction = q.value("restart_fraction", p.params.restart_fraction);
        }
        p.workers = j.value("workers", 0);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("plan: ") + e.what());
    }
    if (p.workers <= 0) p.workers = default_worker_count();
    return p;
}

}  // namespace pmsd
