#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmsd/instance.hpp"
#include "pmsd/random.hpp"
#include "pmsd/schedule.hpp"

namespace pmsd {

/// Range of the deteriorating dates relative to beta = sum(a) / m.
enum class IntervalClass { H1, H2, H3 };

inline std::string_view to_string(IntervalClass c) {
    switch (c) {
        case IntervalClass::H1: return "H1";
        case IntervalClass::H2: return "H2";
        case IntervalClass::H3: return "H3";
    }
    return "?";
}

inline IntervalClass parse_interval_class(std::string_view s) {
    if (s == "H1") return IntervalClass::H1;
    if (s == "H2") return IntervalClass::H2;
    if (s == "H3") return IntervalClass::H3;
    throw std::invalid_argument("unknown interval class '" + std::string(s) + "' (expected H1, H2 or H3)");
}

struct GeneratorConfig {
    int n = 8;
    int m = 2;
    double xi = 0.5;
    IntervalClass interval = IntervalClass::H1;
    std::pair<Time, Time> setup_range{1, 10};
    std::uint64_t seed = 0;
};

/// Makespan of the ratio-ordered list schedule (jobs by a_j / b_j ascending,
/// ties by id), decoded with setups and deterioration. Due dates are not read.
inline Time cmax_bound(const Instance& inst) {
    NestVector order(static_cast<std::size_t>(inst.n()));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](JobId x, JobId y) {
        // a_x / b_x < a_y / b_y, cross-multiplied to stay in integers
        return inst.job(x).basic_time * inst.job(y).penalty < inst.job(y).basic_time * inst.job(x).penalty;
    });
    const Schedule s = decode(inst, order);
    return *std::max_element(s.completion.begin(), s.completion.end());
}

/// Closed integer range of deteriorating dates for an interval class.
inline std::pair<Time, Time> deterioration_range(IntervalClass c, double beta) {
    const Time half = std::lround(0.5 * beta);
    const Time full = std::lround(beta);
    if (half < 1) throw std::invalid_argument("instance too small: round(0.5 * beta) < 1");
    Time lo = 1, hi = full;
    switch (c) {
        case IntervalClass::H1: lo = 1; hi = half; break;
        case IntervalClass::H2: lo = half; hi = full; break;
        case IntervalClass::H3: lo = 1; hi = full; break;
    }
    lo = std::max<Time>(lo, 1);
    hi = std::max(hi, lo);
    return {lo, hi};
}

inline Instance generate(const GeneratorConfig& cfg) {
    if (cfg.n < 1 || cfg.m < 1) throw std::invalid_argument("generate: n and m must be >= 1");
    if (!(cfg.xi > 0.0 && cfg.xi <= 1.0)) throw std::invalid_argument("generate: xi must lie in (0, 1]");
    if (cfg.setup_range.first < 1 || cfg.setup_range.second < cfg.setup_range.first)
        throw std::invalid_argument("generate: setup range must satisfy 1 <= low <= high");

    Rng rng(cfg.seed);
    const auto n = static_cast<std::size_t>(cfg.n);
    Instance inst;
    inst.m = cfg.m;
    inst.label = "n" + std::to_string(cfg.n) + "_m" + std::to_string(cfg.m) + "_" +
                 std::string(to_string(cfg.interval)) + "_s" + std::to_string(cfg.seed);
    inst.jobs.resize(n);
    for (std::size_t j = 0; j < n; ++j) inst.jobs[j].id = static_cast<JobId>(j + 1);

    for (auto& j : inst.jobs) j.basic_time = rng.uniform_int(1, 100);
    const Time b_max = std::max<Time>(1, std::lround(100.0 * cfg.xi));
    for (auto& j : inst.jobs) j.penalty = rng.uniform_int(1, b_max);

    Time sum_a = 0;
    for (const auto& j : inst.jobs) sum_a += j.basic_time;
    const double beta = static_cast<double>(sum_a) / cfg.m;
    const auto [h_lo, h_hi] = deterioration_range(cfg.interval, beta);
    for (auto& j : inst.jobs) j.deteriorating_date = rng.uniform_int(h_lo, h_hi);

    inst.setup.assign(n + 1, std::vector<Time>(n, 0));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j + 1) inst.setup[i][j] = rng.uniform_int(cfg.setup_range.first, cfg.setup_range.second);

    const Time horizon = cmax_bound(inst);
    for (auto& j : inst.jobs) j.due_date = rng.uniform_int(1, horizon);
    return inst;
}

}  // namespace pmsd
