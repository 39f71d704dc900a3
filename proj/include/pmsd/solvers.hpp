#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmsd/instance.hpp"
#include "pmsd/mbhg.hpp"
#include "pmsd/operators.hpp"
#include "pmsd/random.hpp"
#include "pmsd/schedule.hpp"
#include "pmsd/vnd.hpp"

namespace pmsd {

struct HdcsParams {
    int population = 30;
    double discovery_prob = 0.8;  // rho_a; crossover fires when a U(0,1) draw exceeds it
    int t_max = 200;
    int t_nip = 50;  // stop after this many iterations without a strict improvement
    LevyParams levy{};
    double restart_fraction = 0.10;
    std::uint64_t seed = 0;
};

inline void validate_params(const HdcsParams& p) {
    if (p.population < 4) throw std::invalid_argument("population must be >= 4");
    if (!(p.discovery_prob > 0.0 && p.discovery_prob < 1.0))
        throw std::invalid_argument("discovery probability must lie in (0, 1)");
    if (p.t_max < 1) throw std::invalid_argument("t_max must be >= 1");
    if (p.t_nip < 1 || p.t_nip > p.t_max) throw std::invalid_argument("t_nip must lie in 1..t_max");
    if (!(p.levy.lambda_min > 1.0 && p.levy.lambda_min <= p.levy.lambda_max && p.levy.lambda_max <= 3.0))
        throw std::invalid_argument("lambda bounds must satisfy 1 < min <= max <= 3");
    if (!(p.restart_fraction >= 0.0 && p.restart_fraction < 1.0))
        throw std::invalid_argument("restart fraction must lie in [0, 1)");
}

struct Population {
    std::vector<Evaluated> members;
    Evaluated best;

    /// Refreshes best from the current members; true on strict improvement.
    bool update_best() {
        bool improved = false;
        for (const auto& mbr : members) {
            if (mbr.value < best.value) {
                best = mbr;
                improved = true;
            }
        }
        return improved;
    }
};

struct RunResult {
    std::string algorithm;
    NestVector best_nest;
    Time best_value = 0;
    int iterations = 0;
    std::vector<Time> history;  // best value after each iteration
    double elapsed_seconds = 0.0;
    std::uint64_t seed = 0;
    std::string note;
    Schedule schedule;  // schedule realising best_value
};

/// Number of elite members refined by local search: max(3, round(P * (1 - rho_a))).
inline int elite_count(int population, double discovery_prob) {
    const double raw = population * (1.0 - discovery_prob);
    // Nudge values such as 2.4999999999999996 that are 2.5 in exact arithmetic.
    const auto rounded = static_cast<int>(std::lround(raw + 1e-9));
    return std::max(3, rounded);
}

/// Members kept by a restart: ceil((1 - fraction) * P).
inline int restart_keep_count(int population, double restart_fraction) {
    const double keep = (1.0 - restart_fraction) * population;
    return std::clamp(static_cast<int>(std::ceil(keep - 1e-9)), 1, population);
}

inline NestVector random_nest(int n, Rng& rng) {
    NestVector x(static_cast<std::size_t>(n));
    std::iota(x.begin(), x.end(), 1);
    rng.shuffle(x);
    return x;
}

/// Member 0 is the MBHG schedule flattened to a nest (and re-decoded);
/// the rest are uniform random permutations.
template <class Objective>
Population init_population(const Instance& inst, const HdcsParams& params, Rng& rng, Objective&& objective) {
    Population pop;
    NestVector seed_nest = encode(mbhg(inst).schedule);
    const Time seed_value = objective(seed_nest);
    pop.members.push_back({std::move(seed_nest), seed_value});
    for (int i = 1; i < params.population; ++i) {
        NestVector x = random_nest(inst.n(), rng);
        const Time v = objective(x);
        pop.members.push_back({std::move(x), v});
    }
    pop.best = pop.members.front();
    pop.update_best();
    return pop;
}

inline Population init_population(const Instance& inst, const HdcsParams& params, Rng& rng) {
    return init_population(inst, params, rng, TardinessObjective{&inst});
}

/// Stable ascending sort by value; the worst members past the keep count are
/// replaced by fresh random permutations.
template <class Objective>
void restart(Population& pop, double restart_fraction, int n, Rng& rng, Objective&& objective) {
    std::stable_sort(pop.members.begin(), pop.members.end(),
                     [](const Evaluated& a, const Evaluated& b) { return a.value < b.value; });
    const auto keep = static_cast<std::size_t>(restart_keep_count(static_cast<int>(pop.members.size()), restart_fraction));
    for (std::size_t i = keep; i < pop.members.size(); ++i) {
        pop.members[i].nest = random_nest(n, rng);
        pop.members[i].value = objective(pop.members[i].nest);
    }
}

inline void restart(Population& pop, double restart_fraction, const Instance& inst, Rng& rng) {
    restart(pop, restart_fraction, inst.n(), rng, TardinessObjective{&inst});
}

/// Indices of the tau best members (value, then index).
inline std::vector<std::size_t> elite_indices(const Population& pop, int tau) {
    std::vector<std::size_t> idx(pop.members.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return pop.members[a].value < pop.members[b].value; });
    idx.resize(std::min(idx.size(), static_cast<std::size_t>(std::max(tau, 0))));
    std::sort(idx.begin(), idx.end());
    return idx;
}

namespace detail {

inline std::size_t other_index(std::size_t self, std::size_t size, Rng& rng) {
    std::size_t j = rng.index(size - 1);
    return j >= self ? j + 1 : j;
}

template <class Objective>
RunResult cuckoo_search(const Instance& inst, HdcsParams params, bool local_search, Objective&& objective) {
    validate_params(params);
    params.levy.t_max = params.t_max;
    const auto clock_start = std::chrono::steady_clock::now();
    Rng rng(params.seed);

    Population pop = init_population(inst, params, rng, objective);
    const int tau = elite_count(params.population, params.discovery_prob);
    const std::size_t P = pop.members.size();

    RunResult result;
    result.algorithm = local_search ? "hdcs" : "dcs";
    result.seed = params.seed;

    int stagnant = 0;
    std::vector<char> is_elite(P);
    for (int t = 1;; ++t) {
        const auto elites = elite_indices(pop, tau);
        std::fill(is_elite.begin(), is_elite.end(), 0);
        for (auto e : elites) is_elite[e] = 1;

        // Levy flight for normal members, against a snapshot of the population.
        const std::vector<Evaluated> snapshot = pop.members;
        for (std::size_t i = 0; i < P; ++i) {
            if (is_elite[i]) continue;
            const NestVector& partner = snapshot[other_index(i, P, rng)].nest;
            NestVector cand = levy_flight(snapshot[i].nest, pop.best.nest, partner, t, params.levy, rng);
            const Time v = objective(cand);
            if (accept(v, pop.members[i].value)) pop.members[i] = {std::move(cand), v};
        }

        if (local_search) {
            for (auto e : elites) pop.members[e] = vnd(objective, std::move(pop.members[e]), rng);
        }

        // Order crossover on every member whose draw exceeds rho_a.
        for (std::size_t i = 0; i < P; ++i) {
            if (!(rng.uniform01() > params.discovery_prob)) continue;
            const std::size_t j = other_index(i, P, rng);
            auto [c1, c2] = order_crossover(pop.members[i].nest, pop.members[j].nest, rng);
            const Time v1 = objective(c1);
            const Time v2 = objective(c2);
            Evaluated child = v2 < v1 ? Evaluated{std::move(c2), v2} : Evaluated{std::move(c1), v1};
            if (accept(child.value, pop.members[i].value)) pop.members[i] = std::move(child);
        }

        restart(pop, params.restart_fraction, inst.n(), rng, objective);

        if (pop.update_best()) {
            stagnant = 0;
        } else {
            ++stagnant;
        }
        result.history.push_back(pop.best.value);
        result.iterations = t;
        if (t >= params.t_max || stagnant >= params.t_nip) break;
    }

    result.best_nest = pop.best.nest;
    result.best_value = pop.best.value;
    result.schedule = decode(inst, result.best_nest);
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return result;
}

}  // namespace detail

/// Hybrid discrete cuckoo search: Levy flights for normal members, VND on the
/// elites, order crossover, partial restart each iteration.
template <class Objective>
RunResult hdcs(const Instance& inst, const HdcsParams& params, Objective&& objective) {
    return detail::cuckoo_search(inst, params, true, objective);
}

inline RunResult hdcs(const Instance& inst, const HdcsParams& params) {
    return hdcs(inst, params, TardinessObjective{&inst});
}

/// hdcs without the VND stage. Elites are still exempt from the Levy flight.
template <class Objective>
RunResult dcs(const Instance& inst, const HdcsParams& params, Objective&& objective) {
    return detail::cuckoo_search(inst, params, false, objective);
}

inline RunResult dcs(const Instance& inst, const HdcsParams& params) {
    return dcs(inst, params, TardinessObjective{&inst});
}

/// Generic basic VNS baseline. This is a reconstruction, not a published
/// algorithm: it starts from the MBHG nest, shakes with kappa random moves of
/// neighborhood kappa, descends with VND, and returns to kappa = 1 on a strict
/// improvement. One iteration is one sweep over kappa = 1..3, and the same
/// t_max / t_nip stopping rules as hdcs apply.
template <class Objective>
RunResult vns_baseline(const Instance& inst, const HdcsParams& params, Objective&& objective) {
    validate_params(params);
    const auto clock_start = std::chrono::steady_clock::now();
    Rng rng(params.seed);

    NestVector start = encode(mbhg(inst).schedule);
    const Time start_value = objective(start);
    Evaluated x{std::move(start), start_value};

    RunResult result;
    result.algorithm = "vns";
    result.seed = params.seed;
    result.note = "generic VNS reconstruction";

    int stagnant = 0;
    for (int t = 1;; ++t) {
        bool improved = false;
        std::size_t kappa = 0;
        while (kappa < kNeighborhoodOrder.size()) {
            NestVector shaken = x.nest;
            for (std::size_t r = 0; r <= kappa; ++r) shaken = random_move(shaken, kNeighborhoodOrder[kappa], rng);
            const Time shaken_value = objective(shaken);
            Evaluated local = vnd(objective, Evaluated{std::move(shaken), shaken_value}, rng);
            if (local.value < x.value) {
                x = std::move(local);
                improved = true;
                kappa = 0;
            } else {
                ++kappa;
            }
        }
        stagnant = improved ? 0 : stagnant + 1;
        result.history.push_back(x.value);
        result.iterations = t;
        if (t >= params.t_max || stagnant >= params.t_nip) break;
    }

    result.best_nest = x.nest;
    result.best_value = x.value;
    result.schedule = decode(inst, result.best_nest);
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return result;
}

inline RunResult vns_baseline(const Instance& inst, const HdcsParams& params) {
    return vns_baseline(inst, params, TardinessObjective{&inst});
}

/// The MBHG sweep reported in RunResult form. best_nest is the flattened
/// schedule; best_value and schedule are the heuristic's own.
inline RunResult mbhg_run(const Instance& inst) {
    const auto clock_start = std::chrono::steady_clock::now();
    const MbhgResult r = mbhg(inst);
    RunResult result;
    result.algorithm = "mbhg";
    result.best_nest = encode(r.schedule);
    result.best_value = r.value;
    result.iterations = 1;
    result.history = {r.value};
    result.note = "omega=" + std::to_string(r.omega).substr(0, 3);
    result.schedule = r.schedule;
    result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    return result;
}

}  // namespace pmsd
