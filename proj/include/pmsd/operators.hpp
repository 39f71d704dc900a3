#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pmsd/random.hpp"
#include "pmsd/schedule.hpp"

// Discrete cuckoo-search primitives. Positions are 1-based so that a job id
// stored in a chain can be read directly as a position.

namespace pmsd {

/// Result of subtracting two nests: 0 where they agree, the minuend's job elsewhere.
using DiffChain = std::vector<JobId>;

struct LevyParams {
    double lambda_min = 1.1;
    double lambda_max = 3.0;
    double alpha0 = 1.0;  // scales the chain; has no effect on the discrete operators
    int t_max = 200;
};

/// Step-size exponent, increasing linearly from lambda_min to lambda_max over t_max iterations.
inline double lambda_at(int t, const LevyParams& p) {
    return p.lambda_min + (p.lambda_max - p.lambda_min) * static_cast<double>(t) / static_cast<double>(p.t_max);
}

inline DiffChain subtract(const NestVector& x1, const NestVector& x2) {
    if (x1.size() != x2.size()) throw std::invalid_argument("subtract: length mismatch");
    DiffChain out(x1.size(), 0);
    for (std::size_t i = 0; i < x1.size(); ++i) out[i] = x1[i] == x2[i] ? 0 : x1[i];
    return out;
}

/// Keeps each chain entry when a fresh U(0,1) draw is >= sigma, zeroes it otherwise.
inline DiffChain multiply(double sigma, const DiffChain& chain, Rng& rng) {
    DiffChain out(chain.size(), 0);
    for (std::size_t i = 0; i < chain.size(); ++i) out[i] = rng.uniform01() >= sigma ? chain[i] : 0;
    return out;
}

/// Applies the chain as swaps, in index order: for each nonzero chain[i], the
/// jobs at positions chain[i] and x_new[i] of the evolving x_new are exchanged.
inline NestVector add(const NestVector& x, const DiffChain& chain) {
    if (x.size() != chain.size()) throw std::invalid_argument("add: length mismatch");
    NestVector out = x;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (chain[i] <= 0) continue;
        const auto p = static_cast<std::size_t>(chain[i] - 1);
        const auto q = static_cast<std::size_t>(out[i] - 1);
        std::swap(out[p], out[q]);
    }
    return out;
}

/// One discrete Levy flight step. With probability 1/2 the step is directed by
/// the best nest, otherwise by the supplied random member.
///
/// The chain is taken as ref - x. With x as the minuend every surviving entry
/// equals x[i], so add() would swap a position with itself and the step would
/// never move.
inline NestVector levy_flight(const NestVector& x, const NestVector& x_best, const NestVector& x_rand, int t,
                              const LevyParams& params, Rng& rng) {
    if (t < 1) throw std::invalid_argument("levy_flight: iteration counter starts at 1");
    const double psi = rng.uniform01();
    const NestVector& ref = psi > 0.5 ? x_best : x_rand;
    const double sigma = std::pow(static_cast<double>(t), -lambda_at(t, params));
    return add(x, multiply(sigma, subtract(ref, x), rng));
}

/// Order crossover child: positions [p, q] (1-based, inclusive) come from
/// `keep`, the rest are filled left to right with `fill`'s remaining jobs.
inline NestVector order_crossover_child(const NestVector& keep, const NestVector& fill, std::size_t p, std::size_t q) {
    const std::size_t n = keep.size();
    if (fill.size() != n) throw std::invalid_argument("order_crossover: length mismatch");
    if (p < 1 || p > q || q > n) throw std::invalid_argument("order_crossover: invalid window");
    NestVector child(n, 0);
    std::vector<char> used(n + 1, 0);
    for (std::size_t i = p - 1; i < q; ++i) {
        child[i] = keep[i];
        used[static_cast<std::size_t>(keep[i])] = 1;
    }
    std::size_t slot = 0;
    for (JobId j : fill) {
        if (used[static_cast<std::size_t>(j)]) continue;
        while (slot >= p - 1 && slot < q) ++slot;
        child[slot++] = j;
    }
    return child;
}

/// Uniform draw among the n(n+1)/2 windows 1 <= p <= q <= n.
inline std::pair<std::size_t, std::size_t> random_window(std::size_t n, Rng& rng) {
    std::size_t k = rng.index(n * (n + 1) / 2);
    std::size_t p = 1;
    while (k >= n - p + 1) {
        k -= n - p + 1;
        ++p;
    }
    return {p, p + k};
}

/// Both order-crossover offspring for one random window: the first keeps x1's
/// window, the second keeps x2's.
inline std::pair<NestVector, NestVector> order_crossover(const NestVector& x1, const NestVector& x2, Rng& rng) {
    if (x1.size() != x2.size()) throw std::invalid_argument("order_crossover: length mismatch");
    if (x1.empty()) return {x1, x2};
    const auto [p, q] = random_window(x1.size(), rng);
    return {order_crossover_child(x1, x2, p, q), order_crossover_child(x2, x1, p, q)};
}

/// Greedy replacement test: strictly better only.
constexpr bool accept(Time candidate_value, Time incumbent_value) { return candidate_value < incumbent_value; }

}  // namespace pmsd
