#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "pmsd/random.hpp"
#include "pmsd/schedule.hpp"

namespace pmsd {

enum class NeighborhoodKind { Swap = 1, Insert = 2, Inverse = 3 };

inline constexpr std::array<NeighborhoodKind, 3> kNeighborhoodOrder{NeighborhoodKind::Swap, NeighborhoodKind::Insert,
                                                                    NeighborhoodKind::Inverse};

inline std::string_view to_string(NeighborhoodKind k) {
    switch (k) {
        case NeighborhoodKind::Swap: return "swap";
        case NeighborhoodKind::Insert: return "insert";
        case NeighborhoodKind::Inverse: return "inverse";
    }
    return "?";
}

namespace detail {
inline void check_positions(const NestVector& x, std::size_t i, std::size_t j) {
    if (i < 1 || j < 1 || i > x.size() || j > x.size() || i == j)
        throw std::invalid_argument("move: positions must be distinct and within 1..n");
}
}  // namespace detail

// Moves take 1-based positions.

inline NestVector swap_move(NestVector x, std::size_t i, std::size_t j) {
    detail::check_positions(x, i, j);
    std::swap(x[i - 1], x[j - 1]);
    return x;
}

/// Removes the job at position i and reinserts it just before the job that was at position j.
inline NestVector insert_move(NestVector x, std::size_t i, std::size_t j) {
    detail::check_positions(x, i, j);
    const JobId job = x[i - 1];
    x.erase(x.begin() + static_cast<std::ptrdiff_t>(i - 1));
    const std::size_t target = i < j ? j - 2 : j - 1;  // index of the old j-th job after the erase
    x.insert(x.begin() + static_cast<std::ptrdiff_t>(target), job);
    return x;
}

/// Reverses positions [min(i,j), max(i,j)].
inline NestVector inverse_move(NestVector x, std::size_t i, std::size_t j) {
    detail::check_positions(x, i, j);
    if (i > j) std::swap(i, j);
    std::reverse(x.begin() + static_cast<std::ptrdiff_t>(i - 1), x.begin() + static_cast<std::ptrdiff_t>(j));
    return x;
}

inline NestVector apply_move(const NestVector& x, NeighborhoodKind kind, std::size_t i, std::size_t j) {
    switch (kind) {
        case NeighborhoodKind::Swap: return swap_move(x, i, j);
        case NeighborhoodKind::Insert: return insert_move(x, i, j);
        case NeighborhoodKind::Inverse: return inverse_move(x, i, j);
    }
    throw std::invalid_argument("unknown neighborhood");
}

/// Two distinct positions in 1..n, each uniform; j is redrawn until it differs from i.
inline std::pair<std::size_t, std::size_t> random_position_pair(std::size_t n, Rng& rng) {
    const std::size_t i = rng.index(n) + 1;
    std::size_t j;
    do {
        j = rng.index(n) + 1;
    } while (j == i);
    return {i, j};
}

inline NestVector random_move(const NestVector& x, NeighborhoodKind kind, Rng& rng) {
    if (x.size() < 2) return x;
    const auto [i, j] = random_position_pair(x.size(), rng);
    return apply_move(x, kind, i, j);
}

/// Samples n random neighbors of x under one move type and returns the best
/// (first drawn on ties), whether or not it improves on x.
template <class Objective>
    requires std::invocable<Objective&, const NestVector&>
Evaluated neighborhood_pass(Objective&& objective, const NestVector& x, NeighborhoodKind kind, Rng& rng) {
    const std::size_t n = x.size();
    if (n < 2) return {x, objective(x)};
    Evaluated best;
    bool first = true;
    for (std::size_t trial = 0; trial < n; ++trial) {
        NestVector y = random_move(x, kind, rng);
        const Time v = objective(y);
        if (first || v < best.value) {
            best.nest = std::move(y);
            best.value = v;
            first = false;
        }
    }
    return best;
}

/// Variable neighborhood descent over swap, insert, inverse. A strictly better
/// pass result replaces x and repeats the same neighborhood; otherwise the
/// next neighborhood is tried. Stops after the inverse pass fails.
template <class Objective>
    requires std::invocable<Objective&, const NestVector&>
Evaluated vnd(Objective&& objective, Evaluated x, Rng& rng) {
    std::size_t kappa = 0;
    while (kappa < kNeighborhoodOrder.size()) {
        Evaluated candidate = neighborhood_pass(objective, x.nest, kNeighborhoodOrder[kappa], rng);
        if (candidate.value < x.value) {
            x = std::move(candidate);
        } else {
            ++kappa;
        }
    }
    return x;
}

inline Evaluated neighborhood_pass(const Instance& inst, const NestVector& x, NeighborhoodKind kind, Rng& rng) {
    return neighborhood_pass(TardinessObjective{&inst}, x, kind, rng);
}

inline Evaluated vnd(const Instance& inst, const NestVector& x, Rng& rng) {
    require_permutation(x, inst.n());
    return vnd(TardinessObjective{&inst}, Evaluated{x, evaluate_nest(inst, x)}, rng);
}

}  // namespace pmsd
