#pragma once

// Independent reference computations used only by the tests. They share the
// instance data types with the library but none of its evaluation code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "pmsd/instance.hpp"

namespace oracle {

using pmsd::Instance;
using pmsd::Time;

/// Straight-line list-scheduling simulation of a nest.
inline Time simulate_nest(const Instance& inst, const std::vector<int>& nest) {
    const int m = inst.m;
    std::vector<Time> free_at(m, 0);
    std::vector<int> tail(m, 0);
    Time total = 0;
    for (int job : nest) {
        int pick = 0;
        for (int k = 0; k < m; ++k)
            if (free_at[k] < free_at[pick]) pick = k;
        const auto& J = inst.jobs[job - 1];
        Time start = free_at[pick] + inst.setup[tail[pick]][job - 1];
        Time p = J.basic_time;
        if (start > J.deteriorating_date) p += J.penalty;
        Time c = start + p;
        if (c > J.due_date) total += c - J.due_date;
        free_at[pick] = c;
        tail[pick] = job;
    }
    return total;
}

inline Time sequence_cost(const Instance& inst, const std::vector<int>& seq, std::size_t from, std::size_t to) {
    Time t = 0, total = 0;
    int prev = 0;
    for (std::size_t q = from; q < to; ++q) {
        const int job = seq[q];
        const auto& J = inst.jobs[job - 1];
        Time start = t + inst.setup[prev][job - 1];
        t = start + J.basic_time + (start > J.deteriorating_date ? J.penalty : 0);
        total += std::max<Time>(0, t - J.due_date);
        prev = job;
    }
    return total;
}

/// Minimum total tardiness over every schedule: every permutation cut into m
/// consecutive (possibly empty) machine sequences.
inline Time brute_force_optimum(const Instance& inst) {
    const int n = inst.n();
    const int m = inst.m;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    Time best = std::numeric_limits<Time>::max();
    std::vector<std::size_t> cuts(m + 1);
    std::function<void(int, std::size_t)> split = [&](int k, std::size_t from) {
        cuts[k] = from;
        if (k == m - 1) {
            cuts[m] = n;
            Time total = 0;
            for (int q = 0; q < m && total < best; ++q) total += sequence_cost(inst, perm, cuts[q], cuts[q + 1]);
            best = std::min(best, total);
            return;
        }
        for (std::size_t c = from; c <= static_cast<std::size_t>(n); ++c) split(k + 1, c);
    };
    do {
        split(0, 0);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Minimum over nests only (the decoder's search space).
inline Time best_nest_value(const Instance& inst) {
    std::vector<int> perm(inst.n());
    std::iota(perm.begin(), perm.end(), 1);
    Time best = std::numeric_limits<Time>::max();
    do {
        best = std::min(best, simulate_nest(inst, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace oracle
