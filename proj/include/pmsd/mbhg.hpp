#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pmsd/instance.hpp"
#include "pmsd/schedule.hpp"

namespace pmsd {

struct MbhgResult {
    Schedule schedule;
    double omega = 0.0;
    Time value = 0;
};

/// Job list sorted by omega * d_j + (1 - omega) * h_j, ties by id.
inline std::vector<JobId> mbhg_priority_list(const Instance& inst, double omega) {
    std::vector<JobId> list(static_cast<std::size_t>(inst.n()));
    std::iota(list.begin(), list.end(), 1);
    auto key = [&](JobId j) {
        const Job& job = inst.job(j);
        return omega * static_cast<double>(job.due_date) + (1.0 - omega) * static_cast<double>(job.deteriorating_date);
    };
    std::stable_sort(list.begin(), list.end(), [&](JobId x, JobId y) { return key(x) < key(y); });
    return list;
}

/// Modified BHG insertion heuristic for one weight.
///
/// The first m listed jobs open the m machines. Every further job is tried at
/// every position of machine 1, then machine 2, and so on; within a machine the
/// trials run from the slot after the last job back to the slot before the
/// first. The first trial reaching the minimum total tardiness is committed.
inline MbhgResult mbhg_single(const Instance& inst, double omega) {
    if (!(omega > 0.0 && omega < 1.0)) throw std::invalid_argument("mbhg: omega must lie in (0, 1)");
    const auto list = mbhg_priority_list(inst, omega);
    const auto m = static_cast<std::size_t>(inst.m);
    std::vector<std::vector<JobId>> seqs(m);
    std::vector<Time> machine_value(m, 0);

    const std::size_t opening = std::min(m, list.size());
    for (std::size_t k = 0; k < opening; ++k) {
        seqs[k].push_back(list[k]);
        machine_value[k] = sequence_tardiness(inst, seqs[k]);
    }
    Time total = std::accumulate(machine_value.begin(), machine_value.end(), Time{0});

    std::vector<JobId> trial;
    for (std::size_t idx = opening; idx < list.size(); ++idx) {
        const JobId job = list[idx];
        bool found = false;
        Time best_total = 0, best_machine_value = 0;
        std::size_t best_k = 0, best_pos = 0;
        for (std::size_t k = 0; k < m; ++k) {
            // Only machine k changes; the other machines keep their contribution.
            const Time others = total - machine_value[k];
            for (std::size_t pos = seqs[k].size() + 1; pos-- > 0;) {
                trial = seqs[k];
                trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), job);
                const Time mv = sequence_tardiness(inst, trial);
                if (!found || others + mv < best_total) {
                    found = true;
                    best_total = others + mv;
                    best_machine_value = mv;
                    best_k = k;
                    best_pos = pos;
                }
            }
        }
        seqs[best_k].insert(seqs[best_k].begin() + static_cast<std::ptrdiff_t>(best_pos), job);
        machine_value[best_k] = best_machine_value;
        total = best_total;
    }

    MbhgResult r;
    r.schedule = schedule_from_sequences(inst, std::move(seqs));
    r.omega = omega;
    r.value = r.schedule.total_tardiness;
    return r;
}

/// Weights swept by mbhg(): 0.1, 0.2, ..., 0.9.
inline std::vector<double> mbhg_weights() {
    std::vector<double> w;
    for (int i = 1; i <= 9; ++i) w.push_back(i / 10.0);
    return w;
}

/// Best mbhg_single over the weight sweep; ties go to the smaller weight.
inline MbhgResult mbhg(const Instance& inst) {
    MbhgResult best;
    bool first = true;
    for (double w : mbhg_weights()) {
        MbhgResult r = mbhg_single(inst, w);
        if (first || r.value < best.value) {
            best = std::move(r);
            first = false;
        }
    }
    return best;
}

}  // namespace pmsd
