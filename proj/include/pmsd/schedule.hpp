#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmsd/instance.hpp"

namespace pmsd {

/// A permutation of the job ids 1..n. Decoding it yields a full schedule.
using NestVector = std::vector<JobId>;

struct Schedule {
    std::vector<std::vector<JobId>> machine_sequences;
    // Indexed by job id - 1.
    std::vector<Time> start;
    std::vector<Time> completion;
    std::vector<Time> tardiness;
    Time total_tardiness = 0;

    bool operator==(const Schedule&) const = default;
};

/// A nest together with its objective value.
struct Evaluated {
    NestVector nest;
    Time value = 0;
};

inline bool is_permutation_of_jobs(std::span<const JobId> nest, int n) {
    if (static_cast<int>(nest.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (JobId j : nest) {
        if (j < 1 || j > n || seen[static_cast<std::size_t>(j)]) return false;
        seen[static_cast<std::size_t>(j)] = 1;
    }
    return true;
}

inline void require_permutation(std::span<const JobId> nest, int n) {
    if (!is_permutation_of_jobs(nest, n))
        throw std::invalid_argument("nest vector is not a permutation of 1.." + std::to_string(n));
}

/// Step deterioration: the penalty applies once the start exceeds the deteriorating date.
inline Time processing_time(const Job& job, Time start) {
    return start <= job.deteriorating_date ? job.basic_time : job.basic_time + job.penalty;
}

/// Times the given per-machine sequences back to back with setups.
inline Schedule schedule_from_sequences(const Instance& inst, std::vector<std::vector<JobId>> sequences) {
    const auto n = static_cast<std::size_t>(inst.n());
    Schedule s;
    s.start.assign(n, 0);
    s.completion.assign(n, 0);
    s.tardiness.assign(n, 0);
    for (const auto& seq : sequences) {
        Time t = 0;
        JobId prev = 0;
        for (JobId j : seq) {
            const auto idx = static_cast<std::size_t>(j - 1);
            const Job& job = inst.job(j);
            s.start[idx] = t + inst.setup_time(prev, j);
            s.completion[idx] = s.start[idx] + processing_time(job, s.start[idx]);
            s.tardiness[idx] = std::max<Time>(0, s.completion[idx] - job.due_date);
            s.total_tardiness += s.tardiness[idx];
            t = s.completion[idx];
            prev = j;
        }
    }
    s.machine_sequences = std::move(sequences);
    return s;
}

/// Total tardiness of one machine sequence started at time zero.
inline Time sequence_tardiness(const Instance& inst, std::span<const JobId> seq) {
    Time t = 0, total = 0;
    JobId prev = 0;
    for (JobId j : seq) {
        const Job& job = inst.job(j);
        const Time s = t + inst.setup_time(prev, j);
        t = s + processing_time(job, s);
        total += std::max<Time>(0, t - job.due_date);
        prev = j;
    }
    return total;
}

/// List-schedules the nest: each job in turn goes to the machine that becomes
/// free first (lowest index on ties) and starts after that machine's setup.
inline Schedule decode(const Instance& inst, std::span<const JobId> nest) {
    require_permutation(nest, inst.n());
    const auto m = static_cast<std::size_t>(inst.m);
    std::vector<std::vector<JobId>> seqs(m);
    std::vector<Time> avail(m, 0);
    for (JobId j : nest) {
        const auto k = static_cast<std::size_t>(std::min_element(avail.begin(), avail.end()) - avail.begin());
        const JobId prev = seqs[k].empty() ? 0 : seqs[k].back();
        const Time s = avail[k] + inst.setup_time(prev, j);
        avail[k] = s + processing_time(inst.job(j), s);
        seqs[k].push_back(j);
    }
    return schedule_from_sequences(inst, std::move(seqs));
}

/// Objective value of a nest. Same semantic as decode(...).total_tardiness
/// without materialising the schedule; the caller guarantees a valid permutation.
inline Time evaluate_nest(const Instance& inst, std::span<const JobId> nest) {
    constexpr std::size_t kInline = 16;
    const auto m = static_cast<std::size_t>(inst.m);
    Time avail_buf[kInline];
    JobId last_buf[kInline];
    std::vector<Time> avail_vec;
    std::vector<JobId> last_vec;
    Time* avail = avail_buf;
    JobId* last = last_buf;
    if (m > kInline) {
        avail_vec.assign(m, 0);
        last_vec.assign(m, 0);
        avail = avail_vec.data();
        last = last_vec.data();
    } else {
        std::fill_n(avail, m, Time{0});
        std::fill_n(last, m, JobId{0});
    }
    Time total = 0;
    for (JobId j : nest) {
        std::size_t k = 0;
        for (std::size_t q = 1; q < m; ++q)
            if (avail[q] < avail[k]) k = q;
        const Job& job = inst.job(j);
        const Time s = avail[k] + inst.setup_time(last[k], j);
        avail[k] = s + processing_time(job, s);
        last[k] = j;
        total += std::max<Time>(0, avail[k] - job.due_date);
    }
    return total;
}

inline Time total_tardiness(const Instance& inst, std::span<const JobId> nest) {
    require_permutation(nest, inst.n());
    return evaluate_nest(inst, nest);
}

/// Default objective for the solvers: decoded total tardiness.
struct TardinessObjective {
    const Instance* instance;
    Time operator()(std::span<const JobId> nest) const { return evaluate_nest(*instance, nest); }
};

/// Flattens a schedule into a nest: jobs by start time, then machine index,
/// then position. Re-decoding the result may give a different schedule.
inline NestVector encode(const Schedule& schedule) {
    struct Key {
        Time start;
        std::size_t machine;
        std::size_t pos;
        JobId job;
    };
    std::vector<Key> keys;
    for (std::size_t k = 0; k < schedule.machine_sequences.size(); ++k) {
        const auto& seq = schedule.machine_sequences[k];
        for (std::size_t p = 0; p < seq.size(); ++p)
            keys.push_back({schedule.start[static_cast<std::size_t>(seq[p] - 1)], k, p, seq[p]});
    }
    std::sort(keys.begin(), keys.end(), [](const Key& x, const Key& y) {
        if (x.start != y.start) return x.start < y.start;
        if (x.machine != y.machine) return x.machine < y.machine;
        return x.pos < y.pos;
    });
    NestVector nest;
    nest.reserve(keys.size());
    for (const auto& k : keys) nest.push_back(k.job);
    return nest;
}

/// Human-readable dump: one `machine k:` line per machine, then `total: Z`.
inline void dump_schedule(std::ostream& os, const Schedule& s) {
    for (std::size_t k = 0; k < s.machine_sequences.size(); ++k) {
        os << "machine " << k + 1 << ':';
        for (JobId j : s.machine_sequences[k]) {
            const auto i = static_cast<std::size_t>(j - 1);
            os << ' ' << j << '(' << s.start[i] << ',' << s.completion[i] << ',' << s.tardiness[i] << ')';
        }
        os << '\n';
    }
    os << "total: " << s.total_tardiness << '\n';
}

inline std::string dump_schedule(const Schedule& s) {
    std::ostringstream os;
    dump_schedule(os, s);
    return os.str();
}

}  // namespace pmsd
