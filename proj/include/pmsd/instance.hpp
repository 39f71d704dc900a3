#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pmsd {

using Time = std::int64_t;
using JobId = int;

struct Job {
    JobId id = 0;
    Time basic_time = 0;          // a_j
    Time penalty = 0;             // b_j, added when the job starts after its deteriorating date
    Time due_date = 0;            // d_j
    Time deteriorating_date = 0;  // h_j

    bool operator==(const Job&) const = default;
};

/// A problem instance: n jobs on m identical machines with sequence-dependent setups.
///
/// The setup matrix has n+1 rows and n columns. Row 0 is the dummy predecessor
/// used for the first job on a machine; row i (1..n) holds the setups after job i.
/// Column j-1 is the setup before job j.
struct Instance {
    int m = 1;
    std::vector<Job> jobs;  // jobs[j-1].id == j
    std::vector<std::vector<Time>> setup;
    std::string label;

    int n() const { return static_cast<int>(jobs.size()); }
    const Job& job(JobId j) const { return jobs[static_cast<std::size_t>(j - 1)]; }

    /// Setup between `from` (0 for the dummy start) and `to`.
    Time setup_time(JobId from, JobId to) const {
        return setup[static_cast<std::size_t>(from)][static_cast<std::size_t>(to - 1)];
    }

    bool operator==(const Instance&) const = default;
};

struct Violation {
    std::string field;
    std::string rule;
};

/// Checks every structural rule of an instance. Never throws.
inline std::vector<Violation> validate(const Instance& inst) {
    std::vector<Violation> out;
    const int n = inst.n();
    if (n < 1) out.push_back({"n", "n >= 1"});
    if (inst.m < 1) out.push_back({"m", "m >= 1"});
    for (std::size_t k = 0; k < inst.jobs.size(); ++k) {
        const Job& j = inst.jobs[k];
        const std::string f = "jobs[" + std::to_string(k) + "]";
        if (j.id != static_cast<int>(k) + 1) out.push_back({f + ".id", "job ids are exactly 1..n in order"});
        if (j.basic_time < 1) out.push_back({f + ".a", "basic_time >= 1"});
        if (j.penalty < 1) out.push_back({f + ".b", "penalty >= 1"});
        if (j.due_date < 1) out.push_back({f + ".d", "due_date >= 1"});
        if (j.deteriorating_date < 1) out.push_back({f + ".h", "deteriorating_date >= 1"});
    }
    if (inst.setup.size() != static_cast<std::size_t>(n) + 1) {
        out.push_back({"setup", "setup has n+1 rows"});
        return out;
    }
    for (std::size_t i = 0; i < inst.setup.size(); ++i) {
        const auto& row = inst.setup[i];
        const std::string f = "setup[" + std::to_string(i) + "]";
        if (row.size() != static_cast<std::size_t>(n)) {
            out.push_back({f, "setup row has n entries"});
            continue;
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            const std::string cell = f + "[" + std::to_string(j) + "]";
            if (row[j] < 0) out.push_back({cell, "setup >= 0"});
            if (i == 0 && row[j] != 0) out.push_back({cell, "delta_0j = 0 (dummy row)"});
            if (i == j + 1 && row[j] != 0) out.push_back({cell, "delta_jj = 0 (diagonal)"});
        }
    }
    return out;
}

/// The six-job, two-machine worked example used throughout the tests.
inline Instance sample_instance() {
    Instance inst;
    inst.m = 2;
    inst.label = "sample_6x2";
    const Time a[] = {78, 17, 97, 93, 62, 53};
    const Time d[] = {85, 48, 229, 133, 220, 75};
    const Time h[] = {70, 4, 62, 19, 58, 39};
    const Time b[] = {18, 33, 1, 17, 40, 31};
    for (int j = 0; j < 6; ++j) inst.jobs.push_back({j + 1, a[j], b[j], d[j], h[j]});
    inst.setup = {
        {0, 0, 0, 0, 0, 0},
        {0, 9, 9, 5, 4, 6},
        {5, 0, 8, 2, 2, 5},
        {2, 6, 0, 5, 4, 7},
        {3, 5, 10, 0, 3, 9},
        {3, 10, 6, 9, 0, 5},
        {5, 8, 4, 8, 4, 0},
    };
    return inst;
}

}  // namespace pmsd
