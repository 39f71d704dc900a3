#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmsd/instance.hpp"
#include "pmsd/mbhg.hpp"
#include "pmsd/schedule.hpp"

namespace pmsd {

// ---------------------------------------------------------------------------
// Branch and bound
// ---------------------------------------------------------------------------

struct BranchAndBoundOptions {
    double time_limit_seconds = 60.0;
    bool pruning = true;           // off = plain enumeration, used as a self-check
    bool symmetry_breaking = true;  // off = machines treated as distinguishable
    bool warm_start = true;        // seed the incumbent with MBHG
};

struct BranchAndBoundResult {
    Schedule schedule;
    bool proven_optimal = false;
    std::uint64_t nodes = 0;
};

namespace detail {

/// Depth-first search that fills machines one at a time. A node either appends
/// an unscheduled job to the current machine or closes it and opens the next.
/// Under symmetry breaking the machines are ordered by the id of their first
/// job, so every schedule is met once up to relabelling identical machines.
class BranchAndBound {
public:
    BranchAndBound(const Instance& inst, const BranchAndBoundOptions& opt)
        : inst_(inst), opt_(opt), n_(inst.n()), m_(inst.m) {
        order_.resize(static_cast<std::size_t>(n_));
        std::iota(order_.begin(), order_.end(), 1);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](JobId a, JobId b) { return inst.job(a).due_date < inst.job(b).due_date; });
        seqs_.assign(static_cast<std::size_t>(m_), {});
        scheduled_.assign(static_cast<std::size_t>(n_) + 1, 0);
    }

    BranchAndBoundResult run() {
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(opt_.time_limit_seconds));
        if (opt_.warm_start) {
            MbhgResult h = mbhg(inst_);
            incumbent_ = h.value;
            best_seqs_ = h.schedule.machine_sequences;
            have_incumbent_ = true;
        }
        search(0, 0, 0, 0, 0);
        BranchAndBoundResult r;
        r.schedule = schedule_from_sequences(inst_, best_seqs_);
        r.proven_optimal = !timed_out_;
        r.nodes = nodes_;
        return r;
    }

private:
    // Lower bound on the tardiness of the still unscheduled jobs.
    Time remaining_bound(int machine, Time avail) const {
        Time lb = 0;
        const bool fresh_machine_left = machine + 1 < m_;
        for (JobId j = 1; j <= n_; ++j) {
            if (scheduled_[static_cast<std::size_t>(j)]) continue;
            const Job& job = inst_.job(j);
            // Either on a later machine (earliest finish a_j) or after the current one.
            const Time earliest = fresh_machine_left ? job.basic_time : avail + job.basic_time;
            lb += std::max<Time>(0, earliest - job.due_date);
        }
        return lb;
    }

    bool out_of_time() {
        if ((++nodes_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
        return timed_out_;
    }

    void search(int machine, Time avail, JobId last, Time acc, int placed) {
        if (out_of_time()) return;
        if (placed == n_) {
            if (!have_incumbent_ || acc < incumbent_) {
                incumbent_ = acc;
                best_seqs_ = seqs_;
                have_incumbent_ = true;
            }
            return;
        }
        if (opt_.pruning && have_incumbent_ && acc + remaining_bound(machine, avail) >= incumbent_) return;

        auto& seq = seqs_[static_cast<std::size_t>(machine)];
        for (JobId j : order_) {
            if (scheduled_[static_cast<std::size_t>(j)]) continue;
            if (seq.empty() && opt_.symmetry_breaking && machine > 0 &&
                j < seqs_[static_cast<std::size_t>(machine - 1)].front())
                continue;
            const Job& job = inst_.job(j);
            const Time s = avail + inst_.setup_time(last, j);
            const Time c = s + processing_time(job, s);
            const Time tard = std::max<Time>(0, c - job.due_date);
            if (opt_.pruning && have_incumbent_ && acc + tard >= incumbent_) continue;
            scheduled_[static_cast<std::size_t>(j)] = 1;
            seq.push_back(j);
            search(machine, c, j, acc + tard, placed + 1);
            seq.pop_back();
            scheduled_[static_cast<std::size_t>(j)] = 0;
            if (timed_out_) return;
        }
        // Close this machine and continue on the next one.
        if (!seq.empty() && machine + 1 < m_) search(machine + 1, 0, 0, acc, placed);
    }

    const Instance& inst_;
    BranchAndBoundOptions opt_;
    int n_, m_;
    std::vector<JobId> order_;
    std::vector<std::vector<JobId>> seqs_, best_seqs_;
    std::vector<char> scheduled_;
    Time incumbent_ = 0;
    bool have_incumbent_ = false;
    bool timed_out_ = false;
    std::uint64_t nodes_ = 0;
    std::chrono::steady_clock::time_point deadline_;
};

}  // namespace detail

/// Exact minimum total tardiness over all machine sequencings (empty machines
/// allowed). proven_optimal is false when the time limit cut the search short;
/// the schedule is then the best incumbent found.
inline BranchAndBoundResult branch_and_bound(const Instance& inst, const BranchAndBoundOptions& opt = {}) {
    if (inst.n() < 1) throw std::invalid_argument("branch_and_bound: empty instance");
    return detail::BranchAndBound(inst, opt).run();
}

inline BranchAndBoundResult branch_and_bound(const Instance& inst, double time_limit_seconds) {
    BranchAndBoundOptions opt;
    opt.time_limit_seconds = time_limit_seconds;
    return branch_and_bound(inst, opt);
}

// ---------------------------------------------------------------------------
// MIP model: big-M, constraint checker, LP export
// ---------------------------------------------------------------------------

/// M = max_j d_j + sum_j (a_j + b_j).
inline Time big_m(const Instance& inst) {
    Time max_d = 0, sum = 0;
    for (const auto& j : inst.jobs) {
        max_d = std::max(max_d, j.due_date);
        sum += j.basic_time + j.penalty;
    }
    return max_d + sum;
}

struct MipViolation {
    std::string constraint;  // short constraint name, e.g. "setup-sequence"
    std::string detail;
};

struct MipReport {
    std::vector<MipViolation> violations;
    Time objective = 0;        // sum of T_j as carried by the schedule
    Time evaluator_total = 0;  // total tardiness re-timed from the machine sequences
    Time big_m = 0;

    bool feasible() const { return violations.empty(); }
};

/// Builds the u/s/C/T assignment induced by a schedule (dummy jobs 0 and n+1
/// at the head and tail of each machine) and checks every model constraint.
inline MipReport check_mip_feasibility(const Instance& inst, const Schedule& sched) {
    MipReport rep;
    const int n = inst.n();
    const int m = inst.m;
    const Time M = big_m(inst);
    rep.big_m = M;
    auto add = [&](std::string c, std::string d) { rep.violations.push_back({std::move(c), std::move(d)}); };

    const auto N = static_cast<std::size_t>(n);
    if (sched.start.size() != N || sched.completion.size() != N || sched.tardiness.size() != N) {
        add("shape", "schedule vectors must have n entries");
        return rep;
    }
    if (static_cast<int>(sched.machine_sequences.size()) != m) add("shape", "schedule must list m machines");

    // u[k][i][j] for i in 0..n, j in 1..n+1 (column index j).
    const auto mk = static_cast<std::size_t>(std::max(m, static_cast<int>(sched.machine_sequences.size())));
    std::vector<std::vector<std::vector<int>>> u(mk, std::vector<std::vector<int>>(N + 1, std::vector<int>(N + 2, 0)));
    for (std::size_t k = 0; k < sched.machine_sequences.size(); ++k) {
        JobId prev = 0;
        for (JobId j : sched.machine_sequences[k]) {
            if (j < 1 || j > n) {
                add("shape", "job id " + std::to_string(j) + " out of range");
                return rep;
            }
            ++u[k][static_cast<std::size_t>(prev)][static_cast<std::size_t>(j)];
            prev = j;
        }
        ++u[k][static_cast<std::size_t>(prev)][N + 1];
    }
    auto U = [&](int i, int j, std::size_t k) { return u[k][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    const std::size_t machines = static_cast<std::size_t>(m);

    for (std::size_t k = 0; k < mk; ++k)
        for (int i = 0; i <= n; ++i)
            for (int j = 1; j <= n + 1; ++j)
                if (U(i, j, k) > 1) add("binary", "u binary: arc " + std::to_string(i) + "->" + std::to_string(j) + " repeated");

    for (std::size_t k = 0; k < machines; ++k) {
        int out0 = 0, inEnd = 0;
        for (int i = 1; i <= n; ++i) {
            out0 += U(0, i, k);
            inEnd += U(i, n + 1, k);
        }
        if (out0 != 1) add("machine-start", "machine " + std::to_string(k + 1) + ": dummy 0 has " + std::to_string(out0) + " successors");
        if (inEnd != 1) add("machine-end", "machine " + std::to_string(k + 1) + ": dummy n+1 has " + std::to_string(inEnd) + " predecessors");
    }
    for (int j = 1; j <= n; ++j) {
        int in = 0, out = 0;
        for (std::size_t k = 0; k < mk; ++k) {
            for (int i = 0; i <= n; ++i)
                if (i != j) in += U(i, j, k);
            for (int q = 1; q <= n + 1; ++q)
                if (q != j) out += U(j, q, k);
            if (U(j, j, k) != 0) add("self-arc", "self arc on job " + std::to_string(j));
        }
        if (in != 1) add("predecessor", "job " + std::to_string(j) + " has " + std::to_string(in) + " predecessors");
        if (out != 1) add("successor", "job " + std::to_string(j) + " has " + std::to_string(out) + " successors");
    }

    auto S = [&](int j) { return sched.start[static_cast<std::size_t>(j - 1)]; };
    auto C = [&](int j) { return sched.completion[static_cast<std::size_t>(j - 1)]; };
    auto T = [&](int j) { return sched.tardiness[static_cast<std::size_t>(j - 1)]; };
    for (std::size_t k = 0; k < mk; ++k) {
        for (int j = 1; j <= n; ++j) {
            if (S(j) < inst.setup_time(0, j) + M * (U(0, j, k) - 1))
                add("first-setup", "job " + std::to_string(j) + " starts before its initial setup");
            for (int i = 1; i <= n; ++i) {
                if (i == j) continue;
                if (S(j) < C(i) + inst.setup_time(i, j) + M * (U(i, j, k) - 1))
                    add("setup-sequence", "job " + std::to_string(j) + " starts at " + std::to_string(S(j)) + " before predecessor " +
                                   std::to_string(i) + " completes (" + std::to_string(C(i)) + ") plus setup");
            }
        }
    }
    for (int j = 1; j <= n; ++j) {
        const Job& job = inst.job(j);
        const Time p = processing_time(job, S(j));
        if (C(j) < S(j) + p) add("processing", "job " + std::to_string(j) + ": C < s + p");
        if (T(j) < C(j) - job.due_date) add("tardiness", "job " + std::to_string(j) + ": T < C - d");
        if (S(j) < 0 || C(j) < 0 || T(j) < 0) add("nonnegative", "job " + std::to_string(j) + ": negative time");
        if (T(j) != std::max<Time>(0, C(j) - job.due_date))
            add("objective", "job " + std::to_string(j) + ": T differs from max(0, C - d)");
        rep.objective += T(j);
    }

    rep.evaluator_total = schedule_from_sequences(inst, sched.machine_sequences).total_tardiness;
    if (rep.objective != rep.evaluator_total)
        add("objective", "objective " + std::to_string(rep.objective) + " differs from evaluator total " +
                       std::to_string(rep.evaluator_total));
    if (rep.objective != sched.total_tardiness)
        add("objective", "schedule total " + std::to_string(sched.total_tardiness) + " differs from sum of T_j");
    return rep;
}

namespace detail {

// Accumulates a linear expression and wraps long rows like most LP writers.
class LpRow {
public:
    explicit LpRow(std::string name) { os_ << ' ' << name << ':'; }
    void term(Time coef, const std::string& var) {
        if (coef == 0) return;
        if (width_ > 70) {
            os_ << "\n   ";
            width_ = 0;
        }
        std::string t = (coef < 0 ? " - " : (first_ ? " " : " + "));
        const Time a = coef < 0 ? -coef : coef;
        if (a != 1) t += std::to_string(a) + ' ';
        t += var;
        os_ << t;
        width_ += t.size();
        first_ = false;
    }
    std::string finish(const std::string& sense, Time rhs) {
        os_ << ' ' << sense << ' ' << rhs << '\n';
        return os_.str();
    }
    std::string finish() {
        os_ << '\n';
        return os_.str();
    }

private:
    std::ostringstream os_;
    std::size_t width_ = 0;
    bool first_ = true;
};

inline std::string u_var(int i, int j, int k) {
    return "u_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}

}  // namespace detail

/// Writes the model in CPLEX LP format. Step deterioration is linearised with
/// a binary y_j (1 iff s_j > h_j): s_j <= h_j + M y_j and
/// s_j >= h_j + 1 - M (1 - y_j); p_j = a_j + b_j y_j enters the processing rows.
inline void write_lp(std::ostream& os, const Instance& inst) {
    const int n = inst.n();
    const int m = inst.m;
    const Time M = big_m(inst);
    using detail::LpRow;
    using detail::u_var;
    auto sj = [](const char* v, int j) { return std::string(v) + "_" + std::to_string(j); };

    os << "\\ Parallel machine scheduling, step deterioration, sequence-dependent setups\n";
    os << "\\ instance: " << (inst.label.empty() ? "unnamed" : inst.label) << "  n = " << n << "  m = " << m << '\n';
    os << "\\ big-M: M = " << M << '\n';
    os << "Minimize\n";
    {
        LpRow obj("obj");
        for (int j = 1; j <= n; ++j) obj.term(1, sj("T", j));
        os << obj.finish();
    }
    os << "Subject To\n";
    for (int k = 1; k <= m; ++k) {
        LpRow r("start_" + std::to_string(k));
        for (int i = 1; i <= n; ++i) r.term(1, u_var(0, i, k));
        os << r.finish("=", 1);
    }
    for (int k = 1; k <= m; ++k) {
        LpRow r("end_" + std::to_string(k));
        for (int i = 1; i <= n; ++i) r.term(1, u_var(i, n + 1, k));
        os << r.finish("=", 1);
    }
    for (int j = 1; j <= n; ++j) {
        LpRow r("pred_" + std::to_string(j));
        for (int i = 0; i <= n; ++i)
            if (i != j)
                for (int k = 1; k <= m; ++k) r.term(1, u_var(i, j, k));
        os << r.finish("=", 1);
    }
    for (int i = 1; i <= n; ++i) {
        LpRow r("succ_" + std::to_string(i));
        for (int j = 1; j <= n + 1; ++j)
            if (j != i)
                for (int k = 1; k <= m; ++k) r.term(1, u_var(i, j, k));
        os << r.finish("=", 1);
    }
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= m; ++k) {
            // s_j >= delta_0j + M (u_0jk - 1)
            LpRow r("first_" + std::to_string(j) + "_" + std::to_string(k));
            r.term(1, sj("s", j));
            r.term(-M, u_var(0, j, k));
            os << r.finish(">=", inst.setup_time(0, j) - M);
        }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            for (int k = 1; k <= m; ++k) {
                // s_j - C_i - M u_ijk >= delta_ij - M
                LpRow r("seq_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k));
                r.term(1, sj("s", j));
                r.term(-1, sj("C", i));
                r.term(-M, u_var(i, j, k));
                os << r.finish(">=", inst.setup_time(i, j) - M);
            }
        }
    for (int j = 1; j <= n; ++j) {
        const Job& job = inst.job(j);
        LpRow r("proc_" + std::to_string(j));
        r.term(1, sj("C", j));
        r.term(-1, sj("s", j));
        r.term(-job.penalty, sj("y", j));
        os << r.finish(">=", job.basic_time);
    }
    for (int j = 1; j <= n; ++j) {
        LpRow r("tard_" + std::to_string(j));
        r.term(1, sj("T", j));
        r.term(-1, sj("C", j));
        os << r.finish(">=", -inst.job(j).due_date);
    }
    for (int j = 1; j <= n; ++j) {
        const Job& job = inst.job(j);
        LpRow up("det_up_" + std::to_string(j));
        up.term(1, sj("s", j));
        up.term(-M, sj("y", j));
        os << up.finish("<=", job.deteriorating_date);
        LpRow lo("det_lo_" + std::to_string(j));
        lo.term(1, sj("s", j));
        lo.term(-M, sj("y", j));
        os << lo.finish(">=", job.deteriorating_date + 1 - M);
    }
    os << "Bounds\n";
    for (const char* v : {"s", "C", "T"})
        for (int j = 1; j <= n; ++j) os << ' ' << sj(v, j) << " >= 0\n";
    os << "Binaries\n";
    for (int k = 1; k <= m; ++k) {
        for (int i = 0; i <= n; ++i)
            for (int j = 1; j <= n + 1; ++j) {
                if (i == j || (i == 0 && j == n + 1)) continue;
                os << ' ' << u_var(i, j, k) << '\n';
            }
    }
    for (int j = 1; j <= n; ++j) os << ' ' << sj("y", j) << '\n';
    os << "End\n";
}

inline std::string export_lp(const Instance& inst) {
    std::ostringstream os;
    write_lp(os, inst);
    return os.str();
}

inline std::string export_lp(const Instance& inst, const std::filesystem::path& path) {
    std::string text = export_lp(inst);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write LP file " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
    return text;
}

}  // namespace pmsd
