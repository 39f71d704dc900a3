#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pmsd/generator.hpp"
#include "pmsd/mbhg.hpp"

using namespace pmsd;

TEST(Mbhg, SampleAtOmegaHalf) {
    const MbhgResult r = mbhg_single(sample_instance(), 0.5);
    EXPECT_EQ(r.value, 65);
    EXPECT_EQ(r.schedule.machine_sequences, (std::vector<std::vector<JobId>>{{2, 4, 5}, {6, 1, 3}}));
}

TEST(Mbhg, SampleAtOmegaTenth) {
    const MbhgResult r = mbhg_single(sample_instance(), 0.1);
    EXPECT_EQ(r.value, 116);
    EXPECT_EQ(r.schedule.machine_sequences, (std::vector<std::vector<JobId>>{{2, 6, 5, 3}, {1, 4}}));
}

TEST(Mbhg, SampleSweep) {
    const Instance inst = sample_instance();
    const std::vector<Time> expected{116, 116, 65, 65, 65, 103, 103, 103, 103};
    const auto weights = mbhg_weights();
    ASSERT_EQ(weights.size(), expected.size());
    for (std::size_t k = 0; k < weights.size(); ++k) EXPECT_EQ(mbhg_single(inst, weights[k]).value, expected[k]) << k;
    const MbhgResult best = mbhg(inst);
    EXPECT_EQ(best.value, 65);
    EXPECT_DOUBLE_EQ(best.omega, 0.3);  // smallest weight attaining the minimum
}

TEST(Mbhg, ValueMatchesItsSchedule) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        GeneratorConfig cfg;
        cfg.n = 5 + static_cast<int>(seed % 20);
        cfg.m = 1 + static_cast<int>(seed % 4);
        cfg.interval = static_cast<IntervalClass>(seed % 3);
        cfg.seed = seed;
        const Instance inst = generate(cfg);
        const MbhgResult r = mbhg(inst);
        EXPECT_EQ(r.value, schedule_from_sequences(inst, r.schedule.machine_sequences).total_tardiness);
        EXPECT_EQ(r.value, r.schedule.total_tardiness);
        for (double w : mbhg_weights()) EXPECT_LE(r.value, mbhg_single(inst, w).value);
    }
}

TEST(Mbhg, PriorityListTiesKeepIdOrder) {
    Instance inst = sample_instance();
    for (auto& j : inst.jobs) {
        j.due_date = 100;
        j.deteriorating_date = 50;
    }
    EXPECT_EQ(mbhg_priority_list(inst, 0.5), (std::vector<JobId>{1, 2, 3, 4, 5, 6}));
    EXPECT_NO_THROW(mbhg(inst));
}

TEST(Mbhg, FewerJobsThanMachines) {
    GeneratorConfig cfg;
    cfg.n = 5;
    cfg.m = 5;
    cfg.seed = 9;
    Instance inst = generate(cfg);
    MbhgResult r = mbhg(inst);
    std::size_t used = 0;
    for (const auto& seq : r.schedule.machine_sequences) used += seq.size();
    EXPECT_EQ(used, 5u);

    inst.m = 8;
    r = mbhg(inst);
    used = 0;
    for (const auto& seq : r.schedule.machine_sequences) used += seq.size();
    EXPECT_EQ(used, 5u);
    EXPECT_EQ(r.schedule.machine_sequences.size(), 8u);
}

TEST(Mbhg, RejectsOmegaOutsideOpenInterval) {
    EXPECT_THROW(mbhg_single(sample_instance(), 0.0), std::invalid_argument);
    EXPECT_THROW(mbhg_single(sample_instance(), 1.0), std::invalid_argument);
}

TEST(Mbhg, NeverBelowTheOptimum) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        GeneratorConfig cfg;
        cfg.n = 7;
        cfg.m = 2;
        cfg.interval = static_cast<IntervalClass>(seed % 3);
        cfg.seed = 100 + seed;
        const Instance inst = generate(cfg);
        EXPECT_GE(mbhg(inst).value, oracle::brute_force_optimum(inst));
    }
}
