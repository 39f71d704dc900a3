#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "pmsd/operators.hpp"

using namespace pmsd;

namespace {

bool is_perm(const NestVector& x) { return is_permutation_of_jobs(x, static_cast<int>(x.size())); }

NestVector random_perm(std::size_t n, Rng& rng) {
    NestVector x(n);
    std::iota(x.begin(), x.end(), 1);
    rng.shuffle(x);
    return x;
}

}  // namespace

TEST(Lambda, LinearSchedule) {
    LevyParams p;
    EXPECT_DOUBLE_EQ(lambda_at(0, p), 1.1);
    EXPECT_DOUBLE_EQ(lambda_at(200, p), 3.0);
    EXPECT_NEAR(lambda_at(100, p), 2.05, 1e-12);
}

TEST(Subtract, Examples) {
    EXPECT_EQ(subtract({1, 2, 3, 4}, {1, 3, 2, 4}), (DiffChain{0, 2, 3, 0}));
    EXPECT_EQ(subtract({3, 1, 2}, {3, 1, 2}), (DiffChain{0, 0, 0}));
    EXPECT_EQ(subtract({2, 6, 4, 1, 5, 3}, {2, 6, 1, 4, 5, 3}), (DiffChain{0, 0, 4, 1, 0, 0}));
    EXPECT_EQ(subtract({1, 2, 3}, {3, 2, 1}), (DiffChain{1, 0, 3}));
    EXPECT_THROW(subtract({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST(Multiply, ExtremeSigmas) {
    Rng rng(1);
    const DiffChain c{0, 2, 3, 0, 5};
    EXPECT_EQ(multiply(0.0, c, rng), c);
    EXPECT_EQ(multiply(1.0, c, rng), (DiffChain{0, 0, 0, 0, 0}));
}

TEST(Multiply, KeepsAboutHalfAtSigmaHalf) {
    Rng rng(2);
    const DiffChain c(100, 7);
    std::size_t kept = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        const DiffChain r = multiply(0.5, c, rng);
        for (JobId v : r) {
            EXPECT_TRUE(v == 0 || v == 7);
            kept += v != 0;
        }
    }
    const double frac = static_cast<double>(kept) / (100.0 * trials);
    EXPECT_NEAR(frac, 0.5, 0.01);
}

TEST(Add, Examples) {
    EXPECT_EQ(add({2, 1}, {1, 0}), (NestVector{1, 2}));
    EXPECT_EQ(add({1, 2, 3}, {0, 0, 0}), (NestVector{1, 2, 3}));
    EXPECT_EQ(add({1, 2, 3, 4}, {0, 0, 2, 0}), (NestVector{1, 3, 2, 4}));
    EXPECT_THROW(add({1, 2}, {0}), std::invalid_argument);
}

TEST(Add, FullChainReachesTheOtherNest) {
    // x + (x - y) with every entry kept is a sequence of swaps over x; it must stay a permutation.
    Rng rng(3);
    for (int t = 0; t < 1000; ++t) {
        const NestVector x = random_perm(9, rng), y = random_perm(9, rng);
        EXPECT_TRUE(is_perm(add(x, subtract(x, y))));
    }
}

TEST(OrderCrossover, HandTracedChild) {
    EXPECT_EQ(order_crossover_child({1, 2, 3, 4}, {4, 3, 2, 1}, 2, 3), (NestVector{4, 2, 3, 1}));
    EXPECT_EQ(order_crossover_child({1, 2, 3, 4}, {4, 3, 2, 1}, 1, 4), (NestVector{1, 2, 3, 4}));
    EXPECT_EQ(order_crossover_child({1, 2, 3, 4}, {4, 3, 2, 1}, 4, 4), (NestVector{3, 2, 1, 4}));
    EXPECT_THROW(order_crossover_child({1, 2}, {2, 1}, 2, 1), std::invalid_argument);
    EXPECT_THROW(order_crossover_child({1, 2}, {2, 1}, 1, 3), std::invalid_argument);
}

TEST(OrderCrossover, WindowsAreUniform) {
    Rng rng(4);
    std::map<std::pair<std::size_t, std::size_t>, int> counts;
    const int trials = 60000;
    for (int t = 0; t < trials; ++t) {
        const auto w = random_window(5, rng);
        ASSERT_GE(w.first, 1u);
        ASSERT_LE(w.first, w.second);
        ASSERT_LE(w.second, 5u);
        ++counts[w];
    }
    ASSERT_EQ(counts.size(), 15u);
    for (const auto& [w, c] : counts) EXPECT_NEAR(c, trials / 15.0, 400.0);
}

// Closure: every operator output is a permutation of 1..n.
TEST(Operators, OutputsArePermutations) {
    Rng rng(5);
    LevyParams p;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 19);
        const NestVector x = random_perm(n, rng), b = random_perm(n, rng), r = random_perm(n, rng);
        const int t = 1 + trial % p.t_max;
        ASSERT_TRUE(is_perm(levy_flight(x, b, r, t, p, rng)));
        ASSERT_TRUE(is_perm(add(x, multiply(rng.uniform01(), subtract(x, b), rng))));
        const auto [c1, c2] = order_crossover(x, b, rng);
        ASSERT_TRUE(is_perm(c1));
        ASSERT_TRUE(is_perm(c2));
    }
}

TEST(Operators, DeterministicUnderSeed) {
    auto run = [](std::uint64_t seed) {
        Rng rng(seed);
        NestVector x = random_perm(12, rng), b = random_perm(12, rng);
        std::vector<NestVector> out;
        for (int t = 1; t <= 50; ++t) {
            x = levy_flight(x, b, random_perm(12, rng), t, LevyParams{}, rng);
            out.push_back(x);
            out.push_back(order_crossover(x, b, rng).first);
        }
        return out;
    };
    EXPECT_EQ(run(17), run(17));
    EXPECT_NE(run(17), run(18));
}

TEST(Levy, RejectsIterationZero) {
    Rng rng(6);
    EXPECT_THROW(levy_flight({1, 2}, {2, 1}, {1, 2}, 0, LevyParams{}, rng), std::invalid_argument);
}

TEST(Levy, SelfMinuendChainIsANoOp) {
    Rng rng(8);
    for (int t = 0; t < 1000; ++t) {
        const NestVector x = random_perm(10, rng), y = random_perm(10, rng);
        EXPECT_EQ(add(x, subtract(x, y)), x);
    }
}

TEST(Levy, FixedPoints) {
    Rng rng(9);
    LevyParams p;
    const NestVector x{3, 1, 4, 2, 5};
    EXPECT_EQ(levy_flight(x, x, x, 7, p, rng), x);
    // sigma = 1 at t = 1, so every chain entry is dropped.
    EXPECT_EQ(levy_flight(x, {1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}, 1, p, rng), x);
}

TEST(Levy, LaterStepsKeepMoreOfTheChain) {
    Rng rng(7);
    LevyParams p;
    auto moved = [&](int t) {
        long total = 0;
        for (int k = 0; k < 2000; ++k) {
            const NestVector x = random_perm(20, rng), b = random_perm(20, rng);
            const NestVector y = levy_flight(x, b, b, t, p, rng);
            for (std::size_t i = 0; i < x.size(); ++i) total += x[i] != y[i];
        }
        return total;
    };
    EXPECT_LT(moved(2), moved(150));
}

TEST(Accept, StrictOnly) {
    EXPECT_TRUE(accept(4, 5));
    EXPECT_FALSE(accept(5, 5));
    EXPECT_FALSE(accept(6, 5));
}
