#include <gtest/gtest.h>

#include <cmath>

#include "swapmatch/bench.hpp"

using namespace swapmatch;

TEST(GenRandomText, DeterministicAndInRange) {
    const std::string a = gen_random_text(2, 8, 5);
    EXPECT_EQ(a, gen_random_text(2, 8, 5));
    EXPECT_EQ(a.size(), 8U);
    EXPECT_NE(gen_random_text(4, 64, 5), gen_random_text(4, 64, 6));
    for (char c : gen_random_text(7, 1000, 1)) EXPECT_LT(static_cast<unsigned char>(c), 7);
    EXPECT_THROW(gen_random_text(1, 8, 1), std::invalid_argument);
    EXPECT_THROW(gen_random_text(257, 8, 1), std::invalid_argument);
    EXPECT_THROW(gen_random_text(4, 0, 1), std::invalid_argument);
}

TEST(GenRandomText, FrequenciesNearUniform) {
    const std::string t = gen_random_text(4, std::size_t{4} << 20, 7);
    ASSERT_EQ(t.size(), 4194304U);
    std::array<std::size_t, 4> counts{};
    for (char c : t) ++counts[static_cast<unsigned char>(c)];
    double chi2 = 0;
    const double expected = static_cast<double>(t.size()) / 4;
    for (auto c : counts) {
        EXPECT_NEAR(static_cast<double>(c) / expected, 1.0, 0.01);
        chi2 += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    }
    // 3 degrees of freedom; 16.27 is the 0.999 quantile.
    EXPECT_LT(chi2, 16.27);
}

TEST(SamplePatterns, HalfRandomHalfExtracted) {
    const std::string t = gen_random_text(4, 5000, 3);
    const auto ps = sample_patterns(t, 8, 100, 9);
    ASSERT_EQ(ps.size(), 100U);
    for (std::size_t k = 50; k < 100; ++k) EXPECT_NE(t.find(ps[k].str()), std::string::npos);
    for (const auto& p : ps) {
        EXPECT_EQ(p.size(), 8U);
        for (char c : p.str()) EXPECT_LT(static_cast<unsigned char>(c), 4);
    }
    const auto odd = sample_patterns(t, 8, 5, 9);
    EXPECT_EQ(odd.size(), 5U);
}

TEST(SamplePatterns, EdgeCases) {
    const std::string t = "abcdefgh";
    const auto ps = sample_patterns(t, 8, 2, 1);
    EXPECT_EQ(ps[1].str(), t);
    EXPECT_THROW(sample_patterns(t, 9, 2, 1), std::invalid_argument);
    EXPECT_THROW(sample_patterns(t, 4, 1, 1), std::invalid_argument);
    EXPECT_EQ(sample_patterns(t, 4, 10, 1).size(), 10U);
}

TEST(SamplePatterns, Deterministic) {
    const std::string t = gen_random_text(8, 1000, 3);
    const auto a = sample_patterns(t, 6, 20, 4);
    const auto b = sample_patterns(t, 6, 20, 4);
    EXPECT_EQ(a, b);
}

TEST(BenchAlgo, Names) {
    EXPECT_EQ(parse_bench_algo("smalgo1"), BenchAlgo::smalgo1);
    EXPECT_EQ(parse_bench_algo("dp"), BenchAlgo::dp);
    EXPECT_FALSE(parse_bench_algo("shiftand").has_value());
    EXPECT_STREQ(algo_name(BenchAlgo::oracle), "oracle");
}

TEST(RunBench, StructureAndConsistency) {
    auto prob = BenchProblem::random(4, 20000, 2);
    prob.patterns_per_length = 6;
    const std::vector<BenchAlgo> algos{BenchAlgo::smalgo1, BenchAlgo::smalgo2, BenchAlgo::dp, BenchAlgo::oracle};
    const BenchReport r = run_bench({prob}, algos, 1);
    EXPECT_EQ(r.rows.size(), 4U * 8U);
    EXPECT_TRUE(r.consistent());
    for (const auto& row : r.rows) {
        EXPECT_FALSE(row.error.has_value());
        EXPECT_EQ(row.problem, "Rand4");
        EXPECT_EQ(row.n, 20000U);
        EXPECT_EQ(row.patterns, 6U);
        EXPECT_GT(row.matches, 0U);
        EXPECT_GE(row.search_ms, 0.0);
    }
    const std::string csv = r.to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "algo,problem,sigma,m,n,patterns,prep_ms,search_ms,matches");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 33);
    const std::string table = r.to_table();
    EXPECT_NE(table.find("Rand4 (sigma=4, n=20000, patterns=6, search ms)"), std::string::npos);
    EXPECT_NE(table.find("smalgo1"), std::string::npos);
}

TEST(RunBench, MissingCorpusGivesErrorRow) {
    auto good = BenchProblem::random(2, 1000, 1);
    good.lengths = {4};
    good.patterns_per_length = 2;
    auto missing = BenchProblem::corpus("/nonexistent/corpus.txt");
    missing.lengths = {4};
    const BenchReport r = run_bench({missing, good}, {BenchAlgo::smalgo2}, 1);
    ASSERT_EQ(r.rows.size(), 2U);
    EXPECT_TRUE(r.rows[0].error.has_value());
    EXPECT_EQ(r.rows[0].algo, "error");
    EXPECT_FALSE(r.rows[1].error.has_value());
    EXPECT_TRUE(r.consistent());
}

TEST(RunBench, OversizedPatternGivesErrorRow) {
    auto p = BenchProblem::random(2, 10, 1);
    p.lengths = {4, 16};
    p.patterns_per_length = 2;
    const BenchReport r = run_bench({p}, {BenchAlgo::smalgo1}, 1);
    ASSERT_EQ(r.rows.size(), 2U);
    EXPECT_FALSE(r.rows[0].error.has_value());
    EXPECT_TRUE(r.rows[1].error.has_value());
}

TEST(RunBench, RejectsEmptyInputs) {
    EXPECT_THROW(run_bench({}, {BenchAlgo::dp}, 1), std::invalid_argument);
    EXPECT_THROW(run_bench({BenchProblem::random(2, 10, 1)}, {}, 1), std::invalid_argument);
}
