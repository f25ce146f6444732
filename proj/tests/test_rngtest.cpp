#include <gtest/gtest.h>

#include <cmath>

#include "qkdsec/rngtest.hpp"

using namespace qkdsec;

namespace {

double mean_empirical(const SourceModel& m, unsigned block_len, std::size_t count) {
  double s = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) s += empirical_distance(sample_blocks(m, block_len, count, seed));
  return s / 10.0;
}

}  // namespace

TEST(SplitMix, ReferenceOutputs) {
  // first outputs of the reference generator
  EXPECT_EQ(splitmix64(0, 0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(42, 0), 0xbdd732262feb6e95ULL);
  EXPECT_EQ(splitmix64(42, 1), 0x28efe333b266f103ULL);
}

TEST(SourceModel, Validation) {
  EXPECT_THROW(SourceModel::iid(0.6), DomainError);
  EXPECT_THROW(SourceModel::markov(1.2, 0.1, 0.5), DomainError);
  EXPECT_THROW(SourceModel::markov(ConditionalChannel::identity(2), Distribution::uniform(1).to_dense()),
               DimensionError);
}

TEST(Sampling, DeterministicPerSeed) {
  const auto m = SourceModel::iid(0.0);
  const auto a = sample_blocks(m, 1, 1, 99), b = sample_blocks(m, 1, 1, 99);
  EXPECT_EQ(a.values(), b.values());
  EXPECT_EQ(a.count(), 1U);
  EXPECT_EQ(a.seed(), 99U);
  const auto c = sample_blocks(SourceModel::markov(0.2, 0.3, 0.5), 12, 1000, 5);
  EXPECT_EQ(c.values(), sample_blocks(SourceModel::markov(0.2, 0.3, 0.5), 12, 1000, 5).values());
}

TEST(Sampling, PrefixStable) {
  // counter-based: the first blocks do not depend on how many are drawn
  const auto m = SourceModel::iid(0.1);
  const auto small = sample_blocks(m, 8, 10, 3), big = sample_blocks(m, 8, 1000, 3);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(small.values()[i], big.values()[i]);
}

TEST(Sampling, DegenerateSource) {
  const auto s = sample_blocks(SourceModel::iid(0.5), 16, 100, 1);
  for (auto v : s.values()) ASSERT_EQ(v, 0xFFFFU);
  const auto z = sample_blocks(SourceModel::iid(-0.5), 5, 100, 1);
  for (auto v : z.values()) ASSERT_EQ(v, 0U);
}

TEST(Sampling, GoldenFixtures) {
  // recomputed with an independent SplitMix64 implementation
  const auto s = sample_blocks(SourceModel::iid(1e-3), 1, 1000000, 42);
  std::size_t ones = 0;
  for (auto v : s.values()) ones += v;
  EXPECT_EQ(ones, 500795U);
  const auto b = sample_blocks(SourceModel::iid(0.25), 8, 4, 7);
  EXPECT_EQ(b.values(), (std::vector<std::uint32_t>{223, 225, 111, 53}));
  EXPECT_EQ(b.block(0).to_string(), "11011111");
}

TEST(Sampling, Errors) {
  EXPECT_THROW(sample_blocks(SourceModel::iid(0), 17, 1, 0), DomainError);
  EXPECT_THROW(sample_blocks(SourceModel::iid(0), 0, 1, 0), DomainError);
  EXPECT_THROW(sample_blocks(SourceModel::iid(0), 4, 0, 0), DomainError);
  EXPECT_THROW(SampleSet(2, 0, {4}), InvariantError);
}

TEST(ModelDistance, Examples) {
  EXPECT_EQ(model_distance_to_uniform(SourceModel::iid(0.0), 8), 0.0);
  for (double beta : {1e-4, -3e-3, 0.1, 0.5}) {
    EXPECT_EQ(model_distance_to_uniform(SourceModel::iid(beta), 1), std::abs(beta));
  }
  // 50-digit summation over the 256 blocks
  EXPECT_NEAR(model_distance_to_uniform(SourceModel::iid(1e-4), 8), 2.1877186624868771e-4, 1e-18);
}

TEST(ModelDistance, MarkovReducesToIid) {
  for (double beta : {0.0, 1e-3, 0.2}) {
    const auto m = SourceModel::markov(0.5 + beta, 0.5 - beta, 0.5 + beta);
    for (unsigned L : {1U, 4U, 10U}) {
      EXPECT_NEAR(model_distance_to_uniform(m, L), model_distance_to_uniform(SourceModel::iid(beta), L), 1e-14);
    }
  }
}

TEST(ModelDistance, StickyChainIsFarFromUniform) {
  // always repeats: only 00..0 and 11..1 occur
  const auto m = SourceModel::markov(0.0, 0.0, 0.5);
  EXPECT_NEAR(model_distance_to_uniform(m, 4), 1.0 - 2.0 / 16.0, 1e-15);
}

TEST(EmpiricalDistance, Examples) {
  EXPECT_EQ(empirical_distance(sample_blocks(SourceModel::iid(0), 1, 1, 0)), 0.5);
  EXPECT_EQ(empirical_distance(SampleSet(1, 0, {0, 1})), 0.0);
}

TEST(EmpiricalDistance, ShrinksLikeInverseRootN) {
  const auto m = SourceModel::iid(0.0);
  const double a = mean_empirical(m, 4, 10000), b = mean_empirical(m, 4, 1000000);
  const double ratio = a / b;  // sqrt(100) expected
  EXPECT_GT(ratio, 5.0);
  EXPECT_LT(ratio, 15.0);
}

TEST(EmpiricalDistance, ConvergesToModel) {
  const auto m = SourceModel::iid(1e-2);
  const double model = model_distance_to_uniform(m, 2);
  auto gap = [&](std::size_t n) {
    double s = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      s += std::abs(empirical_distance(sample_blocks(m, 2, n, seed)) - model);
    }
    return s / 10.0;
  };
  const double g_small = gap(10000), g_big = gap(1000000);
  EXPECT_LT(g_big, g_small);
  EXPECT_LT(g_big, 0.1 * model);
}

TEST(UniformityReport, Examples) {
  const auto a = uniformity_failure_report(SampleSet(1, 0, {0, 1}));
  EXPECT_TRUE(a.exactly_uniform);
  EXPECT_EQ(a.independent_failure.value(), 0.5);
  for (std::uint32_t x : {0U, 1U}) {
    EXPECT_FALSE(uniformity_failure_report(SampleSet(1, 0, {x, 1, 0})).exactly_uniform);
  }
}

TEST(UniformityReport, DecouplingFixture) {
  const auto s = sample_blocks(SourceModel::iid(1e-4), 8, 1000000, 2024);
  const auto r = uniformity_failure_report(s);
  EXPECT_FALSE(r.exactly_uniform);
  EXPECT_GT(r.empirical_delta, 1e-3);
  EXPECT_LT(r.empirical_delta, 5e-2);
  EXPECT_EQ(r.independent_failure.complement_log2(), -8.0);
  EXPECT_EQ(r.independent_failure.value(), 1.0 - 1.0 / 256.0);
}

TEST(UniformityReport, FailureDependsOnlyOnBlockLength) {
  for (unsigned L : {1U, 3U, 8U}) {
    const auto a = uniformity_failure_report(sample_blocks(SourceModel::iid(0.0), L, 1000, 1));
    const auto b = uniformity_failure_report(sample_blocks(SourceModel::markov(0.01, 0.9, 0.1), L, 5, 77));
    EXPECT_EQ(a.independent_failure, b.independent_failure);
    EXPECT_EQ(a.independent_failure.value(), independent_coupling_failure(L).value());
  }
}
