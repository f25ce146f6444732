#include <gtest/gtest.h>

#include <cmath>

#include "qkdsec/bounds.hpp"

using namespace qkdsec;

namespace {

FiniteKeyParams fixture() {
  FiniteKeyParams p;
  p.n = 1000000;
  p.qber = 0.02;
  p.mu = 0.005;
  p.leak_ec = FiniteKeyParams::default_leak_ec(p.n, p.qber);
  p.p_fail = 1e-10;
  p.eps_bar = 1e-10;
  p.eps_cor = 1e-15;
  return p;
}

}  // namespace

TEST(YuenBound, Examples) {
  EXPECT_EQ(yuen_upper_bound(0.0, 8).log2(), -8.0);
  EXPECT_NEAR(yuen_upper_bound(1e-6, 10000).log10(), -6.0, 1e-12);
  EXPECT_EQ(yuen_upper_bound(0.0625, 4).log2(), -3.0);
  EXPECT_THROW(yuen_upper_bound(1.5, 4), DomainError);
  EXPECT_THROW(yuen_upper_bound(0.1, 0), DomainError);
}

TEST(MarkovBound, Examples) {
  EXPECT_NEAR(markov_individual_bound(1e-6, 10000).log10(), -2.0, 1e-12);
  EXPECT_EQ(markov_individual_bound(0.0, 12).log2(), -12.0);
  // 50-digit value of 10^(-14/3)
  EXPECT_NEAR(markov_individual_bound(1e-14, 10000).value(), 2.1544346900318837e-5, 1e-19);
}

TEST(Bounds, MonotoneInEpsBarAndKeyLength) {
  for (long long l : {1LL, 4LL, 16LL, 100LL, 10000LL}) {
    LogProb py = LogProb::zero(), pm = LogProb::zero();
    for (int i = 0; i <= 40; ++i) {
      const double e = i == 0 ? 0.0 : std::pow(10.0, -20.0 + 0.5 * i);
      const auto y = yuen_upper_bound(std::min(e, 1.0), l);
      const auto m = markov_individual_bound(std::min(e, 1.0), l);
      EXPECT_GE(y, py);
      EXPECT_GE(m, pm);
      py = y;
      pm = m;
      EXPECT_LE(yuen_upper_bound(std::min(e, 1.0), l + 1), y);
      EXPECT_LE(markov_individual_bound(std::min(e, 1.0), l + 1), m);
    }
  }
}

TEST(Leakage, Examples) {
  const auto a = leakage_profile(10000, 1e-2);
  EXPECT_NEAR(a.f, 6.6438561897747247, 1e-13);
  EXPECT_NEAR(a.leaked_bits, 1505.1499783199060, 1e-9);
  const auto b = leakage_profile(777, 0.5);
  EXPECT_EQ(b.f, 1.0);
  EXPECT_EQ(b.leaked_bits, 777.0);
  const auto c = leakage_profile(10000, required_epsilon(10000));
  EXPECT_EQ(c.f, 10000.0);
  EXPECT_EQ(c.leaked_bits, 1.0);
  EXPECT_THROW(leakage_profile(10, 0.0), DomainError);
  EXPECT_THROW(leakage_profile(10, 1.0), DomainError);
  EXPECT_THROW(leakage_profile(10, LogProb::one()), DomainError);
  EXPECT_THROW(leakage_profile(10, LogProb::zero()), DomainError);
}

TEST(Leakage, AlternativeReadingIsNotABitCount) {
  EXPECT_LT(leaked_bits_l_over_log2_inv_l(10000), 0.0);
  EXPECT_NEAR(leaked_bits_l_over_log2_inv_l(10000), -10000.0 / std::log2(10000.0), 1e-9);
}

TEST(RequiredEpsilon, Examples) {
  EXPECT_NEAR(required_epsilon(10000).log10(), -3010.2999566398119521, 1e-9);
  EXPECT_EQ(required_epsilon(1).value(), 0.5);
  EXPECT_EQ(required_epsilon(10).value(), 9.765625e-4);
}

TEST(FiniteKey, HighPrecisionFixture) {
  // 50-digit evaluation of the same expression: 675670.42350495...
  EXPECT_NEAR(extractable_key_length_real(fixture()), 675670.4235049549, 1e-6);
  EXPECT_EQ(extractable_key_length(fixture()), 675670);
}

TEST(FiniteKey, HalfErrorRateLeavesNothing) {
  auto p = fixture();
  p.qber = 0.3;
  p.mu = 0.2;
  p.leak_ec = 0;
  EXPECT_EQ(extractable_key_length(p), 0);
  p.mu = 0.7;
  EXPECT_EQ(extractable_key_length(p), 0);
}

TEST(FiniteKey, Validation) {
  auto p = fixture();
  p.n = 0;
  EXPECT_THROW(extractable_key_length(p), DomainError);
  p = fixture();
  p.qber = 0.8;
  p.mu = 0.3;
  EXPECT_THROW(extractable_key_length(p), DomainError);
  p = fixture();
  p.eps_bar = 0.0;
  EXPECT_THROW(extractable_key_length(p), DomainError);
  p = fixture();
  p.leak_ec = -1;
  EXPECT_THROW(extractable_key_length(p), DomainError);
}

TEST(FiniteKey, MonotoneInEveryParameter) {
  const auto base = fixture();
  auto len = [](FiniteKeyParams p) { return extractable_key_length(p); };
  for (int i = 0; i < 10; ++i) {
    auto a = base, b = base;
    a.qber = 0.01 * i;
    b.qber = 0.01 * (i + 1);
    EXPECT_GE(len(a), len(b));
    a = b = base;
    a.mu = 0.005 * i;
    b.mu = 0.005 * (i + 1);
    EXPECT_GE(len(a), len(b));
    a = b = base;
    a.leak_ec = 1e4 * i;
    b.leak_ec = 1e4 * (i + 1);
    EXPECT_GE(len(a), len(b));
    a = b = base;
    a.eps_bar = std::pow(10.0, -20 + i);
    b.eps_bar = std::pow(10.0, -19 + i);
    EXPECT_LE(len(a), len(b));
    a = b = base;
    a.eps_cor = std::pow(10.0, -20 + i);
    b.eps_cor = std::pow(10.0, -19 + i);
    EXPECT_LE(len(a), len(b));
    a = b = base;
    a.n = 100000 * (i + 1);
    b.n = 100000 * (i + 2);
    a.leak_ec = FiniteKeyParams::default_leak_ec(a.n, a.qber);
    b.leak_ec = FiniteKeyParams::default_leak_ec(b.n, b.qber);
    EXPECT_LE(len(a), len(b));
  }
}

TEST(FiniteKey, LargerEpsBarNeverShortensKey) {
  auto a = fixture(), b = fixture();
  a.eps_bar = 1e-12;
  b.eps_bar = 1e-3;
  EXPECT_LT(extractable_key_length(a), extractable_key_length(b));
}

TEST(SamplingFluctuation, ClosedForm) {
  const double v = sampling_fluctuation(1000, 100, 1e-10);
  EXPECT_NEAR(v, std::sqrt(1100.0 / 100000.0 * 101.0 / 100.0 * std::log(1e10)), 1e-15);
  EXPECT_THROW(sampling_fluctuation(0, 1, 0.5), DomainError);
  EXPECT_THROW(sampling_fluctuation(10, 1, 1.0), DomainError);
}

TEST(SecurityRate, TradeoffPresetLargeBlock) {
  const auto sol = epsilon_for_security_rate(1e-14, tradeoff_preset(10000000));
  EXPECT_GE(sol.rate, 1e-2);
  EXPECT_LT(sol.rate, 1.0);
  // the solution meets the target and sits within the bisection tolerance
  EXPECT_LE(sol.eps_bar / static_cast<double>(sol.l), 1e-14);
  auto p = tradeoff_preset(10000000);
  p.eps_bar = sol.eps_bar * 1.002;
  EXPECT_GT(p.eps_bar / static_cast<double>(extractable_key_length(p)), 1e-14);
  EXPECT_LE(sol.iterations, 200);
}

TEST(SecurityRate, TradeoffPresetSmallBlock) {
  const auto big = epsilon_for_security_rate(1e-14, tradeoff_preset(10000000));
  try {
    const auto small = epsilon_for_security_rate(1e-14, tradeoff_preset(10000));
    EXPECT_LE(small.rate, big.rate / 10.0);
  } catch (const NoSolutionError&) {
    SUCCEED();
  }
}

TEST(SecurityRate, RateGrowsWithBlockLength) {
  double prev = 0.0;
  for (std::int64_t n : {100000, 1000000, 10000000}) {
    const auto s = epsilon_for_security_rate(1e-14, tradeoff_preset(n));
    EXPECT_GT(s.rate, prev);
    prev = s.rate;
  }
}

TEST(SecurityRate, NoSolution) {
  auto p = tradeoff_preset(10);
  EXPECT_THROW(epsilon_for_security_rate(1.0, p), NoSolutionError);
  EXPECT_THROW(epsilon_for_security_rate(1e-14, tradeoff_preset(10000)), NoSolutionError);
  EXPECT_THROW(epsilon_for_security_rate(0.0, fixture()), DomainError);
}

TEST(SecurityRate, EasyTargetReturnsEpsBarOne) {
  auto p = fixture();
  const auto s = epsilon_for_security_rate(1.0, p);
  EXPECT_EQ(s.eps_bar, 1.0);
  EXPECT_EQ(s.iterations, 0);
}

TEST(Pipeline, Examples) {
  const auto a = pipeline_efficiency(50e9, 300e3);
  EXPECT_EQ(a.value, 6e-6);
  EXPECT_FALSE(a.exceeds_raw);
  EXPECT_EQ(pipeline_efficiency(7.0, 7.0).value, 1.0);
  const auto c = pipeline_efficiency(1.0, 2.0);
  EXPECT_EQ(c.value, 2.0);
  EXPECT_TRUE(c.exceeds_raw);
  EXPECT_THROW(pipeline_efficiency(0.0, 1.0), DomainError);
  EXPECT_THROW(pipeline_efficiency(1.0, -1.0), DomainError);
}
