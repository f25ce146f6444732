#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qkdsec/bitstring.hpp"
#include "qkdsec/coupling.hpp"
#include "qkdsec/errors.hpp"
#include "qkdsec/logprob.hpp"
#include "qkdsec/probdist.hpp"

namespace qkdsec {

inline constexpr unsigned kMaxBlockLen = 16;

/// Counter-based SplitMix64 (Steele, Lea & Flood, 2014): output number
/// `counter` of the SplitMix64 stream started at state `seed`. Every block bit
/// has its own counter, so results do not depend on generation order.
inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Top 53 bits as a double in [0, 1).
inline double unit_double(std::uint64_t r) { return static_cast<double>(r >> 11) * 0x1.0p-53; }

struct IidBernoulli {
  double bias = 0.0;  // P(1) = 0.5 + bias
};

struct MarkovSource {
  ConditionalChannel transition;  // 1 bit -> 1 bit
  Distribution initial;           // 1 bit
};

/// A binary randomness source: i.i.d. biased bits or a first-order Markov chain.
class SourceModel {
 public:
  static SourceModel iid(double bias) {
    if (!(bias >= -0.5 && bias <= 0.5)) throw DomainError("bias must lie in [-0.5, 0.5]");
    return SourceModel(IidBernoulli{bias});
  }

  static SourceModel markov(ConditionalChannel transition, Distribution initial) {
    if (transition.in_bits() != 1 || transition.out_bits() != 1 || initial.outcome_bits() != 1) {
      throw DimensionError("Markov source needs a 1-bit transition channel and a 1-bit initial distribution");
    }
    return SourceModel(MarkovSource{std::move(transition), std::move(initial)});
  }

  // Markov chain from the two flip probabilities P(1|0) and P(0|1).
  static SourceModel markov(double p01, double p10, double initial_one) {
    auto row = [](double p_one) { return Distribution::dense(1, {1.0 - p_one, p_one}); };
    if (!(p01 >= 0 && p01 <= 1 && p10 >= 0 && p10 <= 1 && initial_one >= 0 && initial_one <= 1)) {
      throw DomainError("Markov transition and initial probabilities must lie in [0, 1]");
    }
    return markov(ConditionalChannel(1, 1, {row(p01), row(1.0 - p10)}), row(initial_one));
  }

  bool is_iid() const { return std::holds_alternative<IidBernoulli>(model_); }
  const IidBernoulli& iid_params() const { return std::get<IidBernoulli>(model_); }
  const MarkovSource& markov_params() const { return std::get<MarkovSource>(model_); }

  // Probability that the next bit is 1 given the previous one (ignored for iid;
  // prev < 0 means "first bit").
  double p_one(int prev) const {
    if (const auto* b = std::get_if<IidBernoulli>(&model_)) return 0.5 + b->bias;
    const auto& m = std::get<MarkovSource>(model_);
    if (prev < 0) return m.initial.probability(std::uint64_t{1});
    return m.transition.row(static_cast<std::size_t>(prev)).probability(std::uint64_t{1});
  }

 private:
  explicit SourceModel(std::variant<IidBernoulli, MarkovSource> m) : model_(std::move(m)) {}
  std::variant<IidBernoulli, MarkovSource> model_;
};

/// Blocks drawn from a source. Block values are stored as their MSB-first
/// integer index.
class SampleSet {
 public:
  SampleSet(unsigned block_len, std::uint64_t seed, std::vector<std::uint32_t> values)
      : block_len_(block_len), seed_(seed), values_(std::move(values)) {
    if (block_len_ < 1 || block_len_ > kMaxBlockLen) throw DomainError("block length must lie in [1, 16]");
    for (auto v : values_) {
      if (v >> block_len_) throw InvariantError("block value exceeds block length");
    }
  }

  unsigned block_len() const { return block_len_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t count() const { return values_.size(); }
  const std::vector<std::uint32_t>& values() const { return values_; }
  BitString block(std::size_t i) const { return BitString::from_index(values_.at(i), block_len_); }

  std::vector<std::uint64_t> histogram() const {
    std::vector<std::uint64_t> h(std::size_t{1} << block_len_, 0);
    for (auto v : values_) ++h[v];
    return h;
  }

 private:
  unsigned block_len_;
  std::uint64_t seed_;
  std::vector<std::uint32_t> values_;
};

/// Deterministic for fixed (model, block_len, count, seed). Bit j of block b
/// uses SplitMix64 output number b * block_len + j.
inline SampleSet sample_blocks(const SourceModel& model, unsigned block_len, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw DomainError("sample count must be at least 1");
  if (block_len < 1 || block_len > kMaxBlockLen) throw DomainError("block length must lie in [1, 16]");
  std::vector<std::uint32_t> values(count);
  const bool iid = model.is_iid();
  const double p_iid = iid ? model.p_one(-1) : 0.0;
  for (std::size_t b = 0; b < count; ++b) {
    std::uint32_t v = 0;
    int prev = -1;
    for (unsigned j = 0; j < block_len; ++j) {
      const double p1 = iid ? p_iid : model.p_one(prev);
      const double u = unit_double(splitmix64(seed, static_cast<std::uint64_t>(b) * block_len + j));
      const int bit = u < p1 ? 1 : 0;
      v = (v << 1) | static_cast<std::uint32_t>(bit);
      prev = bit;
    }
    values[b] = v;
  }
  return SampleSet(block_len, seed, std::move(values));
}

/// Exact delta between the model's block distribution and uniform.
///
/// For the i.i.d. model the deviation from 2^-L is built up bit by bit,
///   d_L = s beta 2^-(L-1) + (1/2 + s beta) d_(L-1),
/// which keeps single-bit blocks exact (delta = |beta| with no rounding).
inline double model_distance_to_uniform(const SourceModel& model, unsigned block_len) {
  if (block_len < 1 || block_len > kMaxBlockLen) throw DomainError("block length must lie in [1, 16]");
  const std::size_t n = std::size_t{1} << block_len;
  double sum = 0.0;
  if (model.is_iid()) {
    const double beta = model.iid_params().bias;
    for (std::size_t x = 0; x < n; ++x) {
      double dev = 0.0;
      for (unsigned j = 0; j < block_len; ++j) {
        const bool one = (x >> (block_len - 1 - j)) & 1U;
        const double sb = one ? beta : -beta;
        dev = sb * std::ldexp(1.0, -static_cast<int>(j)) + (0.5 + sb) * dev;
      }
      sum += std::abs(dev);
    }
    return 0.5 * sum;
  }
  const double u = std::ldexp(1.0, -static_cast<int>(block_len));
  for (std::size_t x = 0; x < n; ++x) {
    double p = 1.0;
    int prev = -1;
    for (unsigned j = 0; j < block_len; ++j) {
      const int bit = static_cast<int>((x >> (block_len - 1 - j)) & 1U);
      const double p1 = model.p_one(prev);
      p *= bit ? p1 : 1.0 - p1;
      prev = bit;
    }
    sum += std::abs(p - u);
  }
  return 0.5 * sum;
}

/// delta between the empirical block frequencies and uniform.
inline double empirical_distance(const SampleSet& s) {
  const auto h = s.histogram();
  const double n = static_cast<double>(s.count());
  const double u = 1.0 / static_cast<double>(h.size());
  double sum = 0.0;
  for (auto c : h) sum += std::abs(static_cast<double>(c) / n - u);
  return 0.5 * sum;
}

struct UniformityFailureReport {
  double empirical_delta;
  bool exactly_uniform;      // every block value seen exactly count / 2^L times
  LogProb independent_failure;  // 1 - 2^-L; depends on L alone
};

inline UniformityFailureReport uniformity_failure_report(const SampleSet& s) {
  const auto h = s.histogram();
  const std::size_t cells = h.size();
  bool exact = s.count() % cells == 0;
  if (exact) {
    const std::uint64_t want = s.count() / cells;
    for (auto c : h) {
      if (c != want) {
        exact = false;
        break;
      }
    }
  }
  return {empirical_distance(s), exact, independent_coupling_failure(s.block_len())};
}

}  // namespace qkdsec
