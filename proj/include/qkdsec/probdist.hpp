#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qkdsec/bitstring.hpp"
#include "qkdsec/errors.hpp"

/// Exact finite distributions over fixed-length bitstrings, plus the distance,
/// entropy and guessing-probability functionals the other modules build on.
namespace qkdsec {

inline constexpr unsigned kMaxDenseBits = 20;
inline constexpr double kSumTolerance = 1e-9;

namespace detail {

inline std::size_t outcome_count(unsigned bits) { return std::size_t{1} << bits; }

// Validates masses, renormalizing when the sum is off by less than the
// tolerance. Throws InvariantError otherwise.
inline void normalize_masses(std::vector<double>& masses, const char* what) {
  double sum = 0.0;
  for (double m : masses) {
    if (!std::isfinite(m) || m < 0.0) {
      throw InvariantError(std::string(what) + ": masses must be finite and nonnegative");
    }
    sum += m;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw InvariantError(std::string(what) + ": masses sum to " + std::to_string(sum) +
                         ", not 1 within 1e-9");
  }
  // Leave sums that are 1 up to accumulated rounding alone, so written
  // distributions read back bit for bit.
  const double noise = 4.0 * static_cast<double>(masses.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(sum - 1.0) > noise) {
    for (double& m : masses) m /= sum;
  }
}

// Lowest index attaining the maximum.
inline std::size_t argmax_lowest(std::span<const double> xs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] > xs[best]) best = i;
  }
  return best;
}

}  // namespace detail

/// Probability mass function over bitstrings of length `outcome_bits`.
///
/// Two storage forms exist. Dense form keeps one mass per outcome and is
/// limited to 20 bits. Spike form represents eps * point(k*) + (1 - eps) *
/// uniform and works for any length; uniform(l) is the spike form with eps = 0.
/// Lookups on a spike and on its dense expansion return identical doubles.
class Distribution {
 public:
  static Distribution dense(unsigned outcome_bits, std::vector<double> masses) {
    if (outcome_bits > kMaxDenseBits) {
      throw ScaleError("dense distributions are limited to 20 outcome bits");
    }
    if (masses.size() != detail::outcome_count(outcome_bits)) {
      throw DimensionError("expected " + std::to_string(detail::outcome_count(outcome_bits)) +
                           " masses for " + std::to_string(outcome_bits) + " outcome bits, got " +
                           std::to_string(masses.size()));
    }
    detail::normalize_masses(masses, "distribution");
    return Distribution(outcome_bits, std::move(masses));
  }

  static Distribution spike(const BitString& outcome, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw DomainError("spike mass must lie in [0, 1]");
    }
    return Distribution(outcome, epsilon);
  }

  static Distribution uniform(unsigned outcome_bits) {
    return Distribution(BitString::zeros(outcome_bits), 0.0);
  }

  static Distribution point(const BitString& outcome) { return spike(outcome, 1.0); }

  static Distribution point(unsigned outcome_bits, std::uint64_t index) {
    return point(BitString::from_index(index, outcome_bits));
  }

  unsigned outcome_bits() const { return bits_; }
  bool is_spike() const { return spike_.has_value(); }
  bool dense_representable() const { return bits_ <= kMaxDenseBits; }

  // 2^outcome_bits; only meaningful for dense-representable spaces.
  std::size_t outcome_count() const {
    require_dense_representable();
    return detail::outcome_count(bits_);
  }

  const BitString& spike_outcome() const { return spike_.value().outcome; }
  double spike_mass() const { return spike_.value().mass; }

  double probability(std::uint64_t index) const {
    if (spike_) return spike_probability(index == spike_index());
    return masses_.at(index);
  }

  double probability(const BitString& outcome) const {
    if (outcome.size() != bits_) throw DimensionError("outcome length does not match distribution");
    if (spike_) return spike_probability(outcome == spike_->outcome);
    return masses_.at(outcome.to_index());
  }

  // Mass every non-spike outcome receives; (1 - eps) 2^-l, possibly 0 after
  // underflow for very long keys.
  double background_mass() const {
    return (1.0 - spike_.value().mass) * std::ldexp(1.0, -static_cast<int>(std::min(bits_, 2000U)));
  }

  Distribution to_dense() const {
    if (!spike_) return *this;
    require_dense_representable();
    std::vector<double> m(detail::outcome_count(bits_));
    const std::uint64_t star = spike_index();
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = spike_probability(i == star);
    return Distribution(bits_, std::move(m));
  }

  // Masses in index order. Expands spike form on demand.
  std::vector<double> masses() const {
    if (!spike_) return masses_;
    return to_dense().masses_;
  }

  // Borrowed view, dense form only.
  std::span<const double> dense_masses() const {
    if (spike_) throw Error("dense_masses() called on spike-form distribution");
    return masses_;
  }

 private:
  struct Spike {
    BitString outcome;
    double mass;
  };

  Distribution(unsigned bits, std::vector<double> masses) : bits_(bits), masses_(std::move(masses)) {}
  Distribution(const BitString& outcome, double eps)
      : bits_(static_cast<unsigned>(outcome.size())), spike_(Spike{outcome, eps}) {}

  void require_dense_representable() const {
    if (!dense_representable()) {
      throw ScaleError("operation needs a dense outcome space (at most 20 bits), got " +
                       std::to_string(bits_));
    }
  }

  std::uint64_t spike_index() const { return spike_->outcome.to_index(); }

  double spike_probability(bool at_spike) const {
    const double bg = background_mass();
    return at_spike ? spike_->mass + bg : bg;
  }

  unsigned bits_ = 0;
  std::vector<double> masses_;
  std::optional<Spike> spike_;
};

/// Joint mass function over (x, y) bitstring pairs, stored row-major in x.
class JointDistribution {
 public:
  JointDistribution(unsigned x_bits, unsigned y_bits, std::vector<double> masses)
      : x_bits_(x_bits), y_bits_(y_bits), masses_(std::move(masses)) {
    if (x_bits + y_bits > kMaxDenseBits) {
      throw ScaleError("joint distributions are limited to 20 total bits");
    }
    if (masses_.size() != detail::outcome_count(x_bits + y_bits)) {
      throw DimensionError("joint mass table has the wrong size");
    }
    detail::normalize_masses(masses_, "joint distribution");
  }

  static JointDistribution product(const Distribution& p, const Distribution& q) {
    const auto pm = p.masses();
    const auto qm = q.masses();
    std::vector<double> m(pm.size() * qm.size());
    for (std::size_t x = 0; x < pm.size(); ++x) {
      for (std::size_t y = 0; y < qm.size(); ++y) m[x * qm.size() + y] = pm[x] * qm[y];
    }
    return JointDistribution(p.outcome_bits(), q.outcome_bits(), std::move(m));
  }

  unsigned x_bits() const { return x_bits_; }
  unsigned y_bits() const { return y_bits_; }
  std::size_t x_count() const { return detail::outcome_count(x_bits_); }
  std::size_t y_count() const { return detail::outcome_count(y_bits_); }
  double at(std::size_t x, std::size_t y) const { return masses_.at(x * y_count() + y); }
  std::span<const double> masses() const { return masses_; }

  Distribution marginal_x() const {
    std::vector<double> m(x_count(), 0.0);
    for (std::size_t x = 0; x < x_count(); ++x) {
      for (std::size_t y = 0; y < y_count(); ++y) m[x] += at(x, y);
    }
    return Distribution::dense(x_bits_, std::move(m));
  }

  Distribution marginal_y() const {
    std::vector<double> m(y_count(), 0.0);
    for (std::size_t x = 0; x < x_count(); ++x) {
      for (std::size_t y = 0; y < y_count(); ++y) m[y] += at(x, y);
    }
    return Distribution::dense(y_bits_, std::move(m));
  }

  // Flattened view as a distribution over x_bits + y_bits (x in the high bits).
  Distribution flatten() const {
    return Distribution::dense(x_bits_ + y_bits_, std::vector<double>(masses_.begin(), masses_.end()));
  }

 private:
  unsigned x_bits_;
  unsigned y_bits_;
  std::vector<double> masses_;
};

/// Row-stochastic map W(y | x) between bitstring spaces.
class ConditionalChannel {
 public:
  ConditionalChannel(unsigned in_bits, unsigned out_bits, std::vector<Distribution> rows)
      : in_bits_(in_bits), out_bits_(out_bits), rows_(std::move(rows)) {
    if (rows_.size() != detail::outcome_count(in_bits)) {
      throw DimensionError("channel needs one row per input outcome");
    }
    for (const auto& r : rows_) {
      if (r.outcome_bits() != out_bits) throw DimensionError("channel row has the wrong outcome space");
    }
  }

  static ConditionalChannel identity(unsigned bits) {
    std::vector<Distribution> rows;
    for (std::size_t x = 0; x < detail::outcome_count(bits); ++x) rows.push_back(Distribution::point(bits, x));
    return ConditionalChannel(bits, bits, std::move(rows));
  }

  // Independent bit flips with probability `flip` on every position.
  static ConditionalChannel bit_flip(unsigned bits, double flip) {
    if (!(flip >= 0.0 && flip <= 1.0)) throw DomainError("flip probability must lie in [0, 1]");
    const std::size_t n = detail::outcome_count(bits);
    std::vector<Distribution> rows;
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<double> m(n);
      for (std::size_t y = 0; y < n; ++y) {
        int d = std::popcount(static_cast<std::uint64_t>(x ^ y));
        m[y] = std::pow(flip, d) * std::pow(1.0 - flip, static_cast<int>(bits) - d);
      }
      rows.push_back(Distribution::dense(bits, std::move(m)));
    }
    return ConditionalChannel(bits, bits, std::move(rows));
  }

  unsigned in_bits() const { return in_bits_; }
  unsigned out_bits() const { return out_bits_; }
  const Distribution& row(std::size_t x) const { return rows_.at(x); }

  // P(x, y) = p(x) W(y | x).
  JointDistribution joint_with(const Distribution& input) const {
    if (input.outcome_bits() != in_bits_) throw DimensionError("channel input space mismatch");
    const auto pm = input.masses();
    const std::size_t ny = detail::outcome_count(out_bits_);
    std::vector<double> m(pm.size() * ny);
    for (std::size_t x = 0; x < pm.size(); ++x) {
      for (std::size_t y = 0; y < ny; ++y) m[x * ny + y] = pm[x] * rows_[x].probability(y);
    }
    return JointDistribution(in_bits_, out_bits_, std::move(m));
  }

 private:
  unsigned in_bits_;
  unsigned out_bits_;
  std::vector<Distribution> rows_;
};

/// Total-variation distance 1/2 sum |p(x) - q(x)|.
///
/// Dense-representable spaces are summed outcome by outcome (spike forms are
/// read through the same lookups as their dense expansion). Beyond 20 bits both
/// operands must be in spike form and the sum is evaluated in closed form.
inline double statistical_distance(const Distribution& p, const Distribution& q) {
  if (p.outcome_bits() != q.outcome_bits()) {
    throw DimensionError("statistical_distance: outcome spaces differ (" +
                         std::to_string(p.outcome_bits()) + " vs " + std::to_string(q.outcome_bits()) +
                         " bits)");
  }
  if (p.dense_representable()) {
    const std::size_t n = p.outcome_count();
    double sum = 0.0;
    if (!p.is_spike() && !q.is_spike()) {
      auto a = p.dense_masses();
      auto b = q.dense_masses();
      for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i] - b[i]);
    } else {
      for (std::size_t i = 0; i < n; ++i) sum += std::abs(p.probability(i) - q.probability(i));
    }
    return 0.5 * sum;
  }
  if (!p.is_spike() || !q.is_spike()) {
    throw ScaleError("statistical_distance beyond 20 bits requires spike-form operands");
  }
  // Background outcomes differ by (eps_q - eps_p) 2^-l each; 1 or 2 spike
  // outcomes are handled separately.
  const double ep = p.spike_mass();
  const double eq = q.spike_mass();
  const double t = std::ldexp(1.0, -static_cast<int>(std::min(p.outcome_bits(), 2000U)));
  const double bg_diff = (eq - ep) * t;
  if (p.spike_outcome() == q.spike_outcome()) {
    const double rest = std::abs(ep - eq) * (1.0 - t);
    return 0.5 * (rest + std::abs(ep - eq + bg_diff));
  }
  const double rest = std::abs(ep - eq) * (1.0 - 2.0 * t);
  return 0.5 * (rest + std::abs(ep + bg_diff) + std::abs(bg_diff - eq));
}

/// Total-variation distance between joint distributions on the same spaces.
inline double statistical_distance(const JointDistribution& a, const JointDistribution& b) {
  if (a.x_bits() != b.x_bits() || a.y_bits() != b.y_bits()) {
    throw DimensionError("statistical_distance: joint outcome spaces differ");
  }
  double sum = 0.0;
  auto ma = a.masses();
  auto mb = b.masses();
  for (std::size_t i = 0; i < ma.size(); ++i) sum += std::abs(ma[i] - mb[i]);
  return 0.5 * sum;
}

/// Outcome with the largest mass, ties broken by the lowest index.
inline BitString map_outcome(const Distribution& p) {
  if (p.is_spike()) {
    if (p.spike_mass() > 0.0) return p.spike_outcome();
    return BitString::zeros(p.outcome_bits());
  }
  auto m = p.dense_masses();
  return BitString::from_index(detail::argmax_lowest(m), p.outcome_bits());
}

/// max_x p(x) = 2^-H_min(p).
inline double guessing_probability(const Distribution& p) {
  if (p.is_spike()) return p.spike_mass() + p.background_mass();
  auto m = p.dense_masses();
  return *std::max_element(m.begin(), m.end());
}

/// Sum_e P(e) max_k P(k | e) for a joint over (K, E), K on the x axis.
inline double conditional_guessing_probability(const JointDistribution& joint) {
  double total = 0.0;
  for (std::size_t e = 0; e < joint.y_count(); ++e) {
    double best = 0.0;
    for (std::size_t k = 0; k < joint.x_count(); ++k) best = std::max(best, joint.at(k, e));
    total += best;
  }
  return total;
}

/// h(q) in bits with 0 log 0 = 0.
inline double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("binary_entropy: argument must lie in [0, 1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

}  // namespace qkdsec
