#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qkdsec/logprob.hpp"
#include "qkdsec/probdist.hpp"
#include "qkdsec/simplex.hpp"

namespace qkdsec {

inline constexpr double kMarginalTolerance = 1e-9;
inline constexpr std::size_t kOracleMaxSupport = 6;

/// A joint distribution of (X, Y) together with the two marginals it claims
/// to couple. Construction checks the claim entrywise.
class Coupling {
 public:
  Coupling(JointDistribution joint, Distribution declared_p, Distribution declared_q)
      : joint_(std::move(joint)), p_(std::move(declared_p)), q_(std::move(declared_q)) {
    if (joint_.x_bits() != joint_.y_bits()) throw DimensionError("coupling needs X and Y on the same space");
    if (p_.outcome_bits() != joint_.x_bits() || q_.outcome_bits() != joint_.y_bits()) {
      throw DimensionError("declared marginals do not match the joint's spaces");
    }
    check_marginal(joint_.marginal_x(), p_, "row");
    check_marginal(joint_.marginal_y(), q_, "column");
  }

  const JointDistribution& joint() const { return joint_; }
  const Distribution& p() const { return p_; }
  const Distribution& q() const { return q_; }

 private:
  static void check_marginal(const Distribution& got, const Distribution& want, const char* which) {
    for (std::size_t i = 0; i < got.outcome_count(); ++i) {
      if (std::abs(got.probability(i) - want.probability(i)) > kMarginalTolerance) {
        throw InvariantError(std::string(which) + " marginal differs from declared distribution at outcome " +
                             std::to_string(i));
      }
    }
  }

  JointDistribution joint_;
  Distribution p_;
  Distribution q_;
};

/// Pr[X != Y], summed over the off-diagonal cells.
inline double mismatch_probability(const JointDistribution& joint) {
  if (joint.x_bits() != joint.y_bits()) throw DimensionError("mismatch needs X and Y on the same space");
  double off = 0.0;
  for (std::size_t x = 0; x < joint.x_count(); ++x) {
    for (std::size_t y = 0; y < joint.y_count(); ++y) {
      if (x != y) off += joint.at(x, y);
    }
  }
  return off;
}

inline double mismatch_probability(const Coupling& c) { return mismatch_probability(c.joint()); }

/// The coupling attaining Pr[X != Y] = delta(p, q): min(p, q) on the diagonal
/// and the normalized outer product of the positive parts of p - q and q - p
/// off it.
inline Coupling maximal_coupling(const Distribution& p, const Distribution& q) {
  if (p.outcome_bits() != q.outcome_bits()) throw DimensionError("maximal_coupling: outcome spaces differ");
  const auto pm = p.masses();
  const auto qm = q.masses();
  const std::size_t n = pm.size();
  std::vector<double> excess_p(n), excess_q(n);
  double delta = 0.0;
  std::vector<double> joint(n * n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    joint[x * n + x] = std::min(pm[x], qm[x]);
    excess_p[x] = std::max(pm[x] - qm[x], 0.0);
    excess_q[x] = std::max(qm[x] - pm[x], 0.0);
    delta += excess_p[x];
  }
  if (delta > 0.0) {
    for (std::size_t x = 0; x < n; ++x) {
      if (excess_p[x] == 0.0) continue;
      for (std::size_t y = 0; y < n; ++y) joint[x * n + y] += excess_p[x] * excess_q[y] / delta;
    }
  }
  return Coupling(JointDistribution(p.outcome_bits(), q.outcome_bits(), std::move(joint)), p, q);
}

/// The product coupling p x q, i.e. X and Y drawn independently.
inline Coupling independent_coupling(const Distribution& p, const Distribution& q) {
  return Coupling(JointDistribution::product(p, q), p, q);
}

/// Minimum of Pr[X != Y] over every coupling of p and q, by solving the
/// transportation LP on supp(p) x supp(q) directly. Independent of the
/// maximal-coupling construction above.
inline double min_mismatch_oracle(const Distribution& p, const Distribution& q) {
  if (p.outcome_bits() != q.outcome_bits()) throw DimensionError("min_mismatch_oracle: outcome spaces differ");
  const auto pm = p.masses();
  const auto qm = q.masses();
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < pm.size(); ++i) {
    if (pm[i] > 0.0) rows.push_back(i);
    if (qm[i] > 0.0) cols.push_back(i);
  }
  if (rows.size() > kOracleMaxSupport || cols.size() > kOracleMaxSupport) {
    throw ScaleError("min_mismatch_oracle supports at most 6 outcomes with positive mass per distribution");
  }
  const std::size_t nv = rows.size() * cols.size();
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<double> row(nv, 0.0);
    for (std::size_t c = 0; c < cols.size(); ++c) row[r * cols.size() + c] = 1.0;
    a.push_back(std::move(row));
    b.push_back(pm[rows[r]]);
  }
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::vector<double> row(nv, 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) row[r * cols.size() + c] = 1.0;
    a.push_back(std::move(row));
    b.push_back(qm[cols[c]]);
  }
  std::vector<double> cost(nv, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) cost[r * cols.size() + c] = rows[r] == cols[c] ? 0.0 : 1.0;
  }
  return lp::StandardFormSimplex(std::move(a), std::move(b), std::move(cost)).solve().objective;
}

struct CopyChannelGap {
  double delta_joint;  // delta(P_{X, copy of X}, P_{X, Y})
  double mismatch;     // Pr[X != Y] under P_{X, Y}
};

/// Compares the perfectly correlated pair (X, X) with the channel pair (X, Y).
/// The two numbers coincide for every input and channel.
inline CopyChannelGap copy_vs_channel_gap(const Distribution& p, const ConditionalChannel& w) {
  if (w.in_bits() != w.out_bits()) throw DimensionError("copy_vs_channel_gap needs a square channel");
  const JointDistribution noisy = w.joint_with(p);
  const JointDistribution copy = ConditionalChannel::identity(w.in_bits()).joint_with(p);
  return {statistical_distance(copy, noisy), mismatch_probability(noisy)};
}

/// Failure probability when a generated l-bit key is compared against an
/// independently drawn uniform key: 1 - sum_k P(k) 2^-l = 1 - 2^-l for any P.
inline LogProb independent_coupling_failure(long long l) {
  if (l < 1) throw DomainError("key length must be at least 1");
  return LogProb::one_minus_pow2(-static_cast<double>(l));
}

struct ContradictionReport {
  double delta;
  double maximal_mismatch;
  double independent_failure;
};

/// delta(P_K, U), the maximal coupling's mismatch against U, and the failure
/// probability of the realizable independent comparison.
inline ContradictionReport contradiction_report(const Distribution& p_k) {
  const auto u = Distribution::uniform(p_k.outcome_bits()).to_dense();
  const auto dense = p_k.to_dense();
  return {statistical_distance(dense, u), mismatch_probability(maximal_coupling(dense, u)),
          independent_coupling_failure(p_k.outcome_bits()).value()};
}

}  // namespace qkdsec
