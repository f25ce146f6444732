#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "qkdsec/errors.hpp"
#include "qkdsec/logprob.hpp"
#include "qkdsec/probdist.hpp"

/// Closed-form key-security calculators. Every probability that can leave the
/// double range is returned as a LogProb.
namespace qkdsec {

namespace detail {

inline void require_eps_bar(double eps_bar) {
  if (!(eps_bar >= 0.0 && eps_bar <= 1.0)) throw DomainError("eps_bar must lie in [0, 1]");
}

inline void require_key_len(long long l) {
  if (l < 1) throw DomainError("key length must be at least 1");
}

}  // namespace detail

/// Average key-guessing bound eps_bar + 2^-l.
inline LogProb yuen_upper_bound(double eps_bar, long long l) {
  detail::require_eps_bar(eps_bar);
  detail::require_key_len(l);
  return LogProb::from_value(eps_bar) + LogProb::pow2(-static_cast<double>(l));
}

/// Individual (non-averaged) bound eps_bar^(1/3) + 2^-l.
inline LogProb markov_individual_bound(double eps_bar, long long l) {
  detail::require_eps_bar(eps_bar);
  detail::require_key_len(l);
  LogProb cube_root = eps_bar == 0.0 ? LogProb::zero() : LogProb::from_value(eps_bar).pow(1.0 / 3.0);
  return cube_root + LogProb::pow2(-static_cast<double>(l));
}

struct LeakageProfile {
  double f;            // one bit leaked per f key bits
  double leaked_bits;  // l / f
};

/// f = log2(1/eps), leaked = l / f.
inline LeakageProfile leakage_profile(long long l, double eps) {
  detail::require_key_len(l);
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("leakage_profile: eps must lie strictly inside (0, 1)");
  const double f = -std::log2(eps);
  return {f, static_cast<double>(l) / f};
}

/// Same profile with eps supplied in log2 form, for eps = 2^-l and smaller.
inline LeakageProfile leakage_profile(long long l, const LogProb& eps) {
  detail::require_key_len(l);
  if (!(eps.log2() < 0.0) || std::isinf(eps.log2())) {
    throw DomainError("leakage_profile: eps must lie strictly inside (0, 1)");
  }
  const double f = -eps.log2();
  return {f, static_cast<double>(l) / f};
}

/// The alternative l / log2(1/l) reading of the leak count. For l > 1 it is
/// negative, so it cannot describe a number of leaked bits; reported only so
/// the two readings can be compared side by side.
inline double leaked_bits_l_over_log2_inv_l(long long l) {
  detail::require_key_len(l);
  return static_cast<double>(l) / -std::log2(static_cast<double>(l));
}

/// Guessing probability an l-bit key must reach to match a uniform key: 2^-l.
inline LogProb required_epsilon(long long l) {
  detail::require_key_len(l);
  return LogProb::pow2(-static_cast<double>(l));
}

/// Inputs of the finite-key length formula.
struct FiniteKeyParams {
  std::int64_t n = 0;     // block length
  double qber = 0.0;      // Q
  double mu = 0.0;        // finite-size fluctuation
  double leak_ec = 0.0;   // bits revealed by error correction
  double p_fail = 0.0;
  double eps_bar = 0.0;
  double eps_cor = 0.0;

  // leak_ec defaults to 1.1 n h(Q).
  static double default_leak_ec(std::int64_t n, double qber) {
    return 1.1 * static_cast<double>(n) * binary_entropy(qber);
  }

  void validate() const {
    if (n < 1) throw DomainError("FiniteKeyParams: n must be at least 1");
    if (!(qber >= 0.0 && mu >= 0.0 && qber + mu <= 1.0)) {
      throw DomainError("FiniteKeyParams: need 0 <= Q, 0 <= mu and Q + mu <= 1");
    }
    if (!(leak_ec >= 0.0) || !std::isfinite(leak_ec)) throw DomainError("FiniteKeyParams: leak_ec must be >= 0");
    auto prob = [](double v, const char* name) {
      if (!(v > 0.0 && v <= 1.0)) throw DomainError(std::string("FiniteKeyParams: ") + name + " must lie in (0, 1]");
    };
    prob(p_fail, "p_fail");
    prob(eps_bar, "eps_bar");
    prob(eps_cor, "eps_cor");
  }
};

/// Real-valued right-hand side n(1 - h(Q+mu)) - leak_ec - log2(2 p_fail / (eps_bar^2 eps_cor)).
/// The log term is expanded so eps_bar down to 2^-1000 stays finite. Error
/// rates at or above 1/2 leave no secrecy, so h is saturated at 1 there.
inline double extractable_key_length_real(const FiniteKeyParams& p) {
  p.validate();
  const double penalty = 1.0 + std::log2(p.p_fail) - 2.0 * std::log2(p.eps_bar) - std::log2(p.eps_cor);
  const double h = binary_entropy(std::min(p.qber + p.mu, 0.5));
  return static_cast<double>(p.n) * (1.0 - h) - p.leak_ec - penalty;
}

/// floor of the finite-key length, clamped at zero.
inline std::int64_t extractable_key_length(const FiniteKeyParams& p) {
  const double v = extractable_key_length_real(p);
  return v <= 0.0 ? 0 : static_cast<std::int64_t>(std::floor(v));
}

/// Statistical fluctuation of the error rate estimated from a k-bit sample
/// for an n-bit key, at confidence eps_pe:
///   sqrt((n + k)/(n k) * (k + 1)/k * ln(1/eps_pe)).
/// A helper for choosing mu; the length formula itself takes mu as given.
inline double sampling_fluctuation(std::int64_t n, std::int64_t k, double eps_pe) {
  if (n < 1 || k < 1) throw DomainError("sampling_fluctuation: n and k must be positive");
  if (!(eps_pe > 0.0 && eps_pe < 1.0)) throw DomainError("sampling_fluctuation: eps_pe must lie in (0, 1)");
  const double nn = static_cast<double>(n), kk = static_cast<double>(k);
  return std::sqrt((nn + kk) / (nn * kk) * (kk + 1.0) / kk * std::log(1.0 / eps_pe));
}

/// Parameters used for the eps_bar-versus-rate trade-off table: QBER 5 %,
/// error correction at 1.1 h(Q), p_fail = 1e-10, eps_cor = 1e-15, and mu from
/// a parameter-estimation sample of n/10 bits at confidence 1e-10.
/// eps_bar is left at 1 for the solver to fill in.
inline FiniteKeyParams tradeoff_preset(std::int64_t n) {
  FiniteKeyParams p;
  p.n = n;
  p.qber = 0.05;
  p.mu = sampling_fluctuation(n, std::max<std::int64_t>(1, n / 10), 1e-10);
  p.mu = std::min(p.mu, 0.5 - p.qber);
  p.leak_ec = FiniteKeyParams::default_leak_ec(n, p.qber);
  p.p_fail = 1e-10;
  p.eps_bar = 1.0;
  p.eps_cor = 1e-15;
  return p;
}

struct SecurityRateSolution {
  double eps_bar;
  std::int64_t l;
  double rate;  // l / n
  int iterations;
};

/// Solves eps_bar / l(eps_bar) = s_target for the largest admissible eps_bar
/// in (2^-200, 1). A coarse scan over integer log2(eps_bar) brackets the
/// crossing, then bisection on log2(eps_bar) narrows it to a relative
/// tolerance of 1e-3 on eps_bar (at most 200 steps). Throws NoSolutionError
/// when no eps_bar in range gives a positive length meeting the target.
inline SecurityRateSolution epsilon_for_security_rate(double s_target, FiniteKeyParams p) {
  if (!(s_target > 0.0) || !std::isfinite(s_target)) throw DomainError("security rate target must be positive");
  auto length_at = [&](double log2_eps) {
    p.eps_bar = std::exp2(log2_eps);
    return extractable_key_length(p);
  };
  auto feasible = [&](double log2_eps) {
    const auto l = length_at(log2_eps);
    return l > 0 && std::exp2(log2_eps) / static_cast<double>(l) <= s_target;
  };

  if (length_at(0.0) == 0) {
    throw NoSolutionError("no key can be extracted for any eps_bar (rate l/n ~ 0)");
  }
  double lo = 1.0;  // sentinel: no feasible point yet
  double hi = 0.0;
  for (int e = 0; e >= -200; --e) {
    if (feasible(e)) {
      lo = e;
      hi = e + 1;
      break;
    }
  }
  if (lo > 0.0) {
    throw NoSolutionError("security rate target unreachable: eps_bar / l(eps_bar) exceeds it for all eps_bar >= 2^-200");
  }
  int it = 0;
  if (lo == 0.0) {
    hi = 0.0;
  } else {
    const double tol = std::log2(1.0 + 1e-3);
    while (hi - lo > tol && it < 200) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
      ++it;
    }
  }
  const auto l = length_at(lo);
  return {std::exp2(lo), l, static_cast<double>(l) / static_cast<double>(p.n), it};
}

struct PipelineEfficiency {
  double value;        // key rate / raw rate
  bool exceeds_raw;    // key rate above raw rate: physically suspicious input
};

inline PipelineEfficiency pipeline_efficiency(double raw_rate_bps, double key_rate_bps) {
  if (!(raw_rate_bps > 0.0) || !(key_rate_bps > 0.0) || !std::isfinite(raw_rate_bps) ||
      !std::isfinite(key_rate_bps)) {
    throw DomainError("pipeline_efficiency: both rates must be positive");
  }
  return {key_rate_bps / raw_rate_bps, key_rate_bps > raw_rate_bps};
}

}  // namespace qkdsec
