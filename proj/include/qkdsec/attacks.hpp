#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkdsec/bitstring.hpp"
#include "qkdsec/errors.hpp"
#include "qkdsec/probdist.hpp"

/// Attacks on a one-time pad keyed with a non-uniform key. The adversary's
/// side information is classical throughout.
namespace qkdsec {

inline constexpr unsigned kMaxAverageAttackBits = 12;
inline constexpr unsigned kMaxPaKeyBits = 10;

struct AttackReport {
  BitString map_guess;
  double map_posterior = 0.0;
  double avg_success = 0.0;
  std::optional<Distribution> posterior_table;
};

/// c = x XOR k.
inline BitString otp_encrypt(const BitString& x, const BitString& k) {
  if (x.size() != k.size()) {
    throw DimensionError("otp_encrypt: plaintext has " + std::to_string(x.size()) + " bits but key has " +
                         std::to_string(k.size()));
  }
  return x ^ k;
}

/// eps * point(k_star) + (1 - eps) * uniform; distance eps (1 - 2^-l) from uniform.
inline Distribution spike_distribution(long long l, double eps, const BitString& k_star) {
  if (l < 0 || static_cast<std::size_t>(l) != k_star.size()) {
    throw DimensionError("spike_distribution: k_star must have exactly l bits");
  }
  return Distribution::spike(k_star, eps);
}

/// MAP key recovery from a ciphertext when plaintext and key are drawn
/// independently from p_x and p_k. The report holds the posterior P(k | c) for
/// the observed c and the success probability Sum_c max_k P(k, c) averaged over
/// all ciphertexts.
inline AttackReport ciphertext_only_attack(const BitString& c, const Distribution& p_x, const Distribution& p_k) {
  const unsigned l = p_k.outcome_bits();
  if (p_x.outcome_bits() != l || c.size() != l) {
    throw DimensionError("ciphertext_only_attack: ciphertext, plaintext and key lengths must agree");
  }
  if (l > kMaxAverageAttackBits) throw ScaleError("ciphertext_only_attack enumerates at most 12-bit keys");
  const std::size_t n = std::size_t{1} << l;
  const auto px = p_x.masses();
  const auto pk = p_k.masses();

  const std::size_t ci = c.to_index();
  std::vector<double> joint_c(n);
  double p_c = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    joint_c[k] = pk[k] * px[ci ^ k];
    p_c += joint_c[k];
  }
  if (p_c == 0.0) throw ZeroProbabilityError("ciphertext " + c.to_string() + " has probability zero");
  const std::size_t best = detail::argmax_lowest(joint_c);

  double avg = 0.0;
  for (std::size_t cc = 0; cc < n; ++cc) {
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) m = std::max(m, pk[k] * px[cc ^ k]);
    avg += m;
  }

  std::vector<double> posterior(n);
  for (std::size_t k = 0; k < n; ++k) posterior[k] = joint_c[k] / p_c;

  AttackReport r;
  r.map_guess = BitString::from_index(best, l);
  r.map_posterior = joint_c[best] / p_c;
  r.avg_success = avg;
  r.posterior_table = Distribution::dense(l, std::move(posterior));
  return r;
}

/// Predicts the key bits after a known prefix. The report carries the MAP
/// remainder for `known_prefix`, its posterior P(remainder | prefix), the
/// conditional table, and the success probability averaged over prefixes
/// drawn from p_k.
inline AttackReport kpa_next_bits(const Distribution& p_k, const BitString& known_prefix) {
  const unsigned l = p_k.outcome_bits();
  const std::size_t m = known_prefix.size();
  if (m >= l) throw DimensionError("kpa_next_bits: known prefix must be shorter than the key");
  if (!p_k.dense_representable()) throw ScaleError("kpa_next_bits needs a key of at most 20 bits");
  const unsigned rest_bits = l - static_cast<unsigned>(m);
  const std::size_t n_rest = std::size_t{1} << rest_bits;
  const std::size_t n_prefix = std::size_t{1} << m;
  const std::size_t prefix_index = known_prefix.to_index();

  std::vector<double> cond(n_rest);
  double p_prefix = 0.0;
  for (std::size_t r = 0; r < n_rest; ++r) {
    cond[r] = p_k.probability((prefix_index << rest_bits) | r);
    p_prefix += cond[r];
  }
  if (p_prefix == 0.0) throw ZeroProbabilityError("known prefix " + known_prefix.to_string() + " has probability zero");
  const std::size_t best = detail::argmax_lowest(cond);
  const double best_joint = cond[best];

  double avg = 0.0;
  for (std::size_t pre = 0; pre < n_prefix; ++pre) {
    double top = 0.0;
    for (std::size_t r = 0; r < n_rest; ++r) top = std::max(top, p_k.probability((pre << rest_bits) | r));
    avg += top;
  }

  for (double& v : cond) v /= p_prefix;

  AttackReport rep;
  rep.map_guess = BitString::from_index(best, rest_bits);
  rep.map_posterior = best_joint / p_prefix;
  rep.avg_success = avg;
  rep.posterior_table = Distribution::dense(rest_bits, std::move(cond));
  return rep;
}

/// GF(2) Toeplitz hash: out[i] = XOR_j T[i][j] k[j] with T[i][j] = seed[i + n - 1 - j],
/// n = |k|. Needs |seed| = n + out_len - 1.
inline BitString toeplitz_hash(const BitString& k, const BitString& seed, std::size_t out_len) {
  const std::size_t n = k.size();
  if (out_len > n) throw DimensionError("toeplitz_hash: output longer than input");
  if (out_len == 0) return BitString{};
  if (seed.size() != n + out_len - 1) {
    throw DimensionError("toeplitz_hash: seed must have |k| + out_len - 1 = " + std::to_string(n + out_len - 1) +
                         " bits, got " + std::to_string(seed.size()));
  }
  BitString out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    std::uint8_t parity = 0;
    for (std::size_t j = 0; j < n; ++j) parity ^= static_cast<std::uint8_t>(seed[i + n - 1 - j] & k[j]);
    out.set(i, parity != 0);
  }
  return out;
}

struct PaEffect {
  double before;
  std::vector<double> after;  // one entry per seed
  double after_avg;
};

/// Eve's guessing probability on K (before) and on the Toeplitz-hashed key
/// (after, per seed), both conditioned on her classical side information E.
/// The joint has K on the x axis.
inline PaEffect pa_effect_on_guessing(const JointDistribution& joint_ke, std::size_t out_len,
                                      const std::vector<BitString>& seeds) {
  const unsigned kb = joint_ke.x_bits();
  if (kb > kMaxPaKeyBits) throw ScaleError("pa_effect_on_guessing supports at most 10 key bits");
  if (out_len > kb) throw DimensionError("pa_effect_on_guessing: output longer than key");
  if (seeds.empty()) throw DomainError("pa_effect_on_guessing needs at least one seed");

  PaEffect eff;
  eff.before = conditional_guessing_probability(joint_ke);
  const std::size_t nk = joint_ke.x_count();
  const std::size_t nout = std::size_t{1} << out_len;
  double total = 0.0;
  for (const auto& seed : seeds) {
    std::vector<std::size_t> hashed(nk);
    for (std::size_t k = 0; k < nk; ++k) {
      const auto h = toeplitz_hash(BitString::from_index(k, kb), seed, out_len);
      hashed[k] = out_len == 0 ? 0 : h.to_index();
    }
    double after = 0.0;
    std::vector<double> bucket(nout);
    for (std::size_t e = 0; e < joint_ke.y_count(); ++e) {
      std::fill(bucket.begin(), bucket.end(), 0.0);
      for (std::size_t k = 0; k < nk; ++k) bucket[hashed[k]] += joint_ke.at(k, e);
      after += *std::max_element(bucket.begin(), bucket.end());
    }
    eff.after.push_back(after);
    total += after;
  }
  eff.after_avg = total / static_cast<double>(seeds.size());
  return eff;
}

/// Every seed of the right length for (key_bits, out_len), in index order.
inline std::vector<BitString> all_toeplitz_seeds(std::size_t key_bits, std::size_t out_len) {
  const std::size_t len = key_bits + out_len - 1;
  if (len > 20) throw ScaleError("seed enumeration limited to 20-bit seeds");
  std::vector<BitString> seeds;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << len); ++s) seeds.push_back(BitString::from_index(s, len));
  return seeds;
}

}  // namespace qkdsec
