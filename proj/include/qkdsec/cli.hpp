#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkdsec/attacks.hpp"
#include "qkdsec/bounds.hpp"
#include "qkdsec/coupling.hpp"
#include "qkdsec/distribution_io.hpp"
#include "qkdsec/quantum_detect.hpp"
#include "qkdsec/report.hpp"
#include "qkdsec/rngtest.hpp"

// Command-line surface: one subcommand per module plus a composite `paper-figures` report.
// Exit codes: 0 success, 2 usage or validation error, 3 rate solver found no
// solution.
namespace qkdsec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoSolution = 3;

struct BoundsArgs {
  double eps_bar = 0.0;
  long long key_len = 0;
  std::optional<double> raw_rate_bps;
  std::optional<double> key_rate_bps;
};

struct RateArgs {
  std::int64_t n = 0;
  std::string preset = "none";
  std::optional<double> qber;
  std::optional<double> mu;
  std::optional<double> leak_ec;
  std::optional<double> p_fail;
  std::optional<double> eps_cor;
  std::optional<double> eps_bar;
  std::optional<double> security_rate;
};

struct CouplingArgs {
  std::string p_file;
  std::string q_file;
  std::optional<double> bsc_flip;
};

struct DetectArgs {
  std::string rho_file;
  std::string sigma_file;
  double prior = 0.5;
  std::string povm_file;
};

struct RngArgs {
  std::string model = "iid";
  double bias = 0.0;
  double p01 = 0.5;
  double p10 = 0.5;
  double initial_one = 0.5;
  unsigned block_len = 8;
  std::size_t count = 1000000;
  std::uint64_t seed = 1;
};

// Resolved finite-key inputs: explicit flags win, then the preset, then the
// plain defaults (Q = 0.02, mu = 0, leak = 1.1 n h(Q), p_fail = 1e-10,
// eps_cor = 1e-15).
inline FiniteKeyParams resolve_rate_params(const RateArgs& a) {
  FiniteKeyParams p;
  if (a.preset == "tradeoff") {
    p = tradeoff_preset(a.n);
  } else {
    p.n = a.n;
    p.qber = 0.02;
    p.mu = 0.0;
    p.p_fail = 1e-10;
    p.eps_cor = 1e-15;
    p.eps_bar = 1.0;
    p.leak_ec = -1.0;
  }
  if (a.qber) p.qber = *a.qber;
  if (a.mu) p.mu = *a.mu;
  if (a.p_fail) p.p_fail = *a.p_fail;
  if (a.eps_cor) p.eps_cor = *a.eps_cor;
  if (a.eps_bar) p.eps_bar = *a.eps_bar;
  if (a.leak_ec) {
    p.leak_ec = *a.leak_ec;
  } else if (a.preset != "tradeoff" || a.qber) {
    if (!(p.qber >= 0.0 && p.qber <= 1.0)) throw DomainError("--qber must lie in [0, 1]");
    p.leak_ec = FiniteKeyParams::default_leak_ec(p.n, p.qber);
  }
  return p;
}

inline Report bounds_report(const BoundsArgs& a) {
  Report r("bounds");
  r.input("eps_bar", a.eps_bar);
  r.input("key_len", a.key_len);
  if (a.raw_rate_bps) r.input("raw_rate_bps", *a.raw_rate_bps);
  if (a.key_rate_bps) r.input("key_rate_bps", *a.key_rate_bps);

  r.probability("yuen_bound", yuen_upper_bound(a.eps_bar, a.key_len));
  r.probability("markov_bound", markov_individual_bound(a.eps_bar, a.key_len));
  const LogProb eps = a.eps_bar == 0.0 ? LogProb::zero() : LogProb::from_value(a.eps_bar).pow(1.0 / 3.0);
  r.probability("markov_epsilon", eps);
  r.probability("required_epsilon", required_epsilon(a.key_len));

  ordered_json leak;
  leak["formula"] = "l / log2(1/eps), eps = eps_bar^(1/3)";
  if (eps.log2() < 0.0 && std::isfinite(eps.log2())) {
    const auto lp = leakage_profile(a.key_len, eps);
    leak["f"] = lp.f;
    leak["leaked_bits"] = lp.leaked_bits;
  } else {
    leak["f"] = nullptr;
    leak["leaked_bits"] = nullptr;
    leak["note"] = "undefined unless 0 < eps < 1";
  }
  leak["alt_l_over_log2_inv_l"] = leaked_bits_l_over_log2_inv_l(a.key_len);
  leak["alt_note"] = "l / log2(1/l) is negative for l > 1 and cannot count leaked bits";
  r.output("leakage", leak);

  if (a.raw_rate_bps.has_value() != a.key_rate_bps.has_value()) {
    throw DomainError("--raw-rate-bps and --key-rate-bps must be given together");
  }
  if (a.raw_rate_bps) {
    const auto pe = pipeline_efficiency(*a.raw_rate_bps, *a.key_rate_bps);
    r.output("pipeline_efficiency", pe.value);
    r.output("pipeline_key_rate_exceeds_raw", pe.exceeds_raw);
  }
  return r;
}

inline void put_params(Report& r, const FiniteKeyParams& p, bool with_eps_bar) {
  r.input("n", p.n);
  r.input("qber", p.qber);
  r.input("mu", p.mu);
  r.input("leak_ec", p.leak_ec);
  r.input("p_fail", p.p_fail);
  r.input("eps_cor", p.eps_cor);
  if (with_eps_bar) r.input("eps_bar", p.eps_bar);
}

inline Report rate_report(const RateArgs& a) {
  Report r("rate");
  r.input("preset", a.preset);
  if (a.preset != "none" && a.preset != "tradeoff") throw DomainError("--preset must be 'none' or 'tradeoff'");
  if (!a.eps_bar && !a.security_rate) throw DomainError("rate needs --eps-bar and/or --security-rate");
  const FiniteKeyParams p = resolve_rate_params(a);
  put_params(r, p, a.eps_bar.has_value());
  if (a.security_rate) r.input("security_rate", *a.security_rate);

  if (a.eps_bar) {
    p.validate();
    const auto l = extractable_key_length(p);
    r.output("extractable_key_length", l);
    r.output("rate", static_cast<double>(l) / static_cast<double>(p.n));
  }
  if (a.security_rate) {
    const auto sol = epsilon_for_security_rate(*a.security_rate, p);
    ordered_json s;
    s["eps_bar"] = to_json(LogProb::from_value(sol.eps_bar));
    s["key_length"] = sol.l;
    s["rate"] = sol.rate;
    s["bisection_steps"] = sol.iterations;
    r.output("solution", s);
  }
  return r;
}

inline Report coupling_report(const CouplingArgs& a) {
  Report r("coupling");
  r.input("p", a.p_file);
  r.input("q", a.q_file.empty() ? std::string("uniform") : a.q_file);
  if (a.bsc_flip) r.input("bsc_flip", *a.bsc_flip);

  const Distribution p = read_distribution_file(a.p_file).to_dense();
  const Distribution q = a.q_file.empty() ? Distribution::uniform(p.outcome_bits()).to_dense()
                                          : read_distribution_file(a.q_file).to_dense();
  if (p.outcome_bits() != q.outcome_bits()) throw DimensionError("--p and --q have different outcome_bits");

  r.output("delta", statistical_distance(p, q));
  r.output("maximal_mismatch", mismatch_probability(maximal_coupling(p, q)));
  try {
    r.output("oracle_min_mismatch", min_mismatch_oracle(p, q));
  } catch (const ScaleError&) {
    r.output("oracle_min_mismatch", "skipped: more than 6 outcomes with positive mass");
  }
  r.probability("independent_mismatch", mismatch_probability(independent_coupling(p, q)));
  if (a.q_file.empty()) {
    r.probability("independent_failure_vs_uniform", independent_coupling_failure(p.outcome_bits()));
  }
  if (a.bsc_flip) {
    const auto gap = copy_vs_channel_gap(p, ConditionalChannel::bit_flip(p.outcome_bits(), *a.bsc_flip));
    r.output("copy_channel_delta_joint", gap.delta_joint);
    r.output("copy_channel_mismatch", gap.mismatch);
  }
  return r;
}

inline Report detect_report(const DetectArgs& a) {
  Report r("detect");
  r.input("rho", a.rho_file);
  r.input("sigma", a.sigma_file);
  r.input("prior", a.prior);
  if (!a.povm_file.empty()) r.input("povm", a.povm_file);
  const auto rho = read_density_matrix_file(a.rho_file);
  const auto sigma = read_density_matrix_file(a.sigma_file);
  r.output("trace_distance", trace_distance_q(rho, sigma));
  r.probability("helstrom_min_error", helstrom_min_error(rho, sigma, a.prior));
  r.output("overlap", overlap(rho, sigma));
  if (!a.povm_file.empty()) r.output("measured_distance", measured_distance(rho, sigma, read_povm_file(a.povm_file)));
  return r;
}

inline Report rng_report(const RngArgs& a) {
  Report r("rngtest");
  r.input("model", a.model);
  if (a.model == "iid") {
    r.input("bias", a.bias);
  } else {
    r.input("p01", a.p01);
    r.input("p10", a.p10);
    r.input("initial_one", a.initial_one);
  }
  r.input("block_len", a.block_len);
  r.input("count", a.count);
  r.input("seed", a.seed);
  r.input("generator", "splitmix64-counter");

  SourceModel m = a.model == "iid" ? SourceModel::iid(a.bias)
                  : a.model == "markov"
                      ? SourceModel::markov(a.p01, a.p10, a.initial_one)
                      : throw DomainError("--model must be 'iid' or 'markov'");
  const auto s = sample_blocks(m, a.block_len, a.count, a.seed);
  const auto rep = uniformity_failure_report(s);
  r.output("model_delta", model_distance_to_uniform(m, a.block_len));
  r.output("empirical_delta", rep.empirical_delta);
  r.output("exactly_uniform", rep.exactly_uniform);
  r.probability("independent_failure", rep.independent_failure);
  return r;
}

inline void put_attack(Report& r, const AttackReport& a) {
  r.output("map_guess", a.map_guess.to_string());
  r.probability("map_posterior", a.map_posterior);
  r.probability("avg_success", a.avg_success);
}

// Every worked-example table in one report.
inline Report paper_figures_report() {
  Report r("paper-figures");

  {
    auto b = bounds_report({1e-6, 10000, 50e9, 300e3});
    r.output("worked_example", b.outputs());
  }
  {
    ordered_json rows = ordered_json::array();
    for (double eb : {1e-6, 1e-8, 1e-10, 1e-12, 1e-14, 1e-20}) {
      ordered_json row;
      row["eps_bar"] = eb;
      row["yuen_bound"] = to_json(yuen_upper_bound(eb, 10000));
      row["markov_bound"] = to_json(markov_individual_bound(eb, 10000));
      row["leaked_bits"] = leakage_profile(10000, std::cbrt(eb)).leaked_bits;
      rows.push_back(row);
    }
    r.output("eps_bar_sweep_key_len_10000", rows);
  }
  {
    ordered_json rows = ordered_json::array();
    for (std::int64_t n : {10000LL, 100000LL, 1000000LL, 10000000LL}) {
      ordered_json row;
      row["n"] = n;
      const auto p = tradeoff_preset(n);
      row["mu"] = p.mu;
      try {
        const auto sol = epsilon_for_security_rate(1e-14, p);
        row["eps_bar"] = sol.eps_bar;
        row["key_length"] = sol.l;
        row["rate"] = sol.rate;
      } catch (const NoSolutionError&) {
        row["eps_bar"] = nullptr;
        row["key_length"] = 0;
        row["rate"] = 0.0;
      }
      rows.push_back(row);
    }
    r.output("security_rate_1e-14_tradeoff", rows);
  }
  {
    const auto p = Distribution::dense(1, {0.5, 0.5});
    const auto q = Distribution::dense(1, {0.75, 0.25});
    ordered_json c;
    c["delta"] = statistical_distance(p, q);
    c["maximal_mismatch"] = mismatch_probability(maximal_coupling(p, q));
    c["oracle_min_mismatch"] = min_mismatch_oracle(p, q);
    c["independent_mismatch"] = mismatch_probability(independent_coupling(p, q));
    r.output("coupling_half_vs_three_quarters", c);
  }
  {
    ordered_json rows = ordered_json::array();
    for (unsigned l : {1U, 4U, 8U, 16U}) {
      ordered_json row;
      row["key_len"] = l;
      row["independent_failure"] = to_json(independent_coupling_failure(l));
      rows.push_back(row);
    }
    ordered_json big;
    big["key_len"] = 10000;
    big["independent_failure"] = to_json(independent_coupling_failure(10000));
    rows.push_back(big);
    r.output("independent_comparison_failure", rows);
  }
  {
    const unsigned l = 12, m = 4;
    const auto k_star = BitString::parse("101100111000");
    const auto pk = spike_distribution(l, std::ldexp(1.0, -static_cast<int>(m)), k_star);
    ordered_json rows = ordered_json::array();
    for (unsigned known : {m, m + 4}) {
      const auto rep = kpa_next_bits(pk, k_star.prefix(known));
      ordered_json row;
      row["key_len"] = l;
      row["eps"] = std::ldexp(1.0, -static_cast<int>(m));
      row["known_bits"] = known;
      row["map_guess"] = rep.map_guess.to_string();
      row["map_posterior"] = rep.map_posterior;
      rows.push_back(row);
    }
    r.output("next_bit_prediction_spike", rows);
  }
  return r;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qkdsec: security-bound calculators, coupling checks and one-time-pad attacks"};
  app.name("qkdsec");
  app.require_subcommand(1);
  app.fallthrough();
  bool machine = false;
  app.add_flag("--machine", machine, "Emit one JSON document instead of key = value lines");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Guessing-probability bounds, leakage and required epsilon");
  bounds->add_option("--eps-bar", ba.eps_bar, "Averaged trace-distance bound")->required()->check(CLI::Range(0.0, 1.0));
  bounds->add_option("--key-len", ba.key_len, "Key length in bits")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--raw-rate-bps", ba.raw_rate_bps, "Raw transmitted bit rate")->check(CLI::PositiveNumber);
  bounds->add_option("--key-rate-bps", ba.key_rate_bps, "Final key rate")->check(CLI::PositiveNumber);

  RateArgs ra;
  auto* rate = app.add_subcommand("rate", "Finite-key length and the eps_bar / rate trade-off");
  rate->add_option("--n", ra.n, "Block length")->required()->check(CLI::PositiveNumber);
  rate->add_option("--preset", ra.preset, "Parameter preset: none or tradeoff")
      ->check(CLI::IsMember({"none", "tradeoff"}));
  rate->add_option("--qber", ra.qber, "QBER Q as a fraction")->check(CLI::Range(0.0, 1.0));
  rate->add_option("--mu", ra.mu, "Finite-size fluctuation mu")->check(CLI::Range(0.0, 1.0));
  rate->add_option("--leak-ec", ra.leak_ec, "Error-correction leakage in bits")->check(CLI::NonNegativeNumber);
  rate->add_option("--p-fail", ra.p_fail, "P_fail")->check(CLI::Range(0.0, 1.0));
  rate->add_option("--eps-cor", ra.eps_cor, "Correctness epsilon")->check(CLI::Range(0.0, 1.0));
  rate->add_option("--eps-bar", ra.eps_bar, "Secrecy epsilon for a direct length evaluation")
      ->check(CLI::Range(0.0, 1.0));
  rate->add_option("--security-rate", ra.security_rate, "Target eps_bar / l for the solver")
      ->check(CLI::PositiveNumber);

  CouplingArgs ca;
  auto* coupling = app.add_subcommand("coupling", "Maximal coupling, LP oracle and the independent comparison");
  coupling->add_option("--p", ca.p_file, "Distribution file for P")->required();
  coupling->add_option("--q", ca.q_file, "Distribution file for Q (default: uniform)");
  coupling->add_option("--bsc-flip", ca.bsc_flip, "Flip probability for the copy-versus-channel check")
      ->check(CLI::Range(0.0, 1.0));

  DetectArgs da;
  auto* detect = app.add_subcommand("detect", "Trace distance, Helstrom error, overlap and measured distance");
  detect->add_option("--rho", da.rho_file, "Matrix file for rho")->required();
  detect->add_option("--sigma", da.sigma_file, "Matrix file for sigma")->required();
  detect->add_option("--prior", da.prior, "Prior of rho")->check(CLI::Range(0.0, 1.0));
  detect->add_option("--povm", da.povm_file, "POVM file");

  auto* attack = app.add_subcommand("attack", "One-time-pad attacks");
  attack->require_subcommand(1);
  std::string x_bits, k_bits, c_bits, prefix_bits, seed_bits, px_file, pk_file, joint_file, kstar_bits, write_file;
  std::vector<std::string> seed_list;
  std::size_t out_len = 0;
  unsigned key_bits = 0;
  long long spike_len = 0;
  double spike_eps = 0.0;

  auto* otp = attack->add_subcommand("otp", "XOR a plaintext with a key");
  otp->add_option("--x", x_bits, "Plaintext bits")->required();
  otp->add_option("--k", k_bits, "Key bits")->required();

  auto* cipher = attack->add_subcommand("ciphertext", "MAP key estimate from a ciphertext");
  cipher->add_option("--c", c_bits, "Ciphertext bits")->required();
  cipher->add_option("--px", px_file, "Plaintext distribution file")->required();
  cipher->add_option("--pk", pk_file, "Key distribution file")->required();

  auto* kpa = attack->add_subcommand("kpa", "Predict remaining key bits from a known prefix");
  kpa->add_option("--pk", pk_file, "Key distribution file")->required();
  kpa->add_option("--prefix", prefix_bits, "Known key prefix bits")->required();

  auto* toep = attack->add_subcommand("toeplitz", "Toeplitz hash of a key");
  toep->add_option("--k", k_bits, "Key bits")->required();
  toep->add_option("--seed", seed_bits, "Seed bits (|k| + out_len - 1)")->required();
  toep->add_option("--out-len", out_len, "Output length")->required();

  auto* pa = attack->add_subcommand("pa", "Guessing probability before and after Toeplitz hashing");
  pa->add_option("--joint", joint_file, "Distribution file over key bits followed by side-information bits")
      ->required();
  pa->add_option("--key-bits", key_bits, "Number of leading bits that form the key")->required();
  pa->add_option("--out-len", out_len, "Hash output length")->required();
  pa->add_option("--seed", seed_list, "Seed bits (repeatable; default: every seed)");

  auto* spike = attack->add_subcommand("spike", "Build the eps-spike key distribution");
  spike->add_option("--key-len", spike_len, "Key length")->required()->check(CLI::PositiveNumber);
  spike->add_option("--eps", spike_eps, "Spike mass")->required()->check(CLI::Range(0.0, 1.0));
  spike->add_option("--k-star", kstar_bits, "Spike outcome bits")->required();
  spike->add_option("--write", write_file, "Write the distribution file here");

  RngArgs ga;
  auto* rng = app.add_subcommand("rngtest", "Sample a biased source and test exact uniformity");
  rng->add_option("--model", ga.model, "iid or markov")->check(CLI::IsMember({"iid", "markov"}));
  rng->add_option("--bias", ga.bias, "P(1) - 1/2 for the iid model")->check(CLI::Range(-0.5, 0.5));
  rng->add_option("--p01", ga.p01, "Markov P(1 | previous 0)")->check(CLI::Range(0.0, 1.0));
  rng->add_option("--p10", ga.p10, "Markov P(0 | previous 1)")->check(CLI::Range(0.0, 1.0));
  rng->add_option("--initial-one", ga.initial_one, "Markov P(first bit = 1)")->check(CLI::Range(0.0, 1.0));
  rng->add_option("--block-len", ga.block_len, "Block length in bits")->check(CLI::Range(1U, kMaxBlockLen));
  rng->add_option("--count", ga.count, "Number of blocks")->check(CLI::PositiveNumber);
  rng->add_option("--seed", ga.seed, "Generator seed");

  auto* figures = app.add_subcommand("paper-figures", "Regenerate every worked-example table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    std::optional<Report> rep;
    if (bounds->parsed()) {
      rep = bounds_report(ba);
    } else if (rate->parsed()) {
      rep = rate_report(ra);
    } else if (coupling->parsed()) {
      rep = coupling_report(ca);
    } else if (detect->parsed()) {
      rep = detect_report(da);
    } else if (rng->parsed()) {
      rep = rng_report(ga);
    } else if (figures->parsed()) {
      rep = paper_figures_report();
    } else if (otp->parsed()) {
      Report r("attack otp");
      r.input("x", x_bits);
      r.input("k", k_bits);
      r.output("ciphertext", otp_encrypt(BitString::parse(x_bits), BitString::parse(k_bits)).to_string());
      rep = std::move(r);
    } else if (cipher->parsed()) {
      Report r("attack ciphertext");
      r.input("c", c_bits);
      r.input("px", px_file);
      r.input("pk", pk_file);
      const auto pk = read_distribution_file(pk_file);
      put_attack(r, ciphertext_only_attack(BitString::parse(c_bits), read_distribution_file(px_file), pk));
      r.probability("key_guessing_probability", guessing_probability(pk));
      rep = std::move(r);
    } else if (kpa->parsed()) {
      Report r("attack kpa");
      r.input("pk", pk_file);
      r.input("prefix", prefix_bits);
      put_attack(r, kpa_next_bits(read_distribution_file(pk_file), BitString::parse(prefix_bits)));
      rep = std::move(r);
    } else if (toep->parsed()) {
      Report r("attack toeplitz");
      r.input("k", k_bits);
      r.input("seed", seed_bits);
      r.input("out_len", out_len);
      r.output("hash", toeplitz_hash(BitString::parse(k_bits), BitString::parse(seed_bits), out_len).to_string());
      rep = std::move(r);
    } else if (pa->parsed()) {
      Report r("attack pa");
      r.input("joint", joint_file);
      r.input("key_bits", key_bits);
      r.input("out_len", out_len);
      r.input("seeds", seed_list);
      const auto flat = read_distribution_file(joint_file);
      if (key_bits > flat.outcome_bits()) throw DimensionError("--key-bits exceeds the joint's outcome_bits");
      const JointDistribution joint(key_bits, flat.outcome_bits() - key_bits, flat.masses());
      std::vector<BitString> seeds;
      for (const auto& s : seed_list) seeds.push_back(BitString::parse(s));
      if (seeds.empty()) seeds = all_toeplitz_seeds(key_bits, out_len);
      const auto eff = pa_effect_on_guessing(joint, out_len, seeds);
      r.probability("before", eff.before);
      r.probability("after_min", *std::min_element(eff.after.begin(), eff.after.end()));
      r.probability("after_avg", eff.after_avg);
      r.output("seeds_evaluated", seeds.size());
      r.output("never_below_before", std::all_of(eff.after.begin(), eff.after.end(),
                                                 [&](double v) { return v >= eff.before; }));
      rep = std::move(r);
    } else if (spike->parsed()) {
      Report r("attack spike");
      r.input("key_len", spike_len);
      r.input("eps", spike_eps);
      r.input("k_star", kstar_bits);
      const auto d = spike_distribution(spike_len, spike_eps, BitString::parse(kstar_bits));
      r.output("delta_to_uniform", statistical_distance(d, Distribution::uniform(d.outcome_bits())));
      r.probability("guessing_probability", guessing_probability(d));
      if (!write_file.empty()) {
        std::ofstream f(write_file);
        if (!f) throw FileError("cannot write '" + write_file + "'");
        f << write_distribution(d);
        r.output("written", write_file);
      }
      rep = std::move(r);
    }
    if (!rep) {
      err << "error: no subcommand selected\n";
      return kExitUsage;
    }
    rep->set_command(args);
    out << (machine ? rep->to_machine() : rep->to_text());
    return kExitOk;
  } catch (const NoSolutionError& e) {
    err << "no solution: " << e.what() << "\n";
    return kExitNoSolution;
  } catch (const FileError& e) {
    err << "file error: " << e.what() << "\n";
  } catch (const FormatError& e) {
    err << "malformed input: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "precondition violated: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace qkdsec::cli
