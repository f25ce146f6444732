#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qkdsec/probdist.hpp"

// Text form of a Distribution:
//
//   {"outcome_bits": 2, "masses": [0.25, 0.25, 0.25, 0.25]}
//   {"outcome_bits": 8, "spike": {"outcome": "10110001", "epsilon": 0.0625}}
//
// Outcome index is the MSB-first integer value of the bitstring. Reals are
// written with 17 significant digits so a write/read cycle is lossless.
namespace qkdsec {

inline std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string write_distribution(const Distribution& p) {
  std::ostringstream os;
  os << "{\"outcome_bits\": " << p.outcome_bits() << ", ";
  if (p.is_spike()) {
    os << "\"spike\": {\"outcome\": \"" << p.spike_outcome().to_string()
       << "\", \"epsilon\": " << format_exact(p.spike_mass()) << "}";
  } else {
    os << "\"masses\": [";
    auto m = p.dense_masses();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) os << ", ";
      os << format_exact(m[i]);
    }
    os << "]";
  }
  os << "}\n";
  return os.str();
}

inline Distribution parse_distribution(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("distribution file is not a valid document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("outcome_bits") || !doc["outcome_bits"].is_number_unsigned()) {
    throw FormatError("distribution file needs a nonnegative integer field 'outcome_bits'");
  }
  const auto bits = doc["outcome_bits"].get<unsigned>();
  const bool has_masses = doc.contains("masses");
  const bool has_spike = doc.contains("spike");
  if (has_masses == has_spike) {
    throw FormatError("distribution file needs exactly one of 'masses' or 'spike'");
  }
  if (has_masses) {
    const auto& arr = doc["masses"];
    if (!arr.is_array()) throw FormatError("'masses' must be an array of reals");
    std::vector<double> m;
    m.reserve(arr.size());
    for (const auto& v : arr) {
      if (!v.is_number()) throw FormatError("'masses' must be an array of reals");
      m.push_back(v.get<double>());
    }
    return Distribution::dense(bits, std::move(m));
  }
  const auto& s = doc["spike"];
  if (!s.is_object() || !s.contains("outcome") || !s["outcome"].is_string() || !s.contains("epsilon") ||
      !s["epsilon"].is_number()) {
    throw FormatError("'spike' needs a string 'outcome' and a real 'epsilon'");
  }
  auto outcome = BitString::parse(s["outcome"].get<std::string>());
  if (outcome.size() != bits) throw FormatError("spike outcome length differs from 'outcome_bits'");
  return Distribution::spike(outcome, s["epsilon"].get<double>());
}

inline Distribution read_distribution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open distribution file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_distribution(ss.str());
}

}  // namespace qkdsec
