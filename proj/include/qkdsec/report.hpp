#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkdsec/distribution_io.hpp"
#include "qkdsec/logprob.hpp"

namespace qkdsec {

using ordered_json = nlohmann::ordered_json;

// Below this, probabilities are reported only through their exponents.
inline constexpr double kMinPrintableLog10 = -300.0;

inline ordered_json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

inline ordered_json to_json(const LogProb& p) {
  ordered_json j;
  if (p.log2() == -std::numeric_limits<double>::infinity()) {
    j["value"] = 0.0;
    j["log2"] = nullptr;
    j["log10"] = nullptr;
    return j;
  }
  // + 0.0 turns the -0 exponent of certainty into 0
  if (p.log10() >= kMinPrintableLog10) j["value"] = p.value();
  j["log2"] = p.log2() + 0.0;
  j["log10"] = p.log10() + 0.0;
  if (std::isfinite(p.complement_log2())) j["complement_log2"] = p.complement_log2() + 0.0;
  return j;
}

/// Flat key/value report. Text mode prints one "key = value" line per leaf
/// (nested objects joined with '.'); machine mode prints a single JSON
/// document with the command line, the resolved inputs and the outputs.
class Report {
 public:
  explicit Report(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  void set_command(std::vector<std::string> argv) { command_ = std::move(argv); }

  ordered_json& inputs() { return inputs_; }
  ordered_json& outputs() { return outputs_; }

  template <typename T>
  void input(const std::string& key, T&& v) {
    inputs_[key] = std::forward<T>(v);
  }

  template <typename T>
  void output(const std::string& key, T&& v) {
    outputs_[key] = std::forward<T>(v);
  }

  void probability(const std::string& key, double p) { outputs_[key] = to_json(LogProb::from_value(p)); }
  void probability(const std::string& key, const LogProb& p) { outputs_[key] = to_json(p); }

  std::string to_machine() const {
    ordered_json doc;
    doc["tool"] = "qkdsec";
    doc["subcommand"] = subcommand_;
    doc["command"] = command_;
    doc["inputs"] = inputs_;
    doc["outputs"] = outputs_;
    return doc.dump(2) + "\n";
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "# qkdsec " << subcommand_ << "\n";
    flatten(os, "input", inputs_);
    flatten(os, "", outputs_);
    return os.str();
  }

 private:
  static void flatten(std::ostringstream& os, const std::string& prefix, const ordered_json& j) {
    const bool table = j.is_array() && std::any_of(j.begin(), j.end(), [](const auto& e) { return e.is_object(); });
    if (table) {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(os, prefix + "." + std::to_string(i), j[i]);
      return;
    }
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) {
        flatten(os, prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
      }
      return;
    }
    os << prefix << " = ";
    if (j.is_number_float()) {
      os << format_exact(j.get<double>());
    } else if (j.is_string()) {
      os << j.get<std::string>();
    } else if (j.is_array()) {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        if (j[i].is_number_float()) {
          os << format_exact(j[i].get<double>());
        } else if (j[i].is_string()) {
          os << j[i].get<std::string>();
        } else {
          os << j[i].dump();
        }
      }
      os << "]";
    } else {
      os << j.dump();
    }
    os << "\n";
  }

  std::string subcommand_;
  std::vector<std::string> command_;
  ordered_json inputs_ = ordered_json::object();
  ordered_json outputs_ = ordered_json::object();
};

}  // namespace qkdsec
