#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>

#include "qkdsec/errors.hpp"

namespace qkdsec {

/// A probability held as a base-2 exponent, so quantities like 2^-10000 stay
/// representable. The complement exponent log2(1 - p) is carried alongside;
/// values built with one_minus_pow2() keep it exact, which matters when p is
/// within an ulp of 1.
class LogProb {
 public:
  static constexpr double kLog10Of2 = 0.30102999566398119521;

  static LogProb zero() { return LogProb(-kInf, 0.0); }
  static LogProb one() { return LogProb(0.0, -kInf); }

  static LogProb from_log2(double e) {
    if (std::isnan(e) || e > 0.0) throw DomainError("LogProb exponent must be <= 0");
    return LogProb(e, complement_of(e));
  }

  static LogProb from_value(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0, 1]");
    if (p == 0.0) return zero();
    return LogProb(std::log2(p), std::log1p(-p) / kLn2);
  }

  static LogProb pow2(double e) { return from_log2(e); }

  // 1 - 2^e for e <= 0, exact in complement form.
  static LogProb one_minus_pow2(double e) {
    if (std::isnan(e) || e > 0.0) throw DomainError("one_minus_pow2 exponent must be <= 0");
    return LogProb(complement_of(e), e);
  }

  double log2() const { return log2_; }
  double log10() const { return log2_ * kLog10Of2; }
  // Above 1/2 the value is rebuilt from the complement, which is exact for
  // one_minus_pow2() results.
  double value() const {
    if (log2_ > -1.0) return 1.0 - std::exp2(complement_log2_);
    return std::exp2(log2_);
  }

  // log2(1 - p); -inf when p == 1.
  double complement_log2() const { return complement_log2_; }
  double complement_value() const { return std::exp2(complement_log2_); }

  // Sum, saturating at 1 (a probability bound above 1 carries no information).
  friend LogProb operator+(const LogProb& a, const LogProb& b) {
    const double hi = std::max(a.log2_, b.log2_);
    const double lo = std::min(a.log2_, b.log2_);
    if (hi == -kInf) return zero();
    const double s = hi + std::log2(1.0 + std::exp2(lo - hi));
    if (s >= 0.0) return one();
    return LogProb(s, complement_of(s));
  }

  friend LogProb operator*(const LogProb& a, const LogProb& b) {
    const double s = a.log2_ + b.log2_;
    if (s == -kInf || std::isnan(s)) return zero();
    return LogProb(s, complement_of(s));
  }

  LogProb pow(double exponent) const {
    if (!(exponent > 0.0)) throw DomainError("LogProb::pow needs a positive exponent");
    if (log2_ == -kInf) return zero();
    const double s = log2_ * exponent;
    return LogProb(s, complement_of(s));
  }

  friend bool operator==(const LogProb& a, const LogProb& b) { return a.log2_ == b.log2_; }
  friend std::partial_ordering operator<=>(const LogProb& a, const LogProb& b) {
    return a.log2_ <=> b.log2_;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  static constexpr double kLn2 = 0.69314718055994530942;

  LogProb(double l2, double c2) : log2_(l2), complement_log2_(c2) {}

  // log2(1 - 2^e).
  static double complement_of(double e) {
    if (e == 0.0) return -kInf;
    if (e == -kInf) return 0.0;
    if (e < -1.0) return std::log1p(-std::exp2(e)) / kLn2;
    return std::log2(-std::expm1(e * kLn2));
  }

  double log2_;
  double complement_log2_;
};

}  // namespace qkdsec
