#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "qkdsec/errors.hpp"

namespace qkdsec::lp {

struct Solution {
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase simplex for   min c.x  s.t.  A x = b,  x >= 0,  b >= 0.
// Bland's rule throughout, so degenerate transportation problems terminate.
// Intended for a few dozen variables; no attempt at sparsity.
class StandardFormSimplex {
 public:
  StandardFormSimplex(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double> c)
      : m_(a.size()), n_(c.size()) {
    if (b.size() != m_) throw DimensionError("simplex: b must have one entry per constraint");
    width_ = n_ + m_ + 1;
    tab_.assign((m_ + 1) * width_, 0.0);
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (a[i].size() != n_) throw DimensionError("simplex: ragged constraint matrix");
      double sign = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * a[i][j];
      at(i, n_ + i) = 1.0;
      at(i, rhs()) = sign * b[i];
      basis_[i] = n_ + i;
    }
    cost_ = std::move(c);
  }

  Solution solve() {
    // Phase I: minimise the sum of artificials.
    for (std::size_t j = 0; j < width_; ++j) obj(j) = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) obj(j) -= at(i, j);
      obj(rhs()) -= at(i, rhs());
    }
    iterate(n_ + m_);
    if (-obj(rhs()) > 1e-9) throw DomainError("simplex: constraints are infeasible");
    drive_out_artificials();

    // Phase II on the original objective; artificials may not re-enter.
    for (std::size_t j = 0; j < width_; ++j) obj(j) = j < n_ ? cost_[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = basis_[i] < n_ ? cost_[basis_[i]] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) obj(j) -= cb * at(i, j);
    }
    iterate(n_);

    Solution s;
    s.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) s.x[basis_[i]] = at(i, rhs());
    }
    for (std::size_t j = 0; j < n_; ++j) s.objective += cost_[j] * s.x[j];
    return s;
  }

 private:
  static constexpr double kEps = 1e-12;

  double& at(std::size_t i, std::size_t j) { return tab_[i * width_ + j]; }
  double& obj(std::size_t j) { return tab_[m_ * width_ + j]; }
  std::size_t rhs() const { return width_ - 1; }

  void pivot(std::size_t row, std::size_t col) {
    const double p = at(row, col);
    for (std::size_t j = 0; j < width_; ++j) at(row, j) /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = tab_[i * width_ + col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) tab_[i * width_ + j] -= f * at(row, j);
    }
    basis_[row] = col;
  }

  // Columns [0, allowed) may enter the basis.
  void iterate(std::size_t allowed) {
    for (std::size_t guard = 0; guard < 100000; ++guard) {
      std::size_t col = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (obj(j) < -kEps) {
          col = j;
          break;
        }
      }
      if (col == allowed) return;
      std::size_t row = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, col) <= kEps) continue;
        const double ratio = at(i, rhs()) / at(i, col);
        if (ratio < best - kEps || (ratio <= best + kEps && row < m_ && basis_[i] < basis_[row])) {
          best = ratio;
          row = i;
        }
      }
      if (row == m_) throw DomainError("simplex: objective is unbounded");
      pivot(row, col);
    }
    throw Error("simplex: iteration limit reached");
  }

  // Artificials left basic at level zero are pivoted out where possible; rows
  // with no nonzero structural entry are redundant and stay inert.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(at(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_ = 0;
  std::vector<double> tab_;
  std::vector<std::size_t> basis_;
  std::vector<double> cost_;
};

}  // namespace qkdsec::lp
