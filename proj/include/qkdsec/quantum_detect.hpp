#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qkdsec/distribution_io.hpp"
#include "qkdsec/errors.hpp"
#include "qkdsec/probdist.hpp"

namespace qkdsec {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxQuantumDim = 16;
inline constexpr double kQuantumTolerance = 1e-10;

namespace detail {

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

inline Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double trace_norm(const ComplexMatrix& hermitian) {
  return hermitian_eigenvalues(hermitian).cwiseAbs().sum();
}

inline void require_hermitian(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(what) + " must be square");
  if (((m - m.adjoint()).cwiseAbs().maxCoeff()) > kQuantumTolerance) {
    throw InvariantError(std::string(what) + " is not Hermitian within 1e-10");
  }
}

inline void require_psd(const ComplexMatrix& m, const char* what) {
  if (m.rows() > 0 && hermitian_eigenvalues(m).minCoeff() < -kQuantumTolerance) {
    throw InvariantError(std::string(what) + " has an eigenvalue below -1e-10");
  }
}

}  // namespace detail

/// Hermitian, positive semidefinite, unit-trace matrix of dimension <= 16.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m) {
    if (m.rows() < 1 || m.rows() > kMaxQuantumDim) {
      throw DimensionError("density matrix dimension must lie in [1, 16]");
    }
    detail::require_hermitian(m, "density matrix");
    mat_ = detail::hermitian_part(m);
    detail::require_psd(mat_, "density matrix");
    if (std::abs(mat_.trace().real() - 1.0) > kQuantumTolerance) {
      throw InvariantError("density matrix trace differs from 1 by more than 1e-10");
    }
  }

  static DensityMatrix pure(const Eigen::VectorXcd& psi) {
    const double norm = psi.norm();
    if (norm == 0.0) throw DomainError("pure state vector must be nonzero");
    const Eigen::VectorXcd v = psi / norm;
    return DensityMatrix(v * v.adjoint());
  }

  // Qubit state (I + r . sigma) / 2 for a Bloch vector with |r| <= 1.
  static DensityMatrix from_bloch(double x, double y, double z) {
    using C = std::complex<double>;
    ComplexMatrix m(2, 2);
    m << C(0.5 * (1.0 + z), 0.0), C(0.5 * x, -0.5 * y), C(0.5 * x, 0.5 * y), C(0.5 * (1.0 - z), 0.0);
    return DensityMatrix(m);
  }

  static DensityMatrix maximally_mixed(int dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  // diag(p(0), p(1), ...): the classical distribution as a commuting state.
  static DensityMatrix diagonal(const Distribution& p) {
    const auto m = p.masses();
    if (m.size() > static_cast<std::size_t>(kMaxQuantumDim)) {
      throw ScaleError("classical embedding limited to 16 outcomes");
    }
    ComplexMatrix d = ComplexMatrix::Zero(static_cast<int>(m.size()), static_cast<int>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) d(static_cast<int>(i), static_cast<int>(i)) = m[i];
    return DensityMatrix(d);
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& matrix() const { return mat_; }

 private:
  ComplexMatrix mat_;
};

/// Measurement given by PSD elements summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvariantError("POVM needs at least one element");
    const auto d = elements_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (auto& e : elements_) {
      if (e.rows() != d || e.cols() != d) throw DimensionError("POVM elements differ in dimension");
      detail::require_hermitian(e, "POVM element");
      e = detail::hermitian_part(e);
      detail::require_psd(e, "POVM element");
      sum += e;
    }
    if ((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kQuantumTolerance) {
      throw InvariantError("POVM elements do not sum to the identity within 1e-10");
    }
  }

  static Povm computational_basis(int dim) {
    std::vector<ComplexMatrix> els;
    for (int i = 0; i < dim; ++i) {
      ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
      e(i, i) = 1.0;
      els.push_back(std::move(e));
    }
    return Povm(std::move(els));
  }

  static Povm trivial(int dim) { return Povm({ComplexMatrix::Identity(dim, dim)}); }

  int dim() const { return static_cast<int>(elements_.front().rows()); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }

  // Tr(rho Pi_i) for every element.
  std::vector<double> outcome_probabilities(const DensityMatrix& rho) const {
    if (rho.dim() != dim()) throw DimensionError("POVM and state dimensions differ");
    std::vector<double> out;
    out.reserve(elements_.size());
    for (const auto& e : elements_) out.push_back((rho.matrix() * e).trace().real());
    return out;
  }

 private:
  std::vector<ComplexMatrix> elements_;
};

inline void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("density matrices differ in dimension (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

/// 1/2 ||rho - sigma||_1 from the eigenvalues of the Hermitian difference.
inline double trace_distance_q(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return 0.5 * detail::trace_norm(rho.matrix() - sigma.matrix());
}

/// Minimum error probability for telling rho1 (prior `prior1`) from rho2:
/// 1/2 (1 - ||prior1 rho1 - (1 - prior1) rho2||_1).
inline double helstrom_min_error(const DensityMatrix& rho1, const DensityMatrix& rho2, double prior1) {
  require_same_dim(rho1, rho2);
  if (!(prior1 >= 0.0 && prior1 <= 1.0)) throw DomainError("prior must lie in [0, 1]");
  const ComplexMatrix gamma = prior1 * rho1.matrix() - (1.0 - prior1) * rho2.matrix();
  return 0.5 * (1.0 - detail::trace_norm(gamma));
}

/// Statistical distance between the outcome distributions of one POVM
/// applied to rho and to sigma. Never exceeds trace_distance_q.
inline double measured_distance(const DensityMatrix& rho, const DensityMatrix& sigma, const Povm& m) {
  require_same_dim(rho, sigma);
  const auto a = m.outcome_probabilities(rho);
  const auto b = m.outcome_probabilities(sigma);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return 0.5 * sum;
}

/// Tr(rho sigma). An inner product between states, not the probability that
/// the two are "the same".
inline double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return (rho.matrix() * sigma.matrix()).trace().real();
}

// Matrix text format: the dimension d, then d*d (re, im) pairs in row-major
// order, whitespace separated.
inline ComplexMatrix parse_matrix(std::istream& in) {
  int d = 0;
  if (!(in >> d) || d < 1 || d > kMaxQuantumDim) {
    throw FormatError("matrix file must start with a dimension in [1, 16]");
  }
  ComplexMatrix m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im)) throw FormatError("matrix file ended before d*d complex entries were read");
      m(r, c) = {re, im};
    }
  }
  return m;
}

inline std::string write_matrix(const ComplexMatrix& m) {
  std::ostringstream os;
  os << m.rows() << "\n";
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c) os << "  ";
      os << format_exact(m(r, c).real()) << " " << format_exact(m(r, c).imag());
    }
    os << "\n";
  }
  return os.str();
}

inline DensityMatrix read_density_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open matrix file '" + path + "'");
  return DensityMatrix(parse_matrix(in));
}

// A POVM file is the element count followed by that many matrix blocks.
inline Povm read_povm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open POVM file '" + path + "'");
  int count = 0;
  if (!(in >> count) || count < 1) throw FormatError("POVM file must start with a positive element count");
  std::vector<ComplexMatrix> els;
  for (int i = 0; i < count; ++i) els.push_back(parse_matrix(in));
  return Povm(std::move(els));
}

}  // namespace qkdsec
