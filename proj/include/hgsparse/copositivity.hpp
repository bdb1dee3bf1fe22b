#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

#include "hgsparse/hypergraph.hpp"

namespace hgsparse {

// Machinery for quadratic forms restricted to a monotone cone. A symmetric A
// with A*1 = 0 is nonnegative on the cone of pi exactly when its reduced
// (n-1)x(n-1) matrix is copositive; entrywise-nonnegative and PSD matrices
// are certified copositive, anything else is probed by randomized refutation.

enum class CopositivityStatus {
  CertifiedNonnegative,  // all entries >= 0: copositive
  CertifiedPsd,          // positive semidefinite: copositive
  Refuted,               // found nonnegative y with y'Cy < 0
  Inconclusive,
};

struct CopositivityVerdict {
  CopositivityStatus status = CopositivityStatus::Inconclusive;
  std::optional<Eigen::VectorXd> witness;  // present iff Refuted; entries >= 0
  double witness_value = 0.0;              // y'Cy at the witness
};

// Bidiagonal (n-1) x n map taking x to its successive differences
// (x_1 - x_2, ..., x_{n-1} - x_n); rows sum to zero.
inline Eigen::MatrixXd difference_matrix(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n - 1, n);
  for (int i = 0; i + 1 < n; ++i) {
    j(i, i) = 1.0;
    j(i, i + 1) = -1.0;
  }
  return j;
}

// Upper-triangular all-ones n x n map taking nonnegative y to the
// nonincreasing vector of its suffix sums; the inverse of the difference map
// extended by the last coordinate.
inline Eigen::MatrixXd suffix_sum_matrix(int n) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) e(i, j) = 1.0;
  }
  return e;
}

// 0/1 matrix P with (P x)(i) = x(order[i]).
inline Eigen::MatrixXd permutation_matrix(const Permutation& pi) {
  const int n = pi.size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) p(i, pi.order()[i]) = 1.0;
  return p;
}

// Extracts the (n-1)x(n-1) matrix C with A = P' J' C J P: A is nonnegative on
// the monotone cone of pi iff C is copositive. Requires A symmetric with
// A*1 = 0; the discarded last row/column of the conjugated matrix must vanish.
inline Eigen::MatrixXd reduce_to_copositive(const Eigen::MatrixXd& a, const Permutation& pi) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || n < 2) {
    throw std::invalid_argument("reduce_to_copositive: matrix must be square with n >= 2");
  }
  if (pi.size() != n) {
    throw std::invalid_argument("reduce_to_copositive: permutation size does not match matrix");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (((a - a.transpose()).cwiseAbs().maxCoeff()) > 1e-9 * scale) {
    throw std::invalid_argument("reduce_to_copositive: matrix is not symmetric");
  }
  if ((a * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument("reduce_to_copositive: matrix rows must sum to zero");
  }

  const Eigen::MatrixXd p = permutation_matrix(pi);
  const Eigen::MatrixXd e = suffix_sum_matrix(static_cast<int>(n));
  const Eigen::MatrixXd conjugated = e.transpose() * (p * a * p.transpose()) * e;

  const double border = std::max(conjugated.row(n - 1).cwiseAbs().maxCoeff(),
                                 conjugated.col(n - 1).cwiseAbs().maxCoeff());
  if (border > 1e-9 * static_cast<double>(n) * scale) {
    throw std::invalid_argument("reduce_to_copositive: trailing row/column does not vanish");
  }
  return conjugated.topLeftCorner(n - 1, n - 1);
}

// Certifies copositivity by entrywise nonnegativity or PSD-ness, otherwise
// samples nonnegative directions (standard basis plus uniform simplex draws)
// hunting for a refutation witness. Deciding copositivity exactly is co-NP-
// hard, so "Inconclusive" is a possible outcome.
inline CopositivityVerdict check_copositive(const Eigen::MatrixXd& c, int refutation_samples,
                                            std::uint64_t rng_seed) {
  const Eigen::Index n = c.rows();
  if (c.cols() != n) throw std::invalid_argument("check_copositive: matrix must be square");
  const double scale = std::max(1.0, n > 0 ? c.cwiseAbs().maxCoeff() : 0.0);
  if (n > 0 && (c - c.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument("check_copositive: matrix is not symmetric");
  }

  CopositivityVerdict verdict;
  if (n == 0 || c.minCoeff() >= -1e-12) {
    verdict.status = CopositivityStatus::CertifiedNonnegative;
    return verdict;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() >= -1e-9) {
    verdict.status = CopositivityStatus::CertifiedPsd;
    return verdict;
  }

  auto try_witness = [&](const Eigen::VectorXd& y) {
    const double value = y.dot(c * y);
    if (value < -1e-9) {
      verdict.status = CopositivityStatus::Refuted;
      verdict.witness = y;
      verdict.witness_value = value;
      return true;
    }
    return false;
  };

  for (Eigen::Index i = 0; i < n; ++i) {
    if (try_witness(Eigen::VectorXd::Unit(n, i))) return verdict;
  }

  std::mt19937_64 rng(rng_seed);
  std::exponential_distribution<double> expo(1.0);
  for (int s = 0; s < refutation_samples; ++s) {
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = expo(rng);
    y /= y.sum();  // uniform on the simplex
    if (try_witness(y)) return verdict;
  }

  verdict.status = CopositivityStatus::Inconclusive;
  return verdict;
}

}  // namespace hgsparse
