#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "qmasa/linalg.hpp"

namespace qmasa {

inline Eigen::MatrixXd to_eigen(const RatMatrix& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = rat_double(m[i][j]);
  return out;
}

// Smallest singular value of a map M between inner-product spaces with Gram
// matrices G_source (domain) and G_target (codomain):
//   sigma_min^2 = min eig of (M^T G_target M, G_source).
inline double smallest_singular_value(const RatMatrix& m, const RatMatrix& g_target,
                                      const RatMatrix& g_source) {
  Eigen::MatrixXd M = to_eigen(m), Gt = to_eigen(g_target), Gs = to_eigen(g_source);
  Eigen::MatrixXd A = M.transpose() * Gt * M;
  // Symmetrize away roundoff before the generalized solve.
  A = 0.5 * (A + A.transpose());
  Eigen::MatrixXd B = 0.5 * (Gs + Gs.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("generalized eigenvalue solve failed");
  double lam = es.eigenvalues().minCoeff();
  return lam <= 0 ? 0.0 : std::sqrt(lam);
}

// Eigenvalue range of the k x k symmetric Toeplitz matrix a^{|i-j|} compared
// with the closed-form band ((1-|a|)/(1+|a|), (1+|a|)/(1-|a|)).
struct ToeplitzBounds {
  double eig_min = 0, eig_max = 0;
  double lower = 0, upper = 0;
};

inline ToeplitzBounds toeplitz_bounds(double a, int k) {
  if (!(std::abs(a) < 1.0))
    throw std::invalid_argument("toeplitz bounds need |a| < 1");
  if (k < 1) throw std::invalid_argument("toeplitz bounds need k >= 1");
  Eigen::MatrixXd t(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) t(i, j) = std::pow(a, std::abs(i - j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue solve failed");
  ToeplitzBounds out;
  out.eig_min = es.eigenvalues().minCoeff();
  out.eig_max = es.eigenvalues().maxCoeff();
  out.lower = (1.0 - std::abs(a)) / (1.0 + std::abs(a));
  out.upper = (1.0 + std::abs(a)) / (1.0 - std::abs(a));
  return out;
}

}  // namespace qmasa
