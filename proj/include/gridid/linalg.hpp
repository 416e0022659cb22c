#pragma once

#include <Eigen/Dense>

namespace gridid {

// Relative singular-value cutoff shared by every rank decision in the
// toolkit, so identifiability and rigidity verdicts stay consistent.
inline constexpr double kDefaultRankTol = 1e-8;

namespace linalg {

// Descending singular values together with the count above
// rank_tol_rel * sigma_max.
struct SingularSpectrum {
  Eigen::VectorXd values;
  int rank = 0;
};

int rank_from_singular_values(const Eigen::VectorXd& values,
                              double rank_tol_rel);

SingularSpectrum singular_spectrum(const Eigen::MatrixXcd& m,
                                   double rank_tol_rel);

// Orthonormal basis of {z : m z = 0} as matrix columns. May have zero
// columns; for a zero matrix it spans the whole domain.
Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& m, double rank_tol_rel);

struct LeastSquaresSolution {
  Eigen::VectorXcd solution;
  SingularSpectrum spectrum;
};

// Minimum-norm least-squares solution of m x = rhs via a rank-truncated SVD.
// Rank-deficient systems yield the minimum-norm solution rather than failing.
LeastSquaresSolution min_norm_least_squares(const Eigen::MatrixXcd& m,
                                            const Eigen::VectorXcd& rhs,
                                            double rank_tol_rel);

}  // namespace linalg
}  // namespace gridid
