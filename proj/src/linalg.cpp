#include "gridid/linalg.hpp"

#include <complex>

#include <Eigen/SVD>

#include "gridid/errors.hpp"

namespace gridid::linalg {

namespace {

using ComplexSvd = Eigen::BDCSVD<Eigen::MatrixXcd>;

}  // namespace

int rank_from_singular_values(const Eigen::VectorXd& values,
                              double rank_tol_rel) {
  if (values.size() == 0) return 0;
  const double sigma_max = values(0);
  if (!(sigma_max > 0.0)) return 0;
  const double cutoff = rank_tol_rel * sigma_max;
  int rank = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > cutoff) ++rank;
  }
  return rank;
}

SingularSpectrum singular_spectrum(const Eigen::MatrixXcd& m,
                                   double rank_tol_rel) {
  ComplexSvd svd(m);
  SingularSpectrum spectrum;
  spectrum.values = svd.singularValues();
  spectrum.rank = rank_from_singular_values(spectrum.values, rank_tol_rel);
  return spectrum;
}

Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& m, double rank_tol_rel) {
  ComplexSvd svd(m, Eigen::ComputeFullV);
  const int rank =
      rank_from_singular_values(svd.singularValues(), rank_tol_rel);
  return svd.matrixV().rightCols(m.cols() - rank);
}

LeastSquaresSolution min_norm_least_squares(const Eigen::MatrixXcd& m,
                                            const Eigen::VectorXcd& rhs,
                                            double rank_tol_rel) {
  if (m.rows() != rhs.size()) {
    throw ShapeError("least squares: matrix has " + std::to_string(m.rows()) +
                     " rows but right-hand side has " +
                     std::to_string(rhs.size()) + " entries");
  }
  ComplexSvd svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  LeastSquaresSolution result;
  result.spectrum.values = svd.singularValues();
  result.spectrum.rank =
      rank_from_singular_values(result.spectrum.values, rank_tol_rel);
  const int rank = result.spectrum.rank;
  if (rank == 0) {
    result.solution = Eigen::VectorXcd::Zero(m.cols());
    return result;
  }
  const Eigen::VectorXcd projected =
      svd.matrixU().leftCols(rank).adjoint() * rhs;
  const Eigen::VectorXcd scaled =
      projected.cwiseQuotient(result.spectrum.values.head(rank)
                                  .cast<std::complex<double>>());
  result.solution = svd.matrixV().leftCols(rank) * scaled;
  return result;
}

}  // namespace gridid::linalg
