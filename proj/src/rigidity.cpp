#include "gridid/rigidity.hpp"

#include <algorithm>
#include <limits>

namespace gridid {

Realization::Realization(Eigen::MatrixXcd points) : points_(std::move(points)) {
  if (points_.cols() < 1) {
    throw ShapeError("realization dimension must be at least 1");
  }
  NodeCount check(static_cast<int>(points_.rows()));
}

Eigen::VectorXcd Realization::stacked() const {
  const int n = node_count();
  const int tau = dimension();
  Eigen::VectorXcd stacked(static_cast<Eigen::Index>(n) * tau);
  for (int i = 0; i < n; ++i) {
    stacked.segment(static_cast<Eigen::Index>(i) * tau, tau) =
        points_.row(i).transpose();
  }
  return stacked;
}

Realization realization_from_measurements(const MeasurementSet& set) {
  Eigen::MatrixXcd points(set.node_count(), set.snapshot_count());
  for (int k = 1; k <= set.snapshot_count(); ++k) {
    points.col(k - 1) = set.snapshot(k).voltages;
  }
  return Realization(std::move(points));
}

Eigen::MatrixXcd build_rigidity_matrix(const Realization& realization,
                                       const EdgeIndexing& indexing) {
  const int n = realization.node_count();
  const int tau = realization.dimension();
  if (indexing.node_count() != n) {
    throw ShapeError("edge indexing is for " +
                     std::to_string(indexing.node_count()) +
                     " nodes but realization has " + std::to_string(n));
  }
  Eigen::MatrixXcd rigidity = Eigen::MatrixXcd::Zero(
      indexing.edge_count(), static_cast<Eigen::Index>(n) * tau);
  for (int l = 0; l < indexing.edge_count(); ++l) {
    const Edge& edge = indexing.edge_at(l);
    const Eigen::RowVectorXcd difference =
        realization.points().row(edge.i - 1) -
        realization.points().row(edge.j - 1);
    rigidity.block(l, static_cast<Eigen::Index>(edge.i - 1) * tau, 1, tau) =
        difference;
    rigidity.block(l, static_cast<Eigen::Index>(edge.j - 1) * tau, 1, tau) =
        -difference;
  }
  return rigidity;
}

std::vector<Eigen::VectorXcd> trivial_motion_basis(
    const Realization& realization) {
  const int n = realization.node_count();
  const int tau = realization.dimension();
  const Eigen::Index length = static_cast<Eigen::Index>(n) * tau;
  std::vector<Eigen::VectorXcd> motions;
  motions.reserve(static_cast<std::size_t>(tau) * (tau + 1) / 2);

  for (int d = 0; d < tau; ++d) {
    Eigen::VectorXcd translation = Eigen::VectorXcd::Zero(length);
    for (int i = 0; i < n; ++i) {
      translation(static_cast<Eigen::Index>(i) * tau + d) = 1.0;
    }
    motions.push_back(std::move(translation));
  }
  for (int p = 0; p < tau; ++p) {
    for (int q = p + 1; q < tau; ++q) {
      Eigen::VectorXcd rotation = Eigen::VectorXcd::Zero(length);
      for (int i = 0; i < n; ++i) {
        rotation(static_cast<Eigen::Index>(i) * tau + p) =
            -realization.points()(i, q);
        rotation(static_cast<Eigen::Index>(i) * tau + q) =
            realization.points()(i, p);
      }
      motions.push_back(std::move(rotation));
    }
  }
  return motions;
}

namespace {

// The stacked coefficient system orders unknowns snapshot-major
// ([z^(1); ...; z^(tau)], blocks of n) while the rigidity matrix orders them
// node-major ([x_1; ...; x_n], blocks of tau). The kernels coincide under the
// reindexing (k-1)n + i  <->  (i-1)tau + k.
Eigen::MatrixXcd snapshot_major_to_node_major(const Eigen::MatrixXcd& in,
                                              int n, int tau) {
  Eigen::MatrixXcd out(in.rows(), in.cols());
  for (int k = 0; k < tau; ++k) {
    for (int i = 0; i < n; ++i) {
      out.row(static_cast<Eigen::Index>(i) * tau + k) =
          in.row(static_cast<Eigen::Index>(k) * n + i);
    }
  }
  return out;
}

Eigen::MatrixXcd node_major_to_snapshot_major(const Eigen::MatrixXcd& in,
                                              int n, int tau) {
  Eigen::MatrixXcd out(in.rows(), in.cols());
  for (int k = 0; k < tau; ++k) {
    for (int i = 0; i < n; ++i) {
      out.row(static_cast<Eigen::Index>(k) * n + i) =
          in.row(static_cast<Eigen::Index>(i) * tau + k);
    }
  }
  return out;
}

double scaled_residual(const Eigen::MatrixXcd& matrix,
                       const Eigen::MatrixXcd& kernel) {
  if (kernel.cols() == 0) return 0.0;
  const double matrix_norm = matrix.norm();
  if (matrix_norm == 0.0) return 0.0;
  return (matrix * kernel).norm() / matrix_norm;
}

constexpr double kTrivialMotionTol = 1e-10;

}  // namespace

RigidityCheckReport check_equivalence(const CoefficientMatrix& coefficient,
                                      const MeasurementSet& set,
                                      double rank_tol_rel) {
  const int n = coefficient.node_count;
  const int tau = coefficient.snapshot_count;
  if (set.node_count() != n || set.snapshot_count() != tau) {
    throw ShapeError("coefficient matrix provenance (n = " +
                     std::to_string(n) + ", tau = " + std::to_string(tau) +
                     ") does not match measurement set (n = " +
                     std::to_string(set.node_count()) +
                     ", tau = " + std::to_string(set.snapshot_count()) + ")");
  }

  const Realization realization = realization_from_measurements(set);
  const Eigen::MatrixXcd rigidity =
      build_rigidity_matrix(realization, coefficient.indexing);
  const Eigen::MatrixXcd coefficient_t = coefficient.values.transpose();

  RigidityCheckReport report;
  report.rigidity_rank =
      linalg::singular_spectrum(rigidity, rank_tol_rel).rank;
  report.coefficient_rank =
      linalg::singular_spectrum(coefficient_t, rank_tol_rel).rank;
  if (n >= tau) {
    report.expected_rank = n * tau - tau * (tau + 1) / 2;
  }

  const Eigen::MatrixXcd kernel_coefficient =
      linalg::kernel_basis(coefficient_t, rank_tol_rel);
  const Eigen::MatrixXcd kernel_rigidity =
      linalg::kernel_basis(rigidity, rank_tol_rel);

  const double residual_in_rigidity = scaled_residual(
      rigidity, snapshot_major_to_node_major(kernel_coefficient, n, tau));
  const double residual_in_coefficient = scaled_residual(
      coefficient_t, node_major_to_snapshot_major(kernel_rigidity, n, tau));
  report.max_cross_residual =
      std::max(residual_in_rigidity, residual_in_coefficient);
  report.nullspace_match =
      report.rigidity_rank == report.coefficient_rank &&
      report.max_cross_residual <= rank_tol_rel;

  const double rigidity_norm = rigidity.norm();
  report.trivial_motions_annihilated = true;
  for (const auto& motion : trivial_motion_basis(realization)) {
    const double scale = rigidity_norm * motion.norm();
    const double residual = (rigidity * motion).norm();
    if (residual > kTrivialMotionTol *
                       std::max(scale, std::numeric_limits<double>::min())) {
      report.trivial_motions_annihilated = false;
      break;
    }
  }
  return report;
}

}  // namespace gridid
