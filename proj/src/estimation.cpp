#include "gridid/estimation.hpp"

#include <cmath>
#include <limits>

namespace gridid {

Eigen::MatrixXcd build_snapshot_coefficient(const Eigen::MatrixXd& incidence,
                                            const Eigen::VectorXcd& voltages) {
  if (incidence.rows() != voltages.size()) {
    throw ShapeError("incidence matrix has " + std::to_string(incidence.rows()) +
                     " rows but voltage vector has " +
                     std::to_string(voltages.size()) + " entries");
  }
  const Eigen::MatrixXcd complex_incidence =
      incidence.cast<std::complex<double>>();
  const Eigen::VectorXcd edge_drops = complex_incidence.transpose() * voltages;
  return complex_incidence * edge_drops.asDiagonal();
}

CoefficientMatrix build_stacked_coefficient(const Eigen::MatrixXd& incidence,
                                            const MeasurementSet& set) {
  const int n = set.node_count();
  const int tau = set.snapshot_count();
  if (incidence.rows() != n) {
    throw ShapeError("incidence matrix is for " +
                     std::to_string(incidence.rows()) +
                     " nodes but measurement set has " + std::to_string(n));
  }
  EdgeIndexing indexing(n);
  Eigen::MatrixXcd stacked(static_cast<Eigen::Index>(n) * tau,
                           indexing.edge_count());
  for (int k = 1; k <= tau; ++k) {
    stacked.middleRows(static_cast<Eigen::Index>(k - 1) * n, n) =
        build_snapshot_coefficient(incidence, set.snapshot(k).voltages);
  }
  return CoefficientMatrix{std::move(stacked), n, tau, std::move(indexing)};
}

Eigen::VectorXcd stacked_currents(const MeasurementSet& set) {
  const int n = set.node_count();
  const int tau = set.snapshot_count();
  Eigen::VectorXcd currents(static_cast<Eigen::Index>(n) * tau);
  for (int k = 1; k <= tau; ++k) {
    currents.segment(static_cast<Eigen::Index>(k - 1) * n, n) =
        set.snapshot(k).currents;
  }
  return currents;
}

int min_measurements(NodeCount n) { return n.value() - 1; }

int expected_rank(int node_count, int snapshot_count) {
  NodeCount n(node_count);
  if (snapshot_count < 1) {
    throw DomainError("snapshot count must be >= 1, got " +
                      std::to_string(snapshot_count));
  }
  if (node_count < snapshot_count) {
    throw DomainError("expected rank formula requires n >= tau, got n = " +
                      std::to_string(node_count) +
                      ", tau = " + std::to_string(snapshot_count));
  }
  return node_count * snapshot_count -
         snapshot_count * (snapshot_count + 1) / 2;
}

namespace {

IdentifiabilityReport make_report(const CoefficientMatrix& coefficient,
                                  const linalg::SingularSpectrum& spectrum) {
  IdentifiabilityReport report;
  report.node_count = coefficient.node_count;
  report.snapshot_count = coefficient.snapshot_count;
  report.edge_count = coefficient.indexing.edge_count();
  report.achieved_rank = spectrum.rank;
  if (coefficient.node_count >= coefficient.snapshot_count) {
    report.expected_rank =
        expected_rank(coefficient.node_count, coefficient.snapshot_count);
  }
  report.nullity = report.edge_count - report.achieved_rank;
  report.unique = report.achieved_rank == report.edge_count;
  report.min_tau = coefficient.node_count - 1;
  report.singular_values = spectrum.values;
  if (report.unique && spectrum.rank > 0) {
    report.condition_number =
        spectrum.values(0) / spectrum.values(spectrum.rank - 1);
  } else {
    report.condition_number = std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace

IdentifiabilityReport analyze_identifiability(
    const CoefficientMatrix& coefficient, double rank_tol_rel) {
  if (coefficient.values.size() == 0) {
    throw ShapeError("coefficient matrix is empty");
  }
  const auto spectrum =
      linalg::singular_spectrum(coefficient.values, rank_tol_rel);
  return make_report(coefficient, spectrum);
}

EstimationResult estimate_admittance(const CoefficientMatrix& coefficient,
                                     const Eigen::VectorXcd& currents,
                                     double rank_tol_rel) {
  if (coefficient.values.rows() != currents.size()) {
    throw ShapeError("coefficient matrix has " +
                     std::to_string(coefficient.values.rows()) +
                     " rows but current vector has " +
                     std::to_string(currents.size()) + " entries");
  }
  auto least_squares = linalg::min_norm_least_squares(coefficient.values,
                                                      currents, rank_tol_rel);
  if (least_squares.spectrum.rank == 0) {
    throw DegenerateSystemError(
        "coefficient matrix is numerically zero; no admittance information");
  }
  EstimationResult result;
  result.admittances = std::move(least_squares.solution);
  result.report = make_report(coefficient, least_squares.spectrum);
  const double misfit =
      (coefficient.values * result.admittances - currents).norm();
  result.residual_norm =
      misfit / std::max(currents.norm(), std::numeric_limits<double>::min());
  return result;
}

IdentifiedNetwork extract_topology(const Eigen::VectorXcd& admittances,
                                   const EdgeIndexing& indexing,
                                   double zero_tol_rel, double residual_norm) {
  if (admittances.size() != indexing.edge_count()) {
    throw ShapeError("admittance vector has " +
                     std::to_string(admittances.size()) +
                     " entries, expected " +
                     std::to_string(indexing.edge_count()));
  }
  IdentifiedNetwork network;
  network.residual_norm = residual_norm;
  const double max_magnitude = admittances.size() == 0
                                   ? 0.0
                                   : admittances.cwiseAbs().maxCoeff();
  const double cutoff = zero_tol_rel * max_magnitude;
  for (int l = 0; l < indexing.edge_count(); ++l) {
    const Edge& edge = indexing.edge_at(l);
    const double magnitude = std::abs(admittances(l));
    if (max_magnitude > 0.0 && magnitude > cutoff) {
      network.edges.push_back(IdentifiedEdge{edge.i, edge.j, admittances(l)});
    } else {
      network.pruned.push_back(PrunedEdge{edge.i, edge.j, magnitude});
    }
  }
  return network;
}

Eigen::MatrixXcd assemble_admittance_matrix(const Eigen::VectorXcd& admittances,
                                            const EdgeIndexing& indexing) {
  if (admittances.size() != indexing.edge_count()) {
    throw ShapeError("admittance vector has " +
                     std::to_string(admittances.size()) +
                     " entries, expected " +
                     std::to_string(indexing.edge_count()));
  }
  const int n = indexing.node_count();
  Eigen::MatrixXcd admittance_matrix = Eigen::MatrixXcd::Zero(n, n);
  for (int l = 0; l < indexing.edge_count(); ++l) {
    const Edge& edge = indexing.edge_at(l);
    const std::complex<double> y = admittances(l);
    admittance_matrix(edge.i - 1, edge.j - 1) = -y;
    admittance_matrix(edge.j - 1, edge.i - 1) = -y;
    admittance_matrix(edge.i - 1, edge.i - 1) += y;
    admittance_matrix(edge.j - 1, edge.j - 1) += y;
  }
  return admittance_matrix;
}

}  // namespace gridid
