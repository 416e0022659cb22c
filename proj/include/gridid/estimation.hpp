#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "gridid/linalg.hpp"
#include "gridid/measurements.hpp"
#include "gridid/topology.hpp"

namespace gridid {

// Relative cutoff below which an estimated edge admittance is treated as an
// absent edge.
inline constexpr double kDefaultZeroTol = 1e-6;

// Stacked voltage coefficient matrix. Block k (rows (k-1)n .. kn-1) equals
// H diag(H^T V^(k)); it maps the edge admittance vector to the injected
// currents of snapshot k. Columns follow `indexing`.
struct CoefficientMatrix {
  Eigen::MatrixXcd values;  // (n tau) x e
  int node_count = 0;
  int snapshot_count = 0;
  EdgeIndexing indexing;
};

// Single-snapshot coefficient block H diag(H^T V), n x e.
Eigen::MatrixXcd build_snapshot_coefficient(const Eigen::MatrixXd& incidence,
                                            const Eigen::VectorXcd& voltages);

// Vertical stack of per-snapshot blocks in snapshot order.
CoefficientMatrix build_stacked_coefficient(const Eigen::MatrixXd& incidence,
                                            const MeasurementSet& set);

// Injected currents stacked in the same snapshot-major order as the
// coefficient matrix rows.
Eigen::VectorXcd stacked_currents(const MeasurementSet& set);

struct IdentifiabilityReport {
  int node_count = 0;
  int snapshot_count = 0;
  int edge_count = 0;                // e = n(n-1)/2 unknowns
  int achieved_rank = 0;             // singular values above tolerance
  std::optional<int> expected_rank;  // n tau - tau(tau+1)/2, only when n >= tau
  int nullity = 0;                   // e - achieved_rank
  bool unique = false;               // achieved_rank == e
  int min_tau = 0;                   // n - 1
  Eigen::VectorXd singular_values;
  double condition_number = 0.0;     // +inf when the solution is not unique
};

IdentifiabilityReport analyze_identifiability(
    const CoefficientMatrix& coefficient,
    double rank_tol_rel = kDefaultRankTol);

// Minimum number of snapshots for a unique admittance solution: n - 1.
int min_measurements(NodeCount n);

// Generic rank of the stacked coefficient matrix, n tau - tau(tau+1)/2.
// Defined only for n >= tau; throws DomainError otherwise.
int expected_rank(int node_count, int snapshot_count);

struct EstimationResult {
  Eigen::VectorXcd admittances;  // edge order per CoefficientMatrix::indexing
  IdentifiabilityReport report;
  double residual_norm = 0.0;  // ||A y - i||_2 / ||i||_2
};

// Minimum-norm least-squares estimate of the edge admittance vector. When
// the system is not uniquely solvable the minimum-norm solution is still
// returned; report.unique is authoritative.
EstimationResult estimate_admittance(const CoefficientMatrix& coefficient,
                                     const Eigen::VectorXcd& currents,
                                     double rank_tol_rel = kDefaultRankTol);

struct IdentifiedEdge {
  int i = 0;
  int j = 0;
  std::complex<double> admittance;
};

struct PrunedEdge {
  int i = 0;
  int j = 0;
  double magnitude = 0.0;
};

// Retained and pruned candidate edges; the two lists partition all e
// candidates.
struct IdentifiedNetwork {
  std::vector<IdentifiedEdge> edges;
  std::vector<PrunedEdge> pruned;
  double residual_norm = 0.0;
};

// Keeps edge (i,j) iff |y_(i,j)| > zero_tol_rel * max_l |y_l|. An all-zero
// vector retains nothing.
IdentifiedNetwork extract_topology(const Eigen::VectorXcd& admittances,
                                   const EdgeIndexing& indexing,
                                   double zero_tol_rel = kDefaultZeroTol,
                                   double residual_norm = 0.0);

// Symmetric n x n admittance matrix: off-diagonal (i,j) is -y_(i,j), each
// diagonal entry is the sum of the admittances incident to that node, so
// every row sums to zero.
Eigen::MatrixXcd assemble_admittance_matrix(const Eigen::VectorXcd& admittances,
                                            const EdgeIndexing& indexing);

}  // namespace gridid
