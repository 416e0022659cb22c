#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "gridid/estimation.hpp"

namespace gridid {

// Placement of the n nodes as points in C^tau. Row i-1 holds node i's point;
// real frameworks are the zero-imaginary-part special case.
class Realization {
 public:
  explicit Realization(Eigen::MatrixXcd points);

  int node_count() const { return static_cast<int>(points_.rows()); }
  int dimension() const { return static_cast<int>(points_.cols()); }
  const Eigen::MatrixXcd& points() const { return points_; }

  // Node-major stacked coordinates [x_1; x_2; ...; x_n].
  Eigen::VectorXcd stacked() const;

 private:
  Eigen::MatrixXcd points_;
};

// Node i's point is its nodal voltage profile [V_i^(1), ..., V_i^(tau)].
Realization realization_from_measurements(const MeasurementSet& set);

// e x (n tau) rigidity matrix: the row for edge (i,j) carries (x_i - x_j)^T
// in node i's column block and the negation in node j's block. Its kernel is
// the space of infinitesimal motions of the framework; products are plain
// (unconjugated) also over the complex field.
Eigen::MatrixXcd build_rigidity_matrix(const Realization& realization,
                                       const EdgeIndexing& indexing);

// tau translations (one coordinate direction repeated at every node) plus
// tau(tau-1)/2 rotations (for each coordinate pair (p,q): per-node block with
// -x_i[q] in slot p and x_i[p] in slot q). Every rigidity matrix of the
// realization annihilates all of them.
std::vector<Eigen::VectorXcd> trivial_motion_basis(
    const Realization& realization);

struct RigidityCheckReport {
  int rigidity_rank = 0;             // rank of R(x)
  int coefficient_rank = 0;          // rank of A(v)^T
  std::optional<int> expected_rank;  // n tau - tau(tau+1)/2, only when n >= tau
  bool nullspace_match = false;
  double max_cross_residual = 0.0;   // scaled mutual-annihilation residual
  bool trivial_motions_annihilated = false;
};

// Certifies numerically that the transposed coefficient matrix and the
// rigidity matrix of the voltage-profile realization have equal rank and the
// same null space: each kernel basis is multiplied through the other matrix
// and the Frobenius-scaled residual must stay below `rank_tol_rel`.
RigidityCheckReport check_equivalence(const CoefficientMatrix& coefficient,
                                      const MeasurementSet& set,
                                      double rank_tol_rel = kDefaultRankTol);

}  // namespace gridid
