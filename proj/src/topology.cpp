#include "gridid/topology.hpp"

namespace gridid {

EdgeIndexing::EdgeIndexing(NodeCount n) : n_(n.value()) {
  edges_.reserve(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
  for (int i = 1; i < n_; ++i) {
    for (int j = i + 1; j <= n_; ++j) {
      edges_.push_back(Edge{i, j});
    }
  }
}

const Edge& EdgeIndexing::edge_at(int position) const {
  if (position < 0 || position >= edge_count()) {
    throw DomainError("edge position " + std::to_string(position) +
                      " out of range [0, " + std::to_string(edge_count()) +
                      ")");
  }
  return edges_[static_cast<std::size_t>(position)];
}

int EdgeIndexing::position_of(int i, int j) const {
  if (i < 1 || j <= i || j > n_) {
    throw DomainError("invalid edge (" + std::to_string(i) + ", " +
                      std::to_string(j) + ") for n = " + std::to_string(n_));
  }
  // Edges with smaller endpoint t < i occupy the first sum_{t<i} (n - t)
  // positions.
  const int offset = (i - 1) * n_ - i * (i - 1) / 2;
  return offset + (j - i - 1);
}

Eigen::MatrixXd build_incidence_matrix(const EdgeIndexing& indexing) {
  const int n = indexing.node_count();
  const int e = indexing.edge_count();
  Eigen::MatrixXd incidence = Eigen::MatrixXd::Zero(n, e);
  for (int l = 0; l < e; ++l) {
    const Edge& edge = indexing.edge_at(l);
    incidence(edge.i - 1, l) = 1.0;
    incidence(edge.j - 1, l) = -1.0;
  }
  return incidence;
}

}  // namespace gridid
