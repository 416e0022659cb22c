#pragma once

#include <vector>

#include <Eigen/Core>

#include "gridid/errors.hpp"

namespace gridid {

// Number of non-ground nodes. Node indices are 1..n throughout; the ground
// node is implicit and never stored.
class NodeCount {
 public:
  explicit NodeCount(int n) : n_(n) {
    if (n < 2) {
      throw InvalidNodeCount("node count must be at least 2, got " +
                             std::to_string(n));
    }
  }
  int value() const { return n_; }

 private:
  int n_;
};

// Undirected candidate edge, 1 <= i < j <= n.
struct Edge {
  int i = 0;
  int j = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Canonical ordering of the e = n(n-1)/2 candidate edges of the complete
// graph: (1,2),(1,3),...,(1,n),(2,3),(2,4),...,(n-1,n). Every edge-indexed
// vector and matrix column in the toolkit follows this order.
class EdgeIndexing {
 public:
  explicit EdgeIndexing(NodeCount n);
  explicit EdgeIndexing(int n) : EdgeIndexing(NodeCount(n)) {}

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  // 0-based position lookup; edge_at(position_of(i, j)) == {i, j}.
  const Edge& edge_at(int position) const;
  int position_of(int i, int j) const;

 private:
  int n_;
  std::vector<Edge> edges_;
};

// Signed node-by-edge incidence matrix, n x e. Each column has +1 at the
// smaller endpoint (the edge leaves it) and -1 at the larger (the edge
// enters it); columns follow the EdgeIndexing order.
Eigen::MatrixXd build_incidence_matrix(const EdgeIndexing& indexing);

}  // namespace gridid
