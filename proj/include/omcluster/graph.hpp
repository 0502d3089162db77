#pragma once

#include <Eigen/Dense>

#include <string>

namespace omc {

// Cluster graph: symmetric 0/1 adjacency with zero diagonal. Grid graphs
// remember their shape; rows == cols == 0 means "not a grid".
struct ClusterGraph {
  Eigen::MatrixXd adjacency;
  int rows = 0;
  int cols = 0;
  // True when the graph is a grid with at least one odd side, the family for
  // which the closed-form target parameterization is guaranteed to satisfy
  // the realizability constraints.
  bool odd_side_ok = false;

  int n_nodes() const { return static_cast<int>(adjacency.rows()); }
  int degree(int k) const;
  Eigen::VectorXi degrees() const;
  // One edge per line, "k k'" with k < k', node indices 0-based row-major.
  std::string edge_list() const;
};

// rows x cols grid with nearest-neighbor edges, nodes ordered row-major.
ClusterGraph grid_graph(int rows, int cols);

// Wrap a user-supplied adjacency matrix (validated; no realizability
// guarantee, the constraint checker is the arbiter downstream).
ClusterGraph graph_from_adjacency(const Eigen::MatrixXd& adjacency);

}  // namespace omc
