#include "omcluster/graph.hpp"

#include <cmath>
#include <string>

#include "omcluster/errors.hpp"

namespace omc {

int ClusterGraph::degree(int k) const {
  return static_cast<int>(std::lround(adjacency.row(k).sum()));
}

Eigen::VectorXi ClusterGraph::degrees() const {
  const int n = n_nodes();
  Eigen::VectorXi deg(n);
  for (int k = 0; k < n; ++k) deg(k) = degree(k);
  return deg;
}

std::string ClusterGraph::edge_list() const {
  std::string out;
  const int n = n_nodes();
  for (int k = 0; k < n; ++k)
    for (int kp = k + 1; kp < n; ++kp)
      if (adjacency(k, kp) != 0.0)
        out += std::to_string(k) + " " + std::to_string(kp) + "\n";
  return out;
}

ClusterGraph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw config_error("grid_graph: rows and cols must be >= 1");
  const int n = rows * cols;
  ClusterGraph g;
  g.adjacency = Eigen::MatrixXd::Zero(n, n);
  g.rows = rows;
  g.cols = cols;
  g.odd_side_ok = (rows % 2 == 1) || (cols % 2 == 1);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int k = r * cols + c;
      if (c + 1 < cols) {
        g.adjacency(k, k + 1) = 1.0;
        g.adjacency(k + 1, k) = 1.0;
      }
      if (r + 1 < rows) {
        g.adjacency(k, k + cols) = 1.0;
        g.adjacency(k + cols, k) = 1.0;
      }
    }
  return g;
}

ClusterGraph graph_from_adjacency(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() != adjacency.cols())
    throw config_error("graph: adjacency must be square");
  const int n = static_cast<int>(adjacency.rows());
  if (n < 1) throw config_error("graph: adjacency must be non-empty");
  for (int i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0)
      throw config_error("graph: adjacency diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (adjacency(i, j) != 0.0 && adjacency(i, j) != 1.0)
        throw config_error("graph: adjacency entries must be 0 or 1");
      if (adjacency(i, j) != adjacency(j, i))
        throw config_error("graph: adjacency must be symmetric");
    }
  }
  ClusterGraph g;
  g.adjacency = adjacency;
  return g;
}

}  // namespace omc
