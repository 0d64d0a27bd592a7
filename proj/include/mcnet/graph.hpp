#pragma once

#include "mcnet/common.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mcnet {

struct Edge {
  Index u = 0;
  Index v = 0;
  double weight = 1.0;
};

// Finite undirected loop-free network stored as a dense symmetric weight
// matrix with zero diagonal. Immutable after construction.
class WeightedGraph {
 public:
  // Validates symmetry, zero diagonal and nonnegativity.
  explicit WeightedGraph(Matrix weights);

  static WeightedGraph from_edges(Index n, const std::vector<Edge>& edges);
  static WeightedGraph empty(Index n);

  Index size() const { return weights_.rows(); }
  const Matrix& weights() const { return weights_; }
  double weight(Index i, Index j) const { return weights_(i, j); }
  const Vector& degrees() const { return degrees_; }
  double degree(Index i) const { return degrees_(i); }

  // Unordered edges (i < j) with positive weight, in row-major order.
  std::vector<Edge> edges() const;

  bool is_regular(double tol = 1e-12) const;

 private:
  Matrix weights_;
  Vector degrees_;
};

struct LaplacianView {
  Vector degrees;
  Matrix laplacian;  // D - W

  Index size() const { return degrees.size(); }
};

LaplacianView laplacian(const WeightedGraph& g);

// Lx. Throws DomainError on length mismatch.
Vector apply_laplacian(const LaplacianView& lv, const Vector& x);

// <Lx, x>, which equals the sum over unordered edges of w_ij (x_i - x_j)^2.
double quadratic_form(const LaplacianView& lv, const Vector& x);

// True iff every node is reachable from node 0 through positive-weight edges.
bool is_connected(const WeightedGraph& g);

// Ascending eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
Vector symmetric_eigenvalues(const Matrix& a, double tol = 1e-14,
                             int max_sweeps = 100);

// Smallest nonzero Laplacian eigenvalue (spectral gap). Throws DomainError
// for disconnected graphs.
double lambda_1(const WeightedGraph& g);

// Edge-list text: first non-comment line is N, then "u v w" per line.
// '#' starts a comment line. Throws ParseError naming the line.
WeightedGraph parse_graph(std::string_view text,
                          const std::string& source = "<string>");
WeightedGraph load_graph(std::istream& in,
                         const std::string& source = "<stream>");
WeightedGraph load_graph_file(const std::string& path);

std::string format_graph(const WeightedGraph& g);

// Circulant d-regular graph on n nodes with unit weights. Odd d requires
// even n.
WeightedGraph circulant_regular(Index n, Index d);
WeightedGraph complete_graph(Index n);
WeightedGraph cycle_graph(Index n);
WeightedGraph path_graph(Index n);
WeightedGraph star_graph(Index n);

}  // namespace mcnet
