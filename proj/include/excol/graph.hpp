#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace excol {

struct Edge {
  int u = 0;
  int v = 0;       // u < v always
  double w = 1.0;  // strictly positive
};

/// Undirected weighted graph stored as an edge list. Dense matrices are
/// materialized on demand; the design envelope is n up to a few thousand
/// (full eigendecompositions dominate the cost anyway).
class Graph {
 public:
  Graph() = default;
  // Validates and canonicalizes: merges parallel edges by summing weights,
  // rejects self-loops and non-positive weights.
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Eigen::VectorXd& degrees() const { return degree_; }
  double total_weight() const { return total_weight_; }

  // max degree / min degree <= 1 + 1e-9
  bool is_regular() const { return is_regular_; }

  bool has_edge(int u, int v) const;

  Eigen::MatrixXd adjacency() const;
  // D^{-1/2} A D^{-1/2}. Throws if some vertex has degree 0.
  Eigen::MatrixXd normalized_adjacency() const;

  std::vector<std::vector<int>> adjacency_lists() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  Eigen::VectorXd degree_;
  double total_weight_ = 0.0;
  bool is_regular_ = false;
};

/// A color assignment chi: [n] -> [k], colors 0-based.
struct Partition {
  std::vector<int> chi;
  int k = 0;

  Partition() = default;
  Partition(std::vector<int> chi_in, int k_in);

  int n() const { return static_cast<int>(chi.size()); }
  std::vector<int> class_sizes() const;
  std::vector<std::vector<int>> classes() const;
  // n x k one-hot partition matrix Z.
  Eigen::MatrixXd partition_matrix() const;
};

/// k x k matrix of cross-class transition mass. When flagged stochastic its
/// rows sum to 1 within 1e-9; a coloring model additionally has zero
/// diagonal. `stationary`, when set, certifies reversibility.
struct ModelMatrix {
  Eigen::MatrixXd entries;
  std::optional<Eigen::VectorXd> stationary;

  int k() const { return static_cast<int>(entries.rows()); }
  bool is_row_stochastic(double tol = 1e-9) const;
  bool is_zero_diagonal(double tol = 1e-9) const;
  bool is_reversible(const Eigen::VectorXd& pi, double tol = 1e-9) const;
};

struct ColoringQuality {
  // |C|/n with C a maximal-matching vertex cover of monochromatic edges.
  double delta_vertex_cover = 0.0;
  // Same cover, measured by degree weight: sum of deg(C) / sum of all deg.
  double delta_vertex_cover_volume = 0.0;
  // max-norm distance to a target model, if one was supplied.
  std::optional<double> model_distance;
  // per_pair_variance(a,b) = Var_{x in class a} of D_x^b under A~.
  Eigen::MatrixXd per_pair_variance;
};

// ---- file formats ------------------------------------------------------
// Edge list: one edge per line, "u v" or "u v w", 0-indexed, '#' comments
// and blank lines ignored. Partition: one "vertex color" pair per line.

Graph load_graph(const std::string& path);
Graph parse_edge_list(const std::string& text);
std::string format_edge_list(const Graph& g);
void save_graph(const Graph& g, const std::string& path);

Partition load_partition(const std::string& path, int n);
Partition parse_partition(const std::string& text, int n);
std::string format_partition(const Partition& p);
void save_partition(const Partition& p, const std::string& path);

// ---- operations --------------------------------------------------------

// M(A~, chi) = B^{-1} Z^T A~ Z; every class must be nonempty.
ModelMatrix model_matrix(const Eigen::MatrixXd& normalized_adj,
                         const Partition& p);

// Greedy maximal matching over the given edges; returns both endpoints of
// every matched edge (a 2-approximate vertex cover).
std::vector<int> maximal_matching_cover(const std::vector<Edge>& edges);

ColoringQuality coloring_quality(
    const Graph& g, const Partition& p,
    const std::optional<ModelMatrix>& target = std::nullopt);

// Fraction of vertices left uncovered by disjoint independent sets. Throws
// if the sets overlap or some set is not independent (witness edge named).
double check_k_delta_coloring(const Graph& g,
                              const std::vector<std::vector<int>>& sets);

}  // namespace excol
