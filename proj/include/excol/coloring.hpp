#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "excol/graph.hpp"
#include "excol/recovery.hpp"

namespace excol {

/// Output of the coloring pipelines: disjoint independent sets and the
/// fraction of vertices they cover.
struct ColoringResult {
  std::vector<std::vector<int>> independent_sets;
  double covered_fraction = 0.0;
  int k_effective = 0;
  std::string provenance;
};

/// Rows of a model matrix grouped by near-equality, with the per-group
/// heaviest class and the uncoverable-mass values p_i.
struct RowGrouping {
  std::vector<std::vector<int>> groups;
  std::vector<int> representatives;  // argmax-pi member per group
  Eigen::VectorXd p;                 // length = number of groups
};

// Unique stationary distribution of a row-stochastic zero-diagonal M with
// connected nonzero pattern, via ratio chaining over a spanning tree.
Eigen::VectorXd stationary_distribution(const ModelMatrix& m);

// The unique reversible row-stochastic zero-diagonal 3x3 model with the
// given stationary distribution: M_ab = (2 pi_a + 2 pi_b - 1) / (2 pi_a).
ModelMatrix model_3_from_pi(const Eigen::VectorXd& pi);

// Groups near-identical rows and computes alpha, the mass no k-coloring
// derived from M can cover. The identity 1 - sum(p) = alpha is asserted.
std::pair<RowGrouping, double> alpha_uncovered_bound(const ModelMatrix& m,
                                                     double row_tol = 0.1);

// S minus a maximal-matching vertex cover of the edges inside S. The
// result is independent and loses at most |S \ I| vertices relative to any
// independent I contained in S.
std::vector<int> round_independent_set(const Graph& g,
                                       const std::vector<int>& s);

// Rounds every class of a partition into an independent set.
ColoringResult round_coloring(const Graph& g, const Partition& p);

// Full coloring pipeline: spectral partition recovery for k' = k down to 2,
// rounding every candidate, keeping the best covered_fraction.
ColoringResult color_expander(const Graph& g, int k,
                              const RecoveryParams& params);

// 3-coloring pipeline for regular graphs; gamma is the caller's bound on
// how far the largest class is below n/2.
ColoringResult color_3_expander(const Graph& g, double gamma,
                                const RecoveryParams& params);

// Nets the bottom eigenspace of the normalized adjacency, rounds each
// sign-cut candidate, returns the largest independent set found.
std::vector<int> find_independent_set(const Graph& g, double gamma,
                                      double lam, int rank_cap,
                                      const RecoveryParams& params);

}  // namespace excol
