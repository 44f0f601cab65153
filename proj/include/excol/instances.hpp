#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "excol/graph.hpp"

namespace excol {

/// SBM draw realizing a target model matrix.
struct SbmInstance {
  Graph graph;
  Partition partition;
  double model_distance = 0.0;  // max-norm gap to the target model
};

/// Block blow-up of a base graph matching a target model's group structure.
struct BlowupInstance {
  Graph graph;
  std::vector<int> r;             // even class multipliers
  std::vector<int> group_of;      // per vertex, row group index
  std::vector<int> base_vertex;   // per vertex, -1 for padding
  std::vector<int> base_copy;     // per vertex, -1 for padding
  double lambda2 = 0.0;           // measured on the normalized adjacency
};

// Simple d-regular graph by stub pairing with edge-swap repair.
Graph random_regular(int n, int d, std::uint64_t seed);

// Regenerates (derived sub-seeds) until lambda_2 of the normalized
// adjacency is at most lambda_max.
Graph random_regular_expander(int n, int d, std::uint64_t seed,
                              double lambda_max, int budget = 30);

// Class sizes round(pi * n) fixed up to sum n; each cross block is a
// random near-biregular bipartite graph with round(n_a * d * M_ab) edges.
SbmInstance sbm_from_model(const ModelMatrix& m, int n, double d,
                           std::uint64_t seed);

// Simple biregular bipartite graph, side sizes n1/n2, left degree d1.
// Regenerated until lambda_2 <= 2/sqrt(min(d1,d2)) + 0.1.
Graph biregular_random(int n1, int n2, int d1, std::uint64_t seed);

// Block construction over the repeated-row groups of m: copies of the base
// graph (or isolated padding) per group, near-biregular random blocks
// between groups. eps controls how closely the class sizes track pi.
BlowupInstance blowup_instance(const ModelMatrix& m, const Graph& base,
                               double eps, std::uint64_t seed);

// Disjoint union of (a) the base graph completed against a new vertex set
// S by complete-bipartite-minus-correction edges and (b) an |S|-regular
// random tripartite expander. The output is exactly |S|-regular; its third
// eigenvalue is small while the second stays near 1.
Graph lambda3_instance(const Graph& base, std::uint64_t seed,
                       double eps = 0.02);

// |S|-regular instance hiding an independent set of the first n_i vertices:
// (n_i, n_c, d_cross)-biregular cross edges plus a d_inner-regular graph on
// the last n_c vertices. Requires n_i*d_cross/n_c + d_inner == d_cross.
Graph planted_independent_set(int n_i, int n_c, int d_cross, int d_inner,
                              std::uint64_t seed);

}  // namespace excol
