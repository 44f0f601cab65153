#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "excol/graph.hpp"
#include "excol/spectral.hpp"

namespace excol {

enum class RecoveryMode { Exhaustive, Heuristic };

/// Knobs of the recovery pipeline. Defaults target desk-scale instances.
struct RecoveryParams {
  double lambda = 0.3;            // eigenvalue magnitude threshold
  double eta = 0.1;               // eigenvalue margin
  double net_resolution = 0.3;    // epsilon-net granularity
  int rank_cap = 8;               // max enumerated subspace dimension
  double separation_alpha = 0.5;  // row-separation lower bound
  double min_class_fraction = 0.1;
  double norm_bound = 1.0;        // zeta
  int max_candidates = 20000;     // hard cap on list sizes
  std::uint64_t seed = 0;
  RecoveryMode mode = RecoveryMode::Exhaustive;

  void validate(int k) const;
};

struct CandidateList {
  std::vector<Eigen::VectorXd> vectors;
  std::vector<Partition> partitions;
  std::vector<std::string> provenance;  // aligned with partitions
};

// Random delta-net of the unit ball in R^dim: O(m log m) random unit
// vectors with m = (4/resolution)^dim, plus the 2*dim signed basis
// vectors. Throws when the projected size exceeds max_candidates.
std::vector<Eigen::VectorXd> epsilon_net(int dim, double resolution,
                                         std::uint64_t seed,
                                         int max_candidates);

// Orthonormal basis of the span of eigenvectors with |eigenvalue| >=
// params.lambda. Throws if the dimension exceeds params.rank_cap.
Eigen::MatrixXd extreme_eigenspace(const SpectralDecomposition& spec,
                                   const RecoveryParams& params);

// Epsilon-net of the unit ball of the extreme eigenspace, lifted to R^n.
std::vector<Eigen::VectorXd> eigenspace_candidates(
    const Eigen::MatrixXd& normalized_adj, const RecoveryParams& params);

// Clusters vertices from candidate near-eigenvectors. Enumerates grids of
// class centers (exhaustive mode, coarsened to respect max_candidates) and
// always adds k-means-seeded center guesses; each guess assigns every
// vertex to the center minimizing the squared coordinate distance.
CandidateList spectral_cluster(const std::vector<Eigen::VectorXd>& hat_us,
                               int k, const RecoveryParams& params);

// Full pipeline: extreme-eigenspace enumeration composed with clustering
// over subsets of at most k candidate vectors.
CandidateList recover_partitions(const Eigen::MatrixXd& normalized_adj,
                                 int k, const RecoveryParams& params);

// Minimum pairwise Euclidean distance between rows of M.
double row_separation(const ModelMatrix& m);

}  // namespace excol
