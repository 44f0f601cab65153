#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "excol/graph.hpp"
#include "excol/recovery.hpp"

namespace excol {

inline constexpr int kFree = -1;

/// Proper coloring of a subset of vertices; uncolored vertices hold kFree.
struct PartialColoring {
  std::vector<int> colors;
  int k = 0;

  std::vector<int> free_set() const;
  // No edge joins two vertices of the same non-free color.
  bool proper_on_colored(const Graph& g) const;
};

struct PlantedInstance {
  Graph host;
  Partition planted;
  Graph graph;  // host minus monochromatic edges
  double d = 0.0;  // host degree; normalization always uses the host degree
  std::uint64_t seed = 0;
};

struct FinishResult {
  std::optional<Partition> partition;
  std::string failure;  // first oversized or unextendable component
};

struct RecoverFullResult {
  std::optional<Partition> partition;
  std::vector<std::string> diagnostics;
  std::string warning;
};

// chi(x) ~ Unif([k]) i.i.d.; monochromatic host edges are removed.
PlantedInstance plant_k_coloring(const Graph& host, int k, std::uint64_t seed);

// Partition recovery on A~ = k/((k-1)d) * A, d being the host degree.
CandidateList recover_partial_list(const Graph& g, double d, int k,
                                   const RecoveryParams& params);

// Fixpoint: uncolor any vertex with fewer than d/(6k) colored neighbors in
// some other color class. Vertices are scanned in ascending id order each
// pass. Exits with a coloring proper on the colored vertices.
PartialColoring uncolor(const Graph& g, const Partition& chi_hat, double d,
                        int k);

// Fixpoint: a free vertex whose colored neighbors use exactly k-1 distinct
// colors receives the missing one.
PartialColoring safe_recolor(const Graph& g, PartialColoring pc, int k);

// Brute-forces each free component of size <= size_limit in lexicographic
// color order; size_limit <= 0 means ceil(ln n).
FinishResult finish_by_components(const Graph& g, const PartialColoring& pc,
                                  int k, int size_limit = 0);

// recover_partial_list, then uncolor / safe_recolor / finish_by_components
// per candidate; returns the first full proper coloring.
RecoverFullResult recover_full(const PlantedInstance& inst,
                               const RecoveryParams& params);

// Vertices with fewer than d/(2k) neighbors planted in some other color.
std::vector<int> statistically_bad(const PlantedInstance& inst);

}  // namespace excol
