#pragma once

#include <string>
#include <utility>
#include <vector>

#include "excol/coloring.hpp"
#include "excol/graph.hpp"
#include "excol/planting.hpp"
#include "excol/recovery.hpp"
#include "excol/spectral.hpp"

namespace excol {

struct MatchResult {
  std::vector<int> permutation;  // relabeling applied to the candidate
  double agreement = 0.0;        // fraction of vertices matching
};

// Best agreement over color relabelings of the candidate; exhaustive for
// k <= 8, greedy overlap matching beyond. Uncovered candidate vertices
// (color kFree) always count as mismatches.
MatchResult permutation_match(const Partition& reference,
                              const Partition& candidate);
MatchResult permutation_match(const Partition& reference,
                              const ColoringResult& candidate);

// ---- JSON serialization (floating point kept round-trip exact) ---------

std::string to_json(const Graph& g);
std::string to_json(const Partition& p);
std::string to_json(const ModelMatrix& m);
std::string to_json(const RankReport& r);
std::string to_json(const WitnessReport& r);
std::string to_json(const ColoringResult& r);
std::string to_json(const CandidateList& list, const Partition* reference);
std::string to_json(const RecoverFullResult& r);

}  // namespace excol
