#include "excol/planting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "excol/rng.hpp"
#include "excol/spectral.hpp"

namespace excol {

std::vector<int> PartialColoring::free_set() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(colors.size()); ++v) {
    if (colors[v] == kFree) out.push_back(v);
  }
  return out;
}

bool PartialColoring::proper_on_colored(const Graph& g) const {
  for (const Edge& e : g.edges()) {
    if (colors[e.u] != kFree && colors[e.u] == colors[e.v]) return false;
  }
  return true;
}

PlantedInstance plant_k_coloring(const Graph& host, int k,
                                 std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("plant_k_coloring: k must be >= 2");
  const int n = host.num_vertices();
  Rng rng(Rng::derive(seed, 0x706c616e74ULL));
  std::vector<int> chi(n);
  for (int v = 0; v < n; ++v) chi[v] = static_cast<int>(rng.uniform_below(k));

  std::vector<Edge> kept;
  for (const Edge& e : host.edges()) {
    if (chi[e.u] != chi[e.v]) kept.push_back(e);
  }
  PlantedInstance inst;
  inst.host = host;
  inst.planted = Partition(std::move(chi), k);
  inst.graph = Graph(n, std::move(kept));
  inst.d = 2.0 * host.total_weight() / std::max(1, n);
  inst.seed = seed;
  return inst;
}

CandidateList recover_partial_list(const Graph& g, double d, int k,
                                   const RecoveryParams& params) {
  if (!(d > 0.0)) {
    throw std::invalid_argument("recover_partial_list: d must be > 0");
  }
  const double scale = static_cast<double>(k) / ((k - 1) * d);
  const Eigen::MatrixXd atil = scale * g.adjacency();
  return recover_partitions(atil, k, params);
}

namespace {

// Counts of colored neighbors per color, for one vertex.
std::vector<int> neighbor_color_counts(const std::vector<int>& adj,
                                       const std::vector<int>& colors,
                                       int k) {
  std::vector<int> counts(k, 0);
  for (int y : adj) {
    if (colors[y] != kFree) ++counts[colors[y]];
  }
  return counts;
}

}  // namespace

PartialColoring uncolor(const Graph& g, const Partition& chi_hat, double d,
                        int k) {
  if (chi_hat.n() != g.num_vertices()) {
    throw std::invalid_argument("uncolor: partition size mismatch");
  }
  const std::vector<std::vector<int>> adj = g.adjacency_lists();
  PartialColoring pc{chi_hat.chi, k};
  const double threshold = d / (6.0 * k);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < g.num_vertices(); ++x) {
      if (pc.colors[x] == kFree) continue;
      const std::vector<int> counts =
          neighbor_color_counts(adj[x], pc.colors, k);
      for (int c = 0; c < k; ++c) {
        if (c != pc.colors[x] && counts[c] < threshold) {
          pc.colors[x] = kFree;
          changed = true;
          break;
        }
      }
    }
  }

  // The fixpoint does not by itself repair an improper input; strip any
  // remaining monochromatic pair and rerun until clean.
  for (;;) {
    bool stripped = false;
    for (const Edge& e : g.edges()) {
      if (pc.colors[e.u] != kFree && pc.colors[e.u] == pc.colors[e.v]) {
        pc.colors[e.u] = kFree;
        pc.colors[e.v] = kFree;
        stripped = true;
      }
    }
    if (!stripped) break;
    changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < g.num_vertices(); ++x) {
        if (pc.colors[x] == kFree) continue;
        const std::vector<int> counts =
            neighbor_color_counts(adj[x], pc.colors, k);
        for (int c = 0; c < k; ++c) {
          if (c != pc.colors[x] && counts[c] < threshold) {
            pc.colors[x] = kFree;
            changed = true;
            break;
          }
        }
      }
    }
  }

  if (!pc.proper_on_colored(g)) {
    throw std::logic_error("uncolor: output not proper on colored vertices");
  }
  return pc;
}

PartialColoring safe_recolor(const Graph& g, PartialColoring pc, int k) {
  if (!pc.proper_on_colored(g)) {
    throw std::invalid_argument(
        "safe_recolor: input not proper on colored vertices");
  }
  const std::vector<std::vector<int>> adj = g.adjacency_lists();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < g.num_vertices(); ++x) {
      if (pc.colors[x] != kFree) continue;
      const std::vector<int> counts =
          neighbor_color_counts(adj[x], pc.colors, k);
      int missing = -1;
      int distinct = 0;
      for (int c = 0; c < k; ++c) {
        if (counts[c] > 0) {
          ++distinct;
        } else {
          missing = c;
        }
      }
      if (distinct == k - 1) {
        pc.colors[x] = missing;
        changed = true;
      }
    }
  }
  if (!pc.proper_on_colored(g)) {
    throw std::logic_error("safe_recolor: properness lost");
  }
  return pc;
}

FinishResult finish_by_components(const Graph& g, const PartialColoring& pc,
                                  int k, int size_limit) {
  if (!pc.proper_on_colored(g)) {
    throw std::invalid_argument(
        "finish_by_components: input not proper on colored vertices");
  }
  const int n = g.num_vertices();
  if (size_limit <= 0) {
    size_limit = static_cast<int>(
        std::ceil(std::log(static_cast<double>(std::max(2, n)))));
  }
  const std::vector<std::vector<int>> adj = g.adjacency_lists();

  std::vector<int> colors = pc.colors;
  std::vector<int> comp_of(n, -1);
  FinishResult result;

  for (int start = 0; start < n; ++start) {
    if (colors[start] != kFree || comp_of[start] >= 0) continue;
    // Free component of `start` in ascending vertex order.
    std::vector<int> comp{start};
    comp_of[start] = start;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (int y : adj[comp[head]]) {
        if (colors[y] == kFree && comp_of[y] < 0) {
          comp_of[y] = start;
          comp.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    if (static_cast<int>(comp.size()) > size_limit) {
      result.failure = "free component containing vertex " +
                       std::to_string(start) + " has size " +
                       std::to_string(comp.size()) + " > limit " +
                       std::to_string(size_limit);
      return result;
    }

    // Lexicographic depth-first search over the k^|comp| colorings.
    std::vector<int> pos_of(n, -1);
    for (std::size_t i = 0; i < comp.size(); ++i) pos_of[comp[i]] = i;
    std::vector<int> assign(comp.size(), 0);
    int depth = 0;
    while (depth >= 0 && depth < static_cast<int>(comp.size())) {
      if (assign[depth] >= k) {
        assign[depth] = 0;
        --depth;
        if (depth >= 0) ++assign[depth];
        continue;
      }
      const int x = comp[depth];
      bool ok = true;
      for (int y : adj[x]) {
        const int cy = pos_of[y] >= 0 && pos_of[y] < depth ? assign[pos_of[y]]
                       : colors[y];
        if (cy == assign[depth] && (pos_of[y] < 0 || pos_of[y] < depth)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        ++depth;
      } else {
        ++assign[depth];
      }
    }
    if (depth < 0) {
      result.failure = "free component containing vertex " +
                       std::to_string(start) + " admits no proper extension";
      return result;
    }
    for (std::size_t i = 0; i < comp.size(); ++i) colors[comp[i]] = assign[i];
  }

  Partition full(std::move(colors), k);
  for (const Edge& e : g.edges()) {
    if (full.chi[e.u] == full.chi[e.v]) {
      throw std::logic_error("finish_by_components: output not proper");
    }
  }
  result.partition = std::move(full);
  return result;
}

RecoverFullResult recover_full(const PlantedInstance& inst,
                               const RecoveryParams& params) {
  const int k = inst.planted.k;
  RecoverFullResult result;

  {
    const SpectralDecomposition host_spec =
        eig_sym(inst.host.normalized_adjacency());
    const double lambda2 = host_spec.values[1];
    if (lambda2 >= 1.0 / (16.0 * k * k)) {
      result.warning = "host lambda_2 = " + std::to_string(lambda2) +
                       " >= 1/(16k^2); recovery guarantee void";
    }
  }

  CandidateList list =
      recover_partial_list(inst.graph, inst.d, k, params);
  constexpr std::size_t kMaxAttempts = 50;
  for (std::size_t i = 0; i < list.partitions.size() && i < kMaxAttempts;
       ++i) {
    try {
      PartialColoring pc = uncolor(inst.graph, list.partitions[i], inst.d, k);
      pc = safe_recolor(inst.graph, std::move(pc), k);
      FinishResult fin = finish_by_components(inst.graph, pc, k);
      if (fin.partition) {
        result.partition = std::move(fin.partition);
        result.diagnostics.push_back("candidate " + std::to_string(i) +
                                     " (" + list.provenance[i] + "): success");
        return result;
      }
      result.diagnostics.push_back("candidate " + std::to_string(i) + ": " +
                                   fin.failure);
    } catch (const std::exception& e) {
      result.diagnostics.push_back("candidate " + std::to_string(i) + ": " +
                                   e.what());
    }
  }
  return result;
}

std::vector<int> statistically_bad(const PlantedInstance& inst) {
  const int k = inst.planted.k;
  const double threshold = inst.d / (2.0 * k);
  const std::vector<std::vector<int>> adj = inst.graph.adjacency_lists();
  std::vector<int> bad;
  for (int x = 0; x < inst.graph.num_vertices(); ++x) {
    const std::vector<int> counts =
        neighbor_color_counts(adj[x], inst.planted.chi, k);
    for (int c = 0; c < k; ++c) {
      if (c != inst.planted.chi[x] && counts[c] < threshold) {
        bad.push_back(x);
        break;
      }
    }
  }
  return bad;
}

}  // namespace excol
