#include "excol/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

#include "excol/spectral.hpp"

namespace excol {

Eigen::VectorXd stationary_distribution(const ModelMatrix& m) {
  const int k = m.k();
  if (k < 1) throw std::invalid_argument("stationary_distribution: empty model");
  if (!m.is_row_stochastic()) {
    throw std::invalid_argument("stationary_distribution: rows must sum to 1");
  }
  if (!m.is_zero_diagonal()) {
    throw std::invalid_argument("stationary_distribution: diagonal must be 0");
  }
  // pi_b = pi_a * M_ab / M_ba along a BFS tree of the nonzero pattern.
  Eigen::VectorXd pi = Eigen::VectorXd::Zero(k);
  pi[0] = 1.0;
  std::vector<bool> seen(k, false);
  seen[0] = true;
  std::queue<int> queue;
  queue.push(0);
  int reached = 1;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop();
    for (int b = 0; b < k; ++b) {
      if (seen[b]) continue;
      const bool ab = m.entries(a, b) > 0.0;
      const bool ba = m.entries(b, a) > 0.0;
      if (ab != ba) {
        throw std::runtime_error(
            "stationary_distribution: asymmetric zero pattern between classes " +
            std::to_string(a) + " and " + std::to_string(b));
      }
      if (!ab) continue;
      pi[b] = pi[a] * m.entries(a, b) / m.entries(b, a);
      seen[b] = true;
      ++reached;
      queue.push(b);
    }
  }
  if (reached < k) {
    throw std::runtime_error(
        "stationary_distribution: nonzero pattern is disconnected, the "
        "stationary distribution is not unique");
  }
  return pi / pi.sum();
}

ModelMatrix model_3_from_pi(const Eigen::VectorXd& pi) {
  if (pi.size() != 3) {
    throw std::invalid_argument("model_3_from_pi: pi must have length 3");
  }
  if (pi.minCoeff() <= 0.0 || std::abs(pi.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "model_3_from_pi: pi must be positive and sum to 1");
  }
  ModelMatrix m;
  m.entries = Eigen::MatrixXd::Zero(3, 3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const double entry = (2.0 * pi[a] + 2.0 * pi[b] - 1.0) / (2.0 * pi[a]);
      if (entry < 0.0) {
        throw std::runtime_error(
            "model_3_from_pi: pi[" + std::to_string(a) + "] + pi[" +
            std::to_string(b) + "] < 1/2 forces a negative entry");
      }
      m.entries(a, b) = entry;
    }
  }
  m.stationary = pi;
  return m;
}

std::pair<RowGrouping, double> alpha_uncovered_bound(const ModelMatrix& m,
                                                     double row_tol) {
  const int k = m.k();
  const Eigen::VectorXd pi = stationary_distribution(m);

  RowGrouping grouping;
  std::vector<int> group_of(k, -1);
  for (int a = 0; a < k; ++a) {
    for (std::size_t i = 0; i < grouping.groups.size(); ++i) {
      const int rep = grouping.groups[i].front();
      if ((m.entries.row(a) - m.entries.row(rep)).lpNorm<Eigen::Infinity>() <=
          row_tol) {
        grouping.groups[i].push_back(a);
        group_of[a] = static_cast<int>(i);
        break;
      }
    }
    if (group_of[a] < 0) {
      group_of[a] = static_cast<int>(grouping.groups.size());
      grouping.groups.push_back({a});
    }
  }

  const int kp = static_cast<int>(grouping.groups.size());
  grouping.p = Eigen::VectorXd::Zero(kp);
  double alpha = 0.0;
  for (int i = 0; i < kp; ++i) {
    int star = grouping.groups[i].front();
    double total = 0.0;
    for (int a : grouping.groups[i]) {
      total += pi[a];
      if (pi[a] > pi[star]) star = a;
    }
    grouping.representatives.push_back(star);
    grouping.p[i] = std::max(0.0, 2.0 * pi[star] - total);
    for (int a : grouping.groups[i]) {
      alpha += std::min(pi[a], total - pi[a]);
    }
  }
  if (std::abs(1.0 - grouping.p.sum() - alpha) > 1e-9) {
    throw std::logic_error("alpha_uncovered_bound: identity 1 - sum(p) = "
                           "alpha violated");
  }
  return {std::move(grouping), alpha};
}

std::vector<int> round_independent_set(const Graph& g,
                                       const std::vector<int>& s) {
  std::vector<bool> in_s(g.num_vertices(), false);
  for (int v : s) in_s[v] = true;
  std::vector<Edge> internal;
  for (const Edge& e : g.edges()) {
    if (in_s[e.u] && in_s[e.v]) internal.push_back(e);
  }
  for (int v : maximal_matching_cover(internal)) in_s[v] = false;
  std::vector<int> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (in_s[v]) out.push_back(v);
  }
  return out;
}

ColoringResult round_coloring(const Graph& g, const Partition& p) {
  ColoringResult result;
  int covered = 0;
  for (const std::vector<int>& cls : p.classes()) {
    std::vector<int> rounded = round_independent_set(g, cls);
    covered += static_cast<int>(rounded.size());
    result.independent_sets.push_back(std::move(rounded));
  }
  result.covered_fraction =
      static_cast<double>(covered) / std::max(1, g.num_vertices());
  result.k_effective = p.k;
  return result;
}

namespace {

// Heavy instances fall back to the k-means path; the grid path is reserved
// for small graphs where it is affordable.
RecoveryParams scale_guard(const Graph& g, RecoveryParams params) {
  if (g.num_vertices() >= 300) params.mode = RecoveryMode::Heuristic;
  return params;
}

void consider(const Graph& g, const Partition& candidate,
              const std::string& tag, ColoringResult& best) {
  ColoringResult rounded = round_coloring(g, candidate);
  rounded.provenance = tag;
  const bool better =
      rounded.covered_fraction > best.covered_fraction + 1e-12 ||
      (rounded.covered_fraction > best.covered_fraction - 1e-12 &&
       rounded.k_effective < best.k_effective);
  if (best.independent_sets.empty() || better) best = std::move(rounded);
}

}  // namespace

ColoringResult color_expander(const Graph& g, int k,
                              const RecoveryParams& params_in) {
  if (k < 2) throw std::invalid_argument("color_expander: k must be >= 2");
  if (g.degrees().minCoeff() <= 0.0) {
    throw std::invalid_argument("color_expander: isolated vertex");
  }
  const RecoveryParams params = scale_guard(g, params_in);
  const Eigen::MatrixXd atil = g.normalized_adjacency();

  ColoringResult best;
  // The number of recoverable classes is unknown; sweep k' downward and
  // keep whichever rounded candidate covers the most.
  for (int kp = k; kp >= 2; --kp) {
    CandidateList list;
    try {
      list = recover_partitions(atil, kp, params);
    } catch (const std::exception&) {
      continue;
    }
    for (std::size_t i = 0; i < list.partitions.size(); ++i) {
      consider(g, list.partitions[i],
               "k'=" + std::to_string(kp) + " " + list.provenance[i], best);
    }
  }
  if (best.independent_sets.empty()) {
    // Best effort: one sign cut of the bottom eigenvector.
    std::vector<int> all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
    best.independent_sets.push_back(round_independent_set(g, all));
    best.covered_fraction =
        static_cast<double>(best.independent_sets[0].size()) /
        g.num_vertices();
    best.k_effective = 1;
    best.provenance = "fallback: no recovered candidate";
  }
  return best;
}

ColoringResult color_3_expander(const Graph& g, double gamma,
                                const RecoveryParams& params_in) {
  if (!g.is_regular()) {
    throw std::invalid_argument("color_3_expander: graph must be regular");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("color_3_expander: gamma must be > 0");
  }
  return color_expander(g, 3, params_in);
}

std::vector<int> find_independent_set(const Graph& g, double gamma,
                                      double lam, int rank_cap,
                                      const RecoveryParams& params) {
  if (!g.is_regular()) {
    throw std::invalid_argument("find_independent_set: graph must be regular");
  }
  if (!(gamma > 0.0 && gamma < 0.25)) {
    throw std::invalid_argument(
        "find_independent_set: gamma must be in (0, 1/4)");
  }
  if (!(lam > 0.0 && lam < 1.0)) {
    throw std::invalid_argument("find_independent_set: lam must be in (0, 1)");
  }
  const int n = g.num_vertices();
  const SpectralDecomposition spec = eig_sym(g.normalized_adjacency());
  const int bottom = threshold_rank(spec, lam, Side::Bottom);
  if (bottom > rank_cap) {
    throw std::runtime_error("find_independent_set: bottom threshold rank " +
                             std::to_string(bottom) + " exceeds cap " +
                             std::to_string(rank_cap));
  }

  // Basis of the bottom eigenspace; if no eigenvalue clears -lam, fall back
  // to the single bottom-most eigenvector.
  const int dim = std::max(bottom, 1);
  Eigen::MatrixXd q(n, dim);
  for (int j = 0; j < dim; ++j) q.col(j) = spec.vectors.col(spec.n() - 1 - j);

  double res = std::min(1.0, std::sqrt(gamma / (1.0 - lam)));
  std::vector<Eigen::VectorXd> net;
  for (;;) {
    try {
      net = epsilon_net(dim, res, params.seed, params.max_candidates);
      break;
    } catch (const std::runtime_error&) {
      res = std::min(1.0, res * 2.0);
      if (res >= 1.0) {
        net = epsilon_net(dim, 1.0, params.seed, params.max_candidates);
        break;
      }
    }
  }

  std::vector<int> best;
  for (const Eigen::VectorXd& y : net) {
    const Eigen::VectorXd u = q * y;
    std::vector<int> s;
    for (int x = 0; x < n; ++x) {
      if (u[x] >= 0.0) s.push_back(x);
    }
    std::vector<int> rounded = round_independent_set(g, s);
    if (rounded.size() > best.size()) best = std::move(rounded);
  }
  return best;
}

}  // namespace excol
