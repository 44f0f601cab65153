// End-to-end acceptance harness. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "excol/coloring.hpp"
#include "excol/graph.hpp"
#include "excol/instances.hpp"
#include "excol/planting.hpp"
#include "excol/recovery.hpp"
#include "excol/report.hpp"
#include "excol/rng.hpp"
#include "excol/spectral.hpp"

using namespace excol;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ModelMatrix balanced_model(int k) {
  ModelMatrix m;
  m.entries = Eigen::MatrixXd::Constant(k, k, 1.0 / (k - 1));
  m.entries.diagonal().setZero();
  return m;
}

ModelMatrix repeated_row_model() {
  ModelMatrix m;
  m.entries.resize(3, 3);
  m.entries << 0, 0.5, 0.5, 1, 0, 0, 1, 0, 0;
  return m;
}

// Erdos-Renyi draw with isolated vertices patched to keep degrees positive.
Graph random_er(int n, double p, std::uint64_t seed) {
  Rng rng(Rng::derive(seed, 0x6572ULL));
  std::vector<Edge> edges;
  std::vector<char> touched(n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) {
        edges.push_back({u, v, 1.0});
        touched[u] = touched[v] = 1;
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!touched[v]) {
      edges.push_back({std::min(v, (v + 1) % n), std::max(v, (v + 1) % n), 1.0});
      touched[v] = touched[(v + 1) % n] = 1;
    }
  }
  return Graph(n, edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) {
    edges.push_back({e.u + a.num_vertices(), e.v + a.num_vertices(), e.w});
  }
  return Graph(a.num_vertices() + b.num_vertices(), std::move(edges));
}

std::vector<Graph> build_corpus() {
  std::vector<Graph> corpus;
  for (std::uint64_t s = 0; s < 15; ++s) {
    corpus.push_back(random_regular(50, 6, s));
  }
  for (std::uint64_t s = 0; s < 15; ++s) {
    corpus.push_back(random_regular(200, 4 + 2 * (s % 3), 100 + s));
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    corpus.push_back(random_er(60, 0.15, s));
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    corpus.push_back(sbm_from_model(balanced_model(3), 90, 12, s).graph);
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    corpus.push_back(sbm_from_model(repeated_row_model(), 120, 15, s).graph);
  }
  for (std::uint64_t s = 0; s < 15; ++s) {
    corpus.push_back(biregular_random(60, 40, 6, s));
  }
  for (std::uint64_t s = 0; s < 15; ++s) {
    corpus.push_back(disjoint_union(random_regular(40, 4, 200 + s),
                                    random_regular(30, 6, 300 + s)));
  }
  return corpus;
}

bool independent_in(const Graph& g, const std::vector<int>& s) {
  const std::set<int> in(s.begin(), s.end());
  for (const Edge& e : g.edges()) {
    if (in.count(e.u) && in.count(e.v)) return false;
  }
  return true;
}

bool proper_by_edge_scan(const Graph& g, const Partition& p) {
  for (const Edge& e : g.edges()) {
    if (p.chi[e.u] == p.chi[e.v]) return false;
  }
  return true;
}

// ---- criteria ----------------------------------------------------------

bool criterion_rank_inequality(const std::vector<Graph>& corpus) {
  long violations = 0;
  for (const Graph& g : corpus) {
    const Eigen::MatrixXd atil = g.normalized_adjacency();
    const SpectralDecomposition spec = eig_sym(atil);
    for (double tau : {0.3, 0.5, 0.7, 0.9, 1.0}) {
      for (double sigma : {0.25, 0.5, 0.75}) {
        const RankReport r = verify_rank_inequality(atil, spec, tau, sigma);
        if (!r.preconditions_ok || !r.holds) ++violations;
      }
    }
  }
  return violations == 0;
}

bool criterion_witness(const std::vector<Graph>& corpus) {
  long checked = 0, failures = 0;
  for (const Graph& g : corpus) {
    const Eigen::MatrixXd atil = g.normalized_adjacency();
    const SpectralDecomposition spec = eig_sym(atil);
    for (double lam : {0.3, 0.5, 0.7, 0.9, 1.0}) {
      const int rank = threshold_rank(spec, lam, Side::Bottom);
      for (int t = 1; t <= std::min(rank, 10); ++t) {
        const WitnessReport w = witness_matrix(atil, spec, lam, t);
        ++checked;
        if (!w.conditions_hold) ++failures;
      }
    }
  }
  std::printf("      witness instances checked: %ld\n", checked);
  return checked > 0 && failures == 0;
}

bool criterion_rounding_oracle() {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_below(9));
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.uniform() < 0.35) edges.push_back({u, v, 1.0});
      }
    }
    const Graph g(n, edges);
    std::vector<int> s;
    for (int v = 0; v < n; ++v) {
      if (rng.uniform() < 0.75) s.push_back(v);
    }
    const std::vector<int> rounded = round_independent_set(g, s);
    if (!independent_in(g, rounded)) return false;
    // Exhaustive maximum independent subset of s.
    int opt = 0;
    const int m = static_cast<int>(s.size());
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<int> subset;
      for (int i = 0; i < m; ++i) {
        if (mask & (1 << i)) subset.push_back(s[i]);
      }
      if (static_cast<int>(subset.size()) > opt && independent_in(g, subset)) {
        opt = static_cast<int>(subset.size());
      }
    }
    if (static_cast<int>(rounded.size()) < opt - (m - opt)) return false;
  }
  return true;
}

bool criterion_variance_bound() {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SbmInstance inst =
        sbm_from_model(balanced_model(3), 300, 40, 1000 + seed);
    const std::vector<int> sizes = inst.partition.class_sizes();
    const double c =
        *std::min_element(sizes.begin(), sizes.end()) / 300.0;
    const double lambda2 =
        eig_sym(inst.graph.normalized_adjacency()).values[1];
    const ColoringQuality q = coloring_quality(inst.graph, inst.partition);
    const double bound =
        8.0 * (lambda2 / c + q.delta_vertex_cover / (lambda2 * c));
    if (q.per_pair_variance.maxCoeff() > bound) return false;
  }
  return true;
}

bool criterion_color3() {
  int good = 0;
  RecoveryParams params;
  params.lambda = 0.4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const SbmInstance inst =
        sbm_from_model(balanced_model(3), 600, 50, 2000 + seed);
    const ColoringResult r = color_3_expander(inst.graph, 0.1, params);
    const double elapsed = seconds_since(t0);
    if (r.covered_fraction >= 0.9 && elapsed < 300.0) ++good;
    std::printf("      seed %llu: covered %.3f (%.1fs)\n",
                static_cast<unsigned long long>(seed), r.covered_fraction,
                elapsed);
  }
  return good >= 8;
}

bool criterion_color_repeated_rows() {
  int good = 0;
  RecoveryParams params;
  params.lambda = 0.4;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SbmInstance inst =
        sbm_from_model(repeated_row_model(), 400, 40, 3000 + seed);
    const ColoringResult r = color_expander(inst.graph, 3, params);
    if (r.covered_fraction >= 0.4) ++good;
    std::printf("      seed %llu: covered %.3f (k'=%d)\n",
                static_cast<unsigned long long>(seed), r.covered_fraction,
                r.k_effective);
  }
  return good >= 8;
}

bool criterion_independent_set() {
  int good = 0;
  RecoveryParams params;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = planted_independent_set(225, 275, 44, 8, 4000 + seed);
    const std::vector<int> set = find_independent_set(g, 0.05, 0.6, 3, params);
    if (!independent_in(g, set)) return false;
    if (static_cast<int>(set.size()) >= 100) ++good;
    std::printf("      seed %llu: |I| = %zu\n",
                static_cast<unsigned long long>(seed), set.size());
  }
  return good >= 8;
}

bool criterion_full_recovery() {
  int good = 0;
  RecoveryParams params;
  params.lambda = 0.45;
  params.mode = RecoveryMode::Heuristic;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const Graph host = random_regular(1000, 60, 5000 + seed);
    const PlantedInstance inst = plant_k_coloring(host, 3, 6000 + seed);
    const RecoverFullResult r = recover_full(inst, params);
    const double elapsed = seconds_since(t0);
    const bool ok = r.partition.has_value() &&
                    proper_by_edge_scan(inst.graph, *r.partition) &&
                    elapsed < 600.0;
    if (ok) ++good;
    std::printf("      seed %llu: %s (%.1fs)\n",
                static_cast<unsigned long long>(seed),
                ok ? "proper 3-coloring" : "failed", elapsed);
  }
  return good >= 8;
}

bool criterion_planting_concentration() {
  const int n = 1000, k = 3;
  const double d = 50.0;
  const double lambda_prime = 0.3;
  double worst_variance_ratio = 0.0;
  Rng sets_rng(77);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph host = random_regular(n, static_cast<int>(d), 7000 + seed);
    const PlantedInstance inst = plant_k_coloring(host, k, 7100 + seed);

    // Class sizes n/k +- 5 sqrt(n log n).
    const double size_tol = 5.0 * std::sqrt(n * std::log(n));
    for (int sz : inst.planted.class_sizes()) {
      if (std::abs(sz - n / static_cast<double>(k)) > size_tol) return false;
    }

    // Model entries 1/(k-1) +- 10 sqrt(log n / n) under the host-degree
    // normalization k/((k-1)d).
    const Eigen::MatrixXd atil =
        (k / ((k - 1) * d)) * inst.graph.adjacency();
    const ModelMatrix m = model_matrix(atil, inst.planted);
    const double entry_tol = 10.0 * std::sqrt(std::log(n) / n);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (a == b) continue;
        if (std::abs(m.entries(a, b) - 1.0 / (k - 1)) > entry_tol) {
          return false;
        }
      }
    }

    // Per-pair variance decays like 1/sqrt(d); record the constant.
    const ColoringQuality q = coloring_quality(inst.graph, inst.planted);
    worst_variance_ratio = std::max(
        worst_variance_ratio, q.per_pair_variance.maxCoeff() * std::sqrt(d));
    if (q.per_pair_variance.maxCoeff() > 8.0 / std::sqrt(d)) return false;

    // Threshold ranks survive planting: with A/d normalization for both
    // graphs, rank below -(2 lambda') grows at most k-fold.
    const SpectralDecomposition spec_h = eig_sym(host.adjacency() / d);
    const SpectralDecomposition spec_g = eig_sym(inst.graph.adjacency() / d);
    const int t1 = threshold_rank(spec_h, lambda_prime, Side::Top);
    const int t2 = threshold_rank(spec_h, lambda_prime, Side::Bottom);
    const int rank_g =
        threshold_rank(spec_g, 2.0 * lambda_prime, Side::Bottom);
    if (rank_g > k * t1 + t2) return false;

    // Induced edge count and neighborhood growth of the host expander.
    const double c = eig_sym(host.normalized_adjacency()).values[1];
    const auto adj = host.adjacency_lists();
    for (int trial = 0; trial < 1000; ++trial) {
      const int size = 1 + static_cast<int>(sets_rng.uniform_below(n));
      std::vector<int> order(n);
      for (int v = 0; v < n; ++v) order[v] = v;
      sets_rng.shuffle(order);
      std::vector<char> in_s(n, 0);
      for (int i = 0; i < size; ++i) in_s[order[i]] = 1;
      long inside = 0;
      for (const Edge& e : host.edges()) {
        if (in_s[e.u] && in_s[e.v]) ++inside;
      }
      const double eml_bound =
          d * size / 2.0 * (static_cast<double>(size) / n + c);
      if (inside > eml_bound + 1e-9) return false;

      if (size <= n / 10) {
        std::vector<char> seen(n, 0);
        long boundary = 0;
        for (int i = 0; i < size; ++i) {
          for (int u : adj[order[i]]) {
            if (!in_s[u] && !seen[u]) {
              seen[u] = 1;
              ++boundary;
            }
          }
        }
        const double alpha = static_cast<double>(size) / n;
        const double growth =
            (1.0 / (c + std::sqrt(alpha)) - 1.0) * size;
        if (boundary < growth - 1e-9) return false;
      }
    }
  }
  std::printf("      variance * sqrt(d) max: %.3f\n", worst_variance_ratio);
  return true;
}

bool criterion_noiseless_clustering() {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform_below(3));
    const int n =
        2 * k + static_cast<int>(rng.uniform_below(51 - 2 * k));
    // Random partition with every class of size >= 2.
    std::vector<int> chi(n);
    for (int a = 0; a < k; ++a) chi[2 * a] = chi[2 * a + 1] = a;
    for (int x = 2 * k; x < n; ++x) {
      chi[x] = static_cast<int>(rng.uniform_below(k));
    }
    const Partition target(chi, k);
    const Eigen::MatrixXd z = target.partition_matrix();

    // k-1 noiseless inputs u = Zv / ||Zv|| with well-spread class values.
    std::vector<Eigen::VectorXd> hat_us;
    for (int j = 0; j < k - 1; ++j) {
      std::vector<int> values(k);
      for (int a = 0; a < k; ++a) values[a] = a;
      rng.shuffle(values);
      Eigen::VectorXd v(k);
      for (int a = 0; a < k; ++a) v[a] = values[a] - (k - 1) / 2.0;
      Eigen::VectorXd u = z * v;
      hat_us.push_back(u.normalized());
    }

    RecoveryParams params;
    params.min_class_fraction = 2.0 / n;
    params.seed = 500 + trial;
    const CandidateList list = spectral_cluster(hat_us, k, params);
    bool exact = false;
    for (const Partition& p : list.partitions) {
      if (permutation_match(target, p).agreement == 1.0) {
        exact = true;
        break;
      }
    }
    if (!exact) {
      std::printf("      trial %d (n=%d k=%d): no exact candidate\n", trial,
                  n, k);
      return false;
    }
  }
  return true;
}

bool criterion_analytic_identities() {
  Rng rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::Vector3d pi;
    do {
      for (int a = 0; a < 3; ++a) pi[a] = -std::log(1.0 - rng.uniform());
      pi /= pi.sum();
    } while (pi.maxCoeff() > 0.5 - 1e-6);
    const Eigen::VectorXd back = stationary_distribution(model_3_from_pi(pi));
    if ((back - pi).lpNorm<Eigen::Infinity>() > 1e-9) return false;
  }

  for (int trial = 0; trial < 1000; ++trial) {
    // Random-walk matrix of a weighted complete graph: reversible,
    // row-stochastic, zero diagonal.
    const int k = 2 + static_cast<int>(rng.uniform_below(4));
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(k, k);
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        w(a, b) = w(b, a) = 0.05 + rng.uniform();
      }
    }
    ModelMatrix m;
    m.entries = w.array().colwise() / w.rowwise().sum().array();
    const auto [grouping, alpha] = alpha_uncovered_bound(m, 1e-9);
    if (std::abs(1.0 - grouping.p.sum() - alpha) > 1e-9) return false;
  }
  return true;
}

struct Criterion {
  const char* name;
  bool (*run)();
};

}  // namespace

int main() {
  const auto corpus_t0 = std::chrono::steady_clock::now();
  const std::vector<Graph> corpus = build_corpus();
  std::printf("corpus: %zu graphs (%.1fs)\n\n", corpus.size(),
              seconds_since(corpus_t0));

  bool all_ok = true;
  int index = 0;
  const auto report = [&](const char* name, bool ok, double elapsed) {
    ++index;
    std::printf("[%2d] %-36s %s (%.1fs)\n", index, name,
                ok ? "PASS" : "FAIL", elapsed);
    all_ok = all_ok && ok;
  };
  const auto run = [&](const char* name, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      std::printf("      exception: %s\n", e.what());
    }
    report(name, ok, seconds_since(t0));
  };

  run("rank inequality corpus",
      [&corpus] { return criterion_rank_inequality(corpus); });
  run("witness construction",
      [&corpus] { return criterion_witness(corpus); });
  run("rounding vs brute-force oracle", criterion_rounding_oracle);
  run("variance bound on colored expanders", criterion_variance_bound);
  run("balanced 3-coloring recovery", criterion_color3);
  run("repeated-row model coloring", criterion_color_repeated_rows);
  run("planted independent set", criterion_independent_set);
  run("full planted recovery", criterion_full_recovery);
  run("planting concentration suite", criterion_planting_concentration);
  run("noiseless clustering oracle", criterion_noiseless_clustering);
  run("analytic identities", criterion_analytic_identities);

  std::printf("\n%s\n", all_ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all_ok ? 0 : 1;
}
