#include "excol/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "excol/coloring.hpp"
#include "excol/rng.hpp"
#include "excol/spectral.hpp"

namespace excol {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey key(int u, int v) { return u < v ? EdgeKey{u, v} : EdgeKey{v, u}; }

// Pairs stubs into simple edges. Self-loops and duplicate pairs are
// repaired by swapping one endpoint with a uniformly random other pair,
// accepting a swap only when it introduces no new conflict.
std::vector<Edge> pair_stubs(std::vector<int> left, std::vector<int> right,
                             Rng& rng) {
  const bool bipartite = !right.empty();
  if (bipartite && left.size() != right.size()) {
    throw std::logic_error("pair_stubs: stub count mismatch");
  }
  if (!bipartite && left.size() % 2 != 0) {
    throw std::logic_error("pair_stubs: odd stub count");
  }

  rng.shuffle(left);
  rng.shuffle(right);
  std::vector<EdgeKey> pairs;  // bipartite: first is always the left stub
  if (bipartite) {
    for (std::size_t i = 0; i < left.size(); ++i) {
      pairs.push_back({left[i], right[i]});
    }
  } else {
    for (std::size_t i = 0; i + 1 < left.size(); i += 2) {
      pairs.push_back({left[i], left[i + 1]});
    }
  }

  std::map<EdgeKey, int> count;
  for (const EdgeKey& e : pairs) ++count[key(e.first, e.second)];
  const auto is_bad = [&](const EdgeKey& e) {
    return e.first == e.second || count[key(e.first, e.second)] > 1;
  };

  for (int sweep = 0; sweep < 300; ++sweep) {
    bool any_bad = false;
    bool progress = false;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!is_bad(pairs[i])) continue;
      any_bad = true;
      for (int attempt = 0; attempt < 200; ++attempt) {
        const std::size_t j = rng.uniform_below(pairs.size());
        if (j == i) continue;
        // Swap the second endpoints; in the one-sided case randomly flip
        // pair j first so both of its stubs are reachable.
        EdgeKey a = pairs[i];
        EdgeKey b = pairs[j];
        if (!bipartite && rng.uniform_below(2) == 1) std::swap(b.first, b.second);
        const EdgeKey na{a.first, b.second};
        const EdgeKey nb{b.first, a.second};
        if (na.first == na.second || nb.first == nb.second) continue;
        const EdgeKey ka = key(na.first, na.second);
        const EdgeKey kb = key(nb.first, nb.second);
        if (count[ka] > 0 || count[kb] > 0 || ka == kb) continue;
        --count[key(pairs[i].first, pairs[i].second)];
        --count[key(pairs[j].first, pairs[j].second)];
        ++count[ka];
        ++count[kb];
        pairs[i] = na;
        pairs[j] = nb;
        progress = true;
        break;
      }
    }
    if (!any_bad) {
      std::vector<Edge> edges;
      edges.reserve(pairs.size());
      for (const EdgeKey& e : pairs) {
        edges.push_back({std::min(e.first, e.second),
                         std::max(e.first, e.second), 1.0});
      }
      return edges;
    }
    if (!progress && sweep > 50) break;
  }
  int remaining = 0;
  for (const EdgeKey& e : pairs) {
    if (is_bad(e)) ++remaining;
  }
  throw std::runtime_error("pair_stubs: repair budget exhausted (" +
                           std::to_string(pairs.size()) + " pairs, " +
                           std::to_string(remaining) + " still bad)");
}

// Random bipartite graph with the exact per-vertex degree sequences given
// by spreading `edges` as evenly as possible over each side.
std::vector<Edge> near_biregular_block(int lo1, int n1, int lo2, int n2,
                                       long edges, Rng& rng) {
  if (edges < 0 || edges > static_cast<long>(n1) * n2) {
    throw std::invalid_argument("near_biregular_block: infeasible edge count");
  }
  if (edges == 0) return {};
  // Dense blocks defeat random repair; build the sparse complement instead.
  if (2 * edges > static_cast<long>(n1) * n2) {
    const std::vector<Edge> co = near_biregular_block(
        lo1, n1, lo2, n2, static_cast<long>(n1) * n2 - edges, rng);
    std::vector<std::vector<bool>> present(n1, std::vector<bool>(n2, false));
    for (const Edge& e : co) present[e.u - lo1][e.v - lo2] = true;
    std::vector<Edge> out;
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        if (!present[i][j]) out.push_back({lo1 + i, lo2 + j, 1.0});
      }
    }
    return out;
  }
  const auto spread = [&](int lo, int n) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = lo + i;
    rng.shuffle(ids);
    std::vector<int> stubs;
    for (long e = 0; e < edges; ++e) stubs.push_back(ids[e % n]);
    return stubs;
  };
  return pair_stubs(spread(lo1, n1), spread(lo2, n2), rng);
}

double lambda2_of(const Graph& g) {
  return eig_sym(g.normalized_adjacency()).values[1];
}

}  // namespace

Graph random_regular(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0 || d >= n) {
    throw std::invalid_argument("random_regular: need 0 <= d < n");
  }
  if ((static_cast<long>(n) * d) % 2 != 0) {
    throw std::invalid_argument("random_regular: n*d must be even");
  }
  if (d == 0) return Graph(n, {});
  if (d == n - 1) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
    }
    return Graph(n, edges);
  }
  for (int attempt = 0; attempt < 40; ++attempt) {
    Rng rng(Rng::derive(seed, 0x726567ULL + attempt));
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v) {
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    }
    try {
      return Graph(n, pair_stubs(std::move(stubs), {}, rng));
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  throw std::runtime_error("random_regular: retry budget exhausted");
}

Graph random_regular_expander(int n, int d, std::uint64_t seed,
                              double lambda_max, int budget) {
  for (int t = 0; t < budget; ++t) {
    Graph g = random_regular(n, d, Rng::derive(seed, 0x657870ULL + t));
    if (lambda2_of(g) <= lambda_max) return g;
  }
  throw std::runtime_error(
      "random_regular_expander: no draw met the spectral bound");
}

SbmInstance sbm_from_model(const ModelMatrix& m, int n, double d,
                           std::uint64_t seed) {
  const int k = m.k();
  const Eigen::VectorXd pi = stationary_distribution(m);
  if (!m.is_reversible(pi)) {
    throw std::invalid_argument("sbm_from_model: model is not reversible");
  }

  std::vector<int> sizes(k);
  int total = 0;
  for (int a = 0; a < k; ++a) {
    sizes[a] = static_cast<int>(std::llround(pi[a] * n));
    total += sizes[a];
  }
  while (total != n) {
    const int a = static_cast<int>(std::max_element(sizes.begin(), sizes.end())
                                   - sizes.begin());
    sizes[a] += total < n ? 1 : -1;
    total += total < n ? 1 : -1;
  }
  std::vector<int> offset(k, 0);
  for (int a = 1; a < k; ++a) offset[a] = offset[a - 1] + sizes[a - 1];

  std::vector<Edge> edges;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const long target = std::llround(sizes[a] * d * m.entries(a, b));
      if (target == 0) continue;
      Rng rng(Rng::derive(seed, 0x73626dULL + a * k + b));
      std::vector<Edge> block = near_biregular_block(
          offset[a], sizes[a], offset[b], sizes[b], target, rng);
      edges.insert(edges.end(), block.begin(), block.end());
    }
  }

  SbmInstance inst;
  inst.graph = Graph(n, std::move(edges));
  std::vector<int> chi(n);
  for (int a = 0; a < k; ++a) {
    for (int i = 0; i < sizes[a]; ++i) chi[offset[a] + i] = a;
  }
  inst.partition = Partition(std::move(chi), k);
  if (inst.graph.degrees().minCoeff() > 0.0) {
    const ModelMatrix measured =
        model_matrix(inst.graph.normalized_adjacency(), inst.partition);
    inst.model_distance =
        (measured.entries - m.entries).lpNorm<Eigen::Infinity>();
  } else {
    inst.model_distance = std::numeric_limits<double>::infinity();
  }
  return inst;
}

Graph biregular_random(int n1, int n2, int d1, std::uint64_t seed) {
  if (n1 < 1 || n2 < 1 || d1 < 1) {
    throw std::invalid_argument("biregular_random: positive sizes required");
  }
  if ((static_cast<long>(n1) * d1) % n2 != 0) {
    throw std::invalid_argument(
        "biregular_random: n1*d1 must be divisible by n2");
  }
  const long d2 = static_cast<long>(n1) * d1 / n2;
  if (d1 > n2 || d2 > n1) {
    throw std::invalid_argument("biregular_random: degrees exceed side sizes");
  }
  const double bound = 2.0 / std::sqrt(static_cast<double>(std::min<long>(d1, d2)))
                       + 0.1;
  for (int t = 0; t < 30; ++t) {
    Rng rng(Rng::derive(seed, 0x626972ULL + t));
    std::vector<int> left, right;
    for (int v = 0; v < n1; ++v) {
      for (int i = 0; i < d1; ++i) left.push_back(v);
    }
    for (int v = 0; v < n2; ++v) {
      for (long i = 0; i < d2; ++i) right.push_back(n1 + v);
    }
    Graph g;
    try {
      g = Graph(n1 + n2, pair_stubs(std::move(left), std::move(right), rng));
    } catch (const std::runtime_error&) {
      continue;
    }
    if (lambda2_of(g) <= bound) return g;
  }
  throw std::runtime_error("biregular_random: spectral budget exhausted");
}

BlowupInstance blowup_instance(const ModelMatrix& m, const Graph& base,
                               double eps, std::uint64_t seed) {
  const int k = m.k();
  const int base_n = base.num_vertices();
  if (base_n % 2 != 0) {
    throw std::invalid_argument("blowup_instance: base size must be even");
  }
  const int half = base_n / 2;
  const Eigen::VectorXd pi = stationary_distribution(m);
  const auto [grouping, alpha] = alpha_uncovered_bound(m, 1e-9);
  (void)alpha;
  const int kp = static_cast<int>(grouping.groups.size());

  // Even multipliers r with hat_pi = r / sum(r) close to pi and argmax
  // preserved per group.
  const double bound = 0.5 * eps * pi.minCoeff();
  std::vector<int> r, best_r;
  double best_dev = std::numeric_limits<double>::infinity();
  for (int t = 2 * k; t <= 4000; t += 2) {
    std::vector<int> cand(k);
    long sum = 0;
    for (int a = 0; a < k; ++a) {
      cand[a] = 2 * std::max<long>(1, std::llround(pi[a] * t / 2.0));
      sum += cand[a];
    }
    double dev = 0.0;
    for (int a = 0; a < k; ++a) {
      dev = std::max(dev, std::abs(static_cast<double>(cand[a]) / sum - pi[a]));
    }
    bool argmax_ok = true;
    for (int i = 0; i < kp; ++i) {
      int star = grouping.groups[i].front();
      for (int a : grouping.groups[i]) {
        if (cand[a] > cand[star]) star = a;
      }
      if (star != grouping.representatives[i]) argmax_ok = false;
    }
    if (!argmax_ok) continue;
    if (dev < best_dev) {
      best_dev = dev;
      best_r = cand;
    }
    if (dev <= bound) {
      r = cand;
      break;
    }
  }
  if (r.empty()) {
    if (best_r.empty()) {
      throw std::runtime_error("blowup_instance: no valid multipliers found");
    }
    r = best_r;  // best effort when eps is very tight
  }
  long r_sum = 0;
  for (int a : r) r_sum += a;

  BlowupInstance out;
  out.r = r;

  // Vertex layout per group: copies of the base graph first, padding last.
  std::vector<int> group_lo(kp), group_size(kp), rep(kp);
  std::vector<Edge> edges;
  int cursor = 0;
  for (int i = 0; i < kp; ++i) {
    long ri = 0;
    for (int a : grouping.groups[i]) ri += r[a];
    const int star = grouping.representatives[i];
    const long rest = ri - r[star];
    const long copies = r[star] <= rest ? ri / 2 : rest;
    const long padding = (ri - 2 * copies) * half;
    group_lo[i] = cursor;
    group_size[i] = static_cast<int>(ri * half);
    rep[i] = star;
    for (long c = 0; c < copies; ++c) {
      const int lo = cursor;
      for (const Edge& e : base.edges()) {
        edges.push_back({lo + e.u, lo + e.v, e.w});
      }
      for (int v = 0; v < base_n; ++v) {
        out.group_of.push_back(i);
        out.base_vertex.push_back(v);
        out.base_copy.push_back(static_cast<int>(c));
      }
      cursor += base_n;
    }
    for (long p = 0; p < padding; ++p) {
      out.group_of.push_back(i);
      out.base_vertex.push_back(-1);
      out.base_copy.push_back(-1);
      ++cursor;
    }
  }
  const int n_total = cursor;

  Eigen::MatrixXd mhat = m.entries;
  for (int j = 0; j < k; ++j) {
    const double hat_pi_j = static_cast<double>(r[j]) / r_sum;
    mhat.col(j) *= hat_pi_j / pi[j];
  }
  for (int i = 0; i < kp; ++i) {
    for (int j = i + 1; j < kp; ++j) {
      const long target =
          std::llround(static_cast<double>(group_size[i]) *
                       mhat(rep[i], rep[j]) * half);
      if (target == 0) continue;
      Rng rng(Rng::derive(seed, 0x626c6fULL + i * kp + j));
      std::vector<Edge> block = near_biregular_block(
          group_lo[i], group_size[i], group_lo[j], group_size[j], target, rng);
      edges.insert(edges.end(), block.begin(), block.end());
    }
  }

  out.graph = Graph(n_total, std::move(edges));
  out.lambda2 = out.graph.degrees().minCoeff() > 0.0
                    ? lambda2_of(out.graph)
                    : 1.0;
  return out;
}

Graph lambda3_instance(const Graph& base, std::uint64_t seed, double eps) {
  const int n = base.num_vertices();
  const long two_m = std::llround(2.0 * base.total_weight());
  const double disc = static_cast<double>(n) * n - 4.0 * two_m;
  if (disc < 0.0) {
    throw std::invalid_argument("lambda3_instance: base is too dense");
  }
  // Largest even s <= (n + sqrt(n^2 - 4*2m))/2 making s(n-s) - 2m even.
  int s = static_cast<int>(std::floor((n + std::sqrt(disc)) / 2.0));
  long delta = -1;
  while (s > n / 2) {
    delta = static_cast<long>(s) * (n - s) - two_m;
    if (delta >= 0 && delta % 2 == 0 && s % 2 == 0) break;
    --s;
  }
  if (s <= n / 2 || delta < 0) {
    throw std::runtime_error("lambda3_instance: no feasible |S|");
  }
  if (base.degrees().maxCoeff() + 1.0 > s) {
    throw std::invalid_argument(
        "lambda3_instance: base maximum degree too close to |S|");
  }
  if (delta > n) {
    throw std::runtime_error(
        "lambda3_instance: degree correction exceeds base size");
  }

  Rng rng(Rng::derive(seed, 0x6c33ULL));
  // Correction H': remove s(n-s) edges of the complete bipartite V x S.
  // Every S vertex loses n-s; vertex x of V loses deg(x), plus delta
  // vertices lose one extra and get it back through an internal matching.
  std::vector<int> extra(n, 0);
  {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    rng.shuffle(ids);
    for (long i = 0; i < delta; ++i) extra[ids[i]] = 1;
  }
  std::vector<int> vstubs, sstubs;
  for (int x = 0; x < n; ++x) {
    const int deg = static_cast<int>(std::llround(base.degrees()[x])) +
                    extra[x];
    for (int i = 0; i < deg; ++i) vstubs.push_back(x);
  }
  for (int y = 0; y < s; ++y) {
    for (int i = 0; i < n - s; ++i) sstubs.push_back(n + y);
  }
  const std::vector<Edge> hprime = pair_stubs(std::move(vstubs),
                                              std::move(sstubs), rng);
  std::vector<std::vector<bool>> removed(n, std::vector<bool>(s, false));
  for (const Edge& e : hprime) removed[e.u][e.v - n] = true;

  std::vector<Edge> edges = base.edges();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < s; ++y) {
      if (!removed[x][y]) edges.push_back({x, n + y, 1.0});
    }
  }
  // Matching returning the delta extra removals inside V.
  {
    std::vector<int> deficient;
    for (int x = 0; x < n; ++x) {
      if (extra[x]) deficient.push_back(x);
    }
    for (int round = 0; round < 600; ++round) {
      rng.shuffle(deficient);
      bool ok = true;
      for (std::size_t i = 0; i + 1 < deficient.size(); i += 2) {
        if (base.has_edge(deficient[i], deficient[i + 1])) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      if (round == 599) {
        throw std::runtime_error("lambda3_instance: matching repair failed");
      }
    }
    for (std::size_t i = 0; i + 1 < deficient.size(); i += 2) {
      edges.push_back({deficient[i], deficient[i + 1], 1.0});
    }
  }

  // Disjoint s-regular tripartite expander with sides (s, s, 2c).
  const int c = static_cast<int>(std::llround((0.25 - eps / 2.0) * n));
  if (c < 1 || c > s) {
    throw std::runtime_error("lambda3_instance: infeasible tripartite side");
  }
  const int lo1 = n + s, lo2 = lo1 + s, lo3 = lo2 + s;
  const int t3 = 2 * c;
  {
    Rng trng(Rng::derive(seed, 0x6c3374ULL));
    const auto block = [&](int a_lo, int a_n, int b_lo, int b_n, long e) {
      std::vector<Edge> b = near_biregular_block(a_lo, a_n, b_lo, b_n, e,
                                                 trng);
      edges.insert(edges.end(), b.begin(), b.end());
    };
    block(lo1, s, lo2, s, static_cast<long>(s) * (s - c));
    block(lo1, s, lo3, t3, static_cast<long>(s) * c);
    block(lo2, s, lo3, t3, static_cast<long>(s) * c);
  }

  Graph out(lo3 + t3, std::move(edges));
  if (!out.is_regular() ||
      std::llround(out.degrees()[0]) != s) {
    throw std::logic_error("lambda3_instance: output is not |S|-regular");
  }
  return out;
}

Graph planted_independent_set(int n_i, int n_c, int d_cross, int d_inner,
                              std::uint64_t seed) {
  if (n_i <= 0 || n_c <= 0 || d_cross <= 0 || d_inner < 0) {
    throw std::invalid_argument(
        "planted_independent_set: sizes and degrees must be positive");
  }
  if ((static_cast<long>(n_i) * d_cross) % n_c != 0) {
    throw std::invalid_argument(
        "planted_independent_set: cross degrees not integral");
  }
  const long d_from_cross = static_cast<long>(n_i) * d_cross / n_c;
  if (d_from_cross + d_inner != d_cross) {
    throw std::invalid_argument(
        "planted_independent_set: degrees do not make the graph regular");
  }
  Rng rng(Rng::derive(seed, 0x706973ULL));
  std::vector<int> left, right;
  for (int v = 0; v < n_i; ++v) {
    for (int i = 0; i < d_cross; ++i) left.push_back(v);
  }
  for (int v = 0; v < n_c; ++v) {
    for (long i = 0; i < d_from_cross; ++i) right.push_back(n_i + v);
  }
  std::vector<Edge> edges = pair_stubs(std::move(left), std::move(right), rng);
  const Graph inner =
      random_regular(n_c, d_inner, Rng::derive(seed, 0x696e6eULL));
  for (const Edge& e : inner.edges()) {
    edges.push_back({n_i + e.u, n_i + e.v, e.w});
  }
  return Graph(n_i + n_c, std::move(edges));
}

}  // namespace excol
