#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "excol/coloring.hpp"
#include "excol/graph.hpp"
#include "excol/instances.hpp"
#include "excol/rng.hpp"
#include "excol/spectral.hpp"

using namespace excol;

namespace {

Graph triangle() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

Graph complete_tripartite(int per_side) {
  std::vector<Edge> edges;
  const int n = 3 * per_side;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (u / per_side != v / per_side) edges.push_back({u, v, 1.0});
    }
  }
  return Graph(n, edges);
}

ModelMatrix from_rows(std::initializer_list<double> values, int k) {
  ModelMatrix m;
  m.entries.resize(k, k);
  int i = 0;
  for (double v : values) m.entries(i / k, i % k) = v, ++i;
  return m;
}

bool independent(const Graph& g, const std::vector<int>& s) {
  const std::set<int> in(s.begin(), s.end());
  for (const Edge& e : g.edges()) {
    if (in.count(e.u) && in.count(e.v)) return false;
  }
  return true;
}

// Exhaustive maximum independent subset of s; for oracle graphs, n <= 20.
int max_independent_subset(const Graph& g, const std::vector<int>& s) {
  int best = 0;
  const int m = static_cast<int>(s.size());
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < m; ++i) {
      if (mask & (1 << i)) subset.push_back(s[i]);
    }
    if (static_cast<int>(subset.size()) > best && independent(g, subset)) {
      best = static_cast<int>(subset.size());
    }
  }
  return best;
}

}  // namespace

TEST_CASE("stationary distribution") {
  Eigen::VectorXd pi =
      stationary_distribution(from_rows({0, 1, 1, 0}, 2));
  CHECK(pi[0] == doctest::Approx(0.5));
  CHECK(pi[1] == doctest::Approx(0.5));

  pi = stationary_distribution(
      from_rows({0, 0.5, 0.5, 1, 0, 0, 1, 0, 0}, 3));
  CHECK(pi[0] == doctest::Approx(0.5));
  CHECK(pi[1] == doctest::Approx(0.25));
  CHECK(pi[2] == doctest::Approx(0.25));

  pi = stationary_distribution(
      from_rows({0, 0.5, 0.5, 0.5, 0, 0.5, 0.5, 0.5, 0}, 3));
  CHECK(pi[0] == doctest::Approx(1.0 / 3.0));

  // Disconnected nonzero pattern: no unique stationary distribution.
  CHECK_THROWS_WITH_AS(
      stationary_distribution(from_rows(
          {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}, 4)),
      doctest::Contains("disconnected"), std::runtime_error);
  CHECK_THROWS(stationary_distribution(from_rows({0, 0.5, 1, 0}, 2)));
}

TEST_CASE("3-coloring model from pi") {
  const ModelMatrix balanced =
      model_3_from_pi(Eigen::Vector3d(1.0 / 3, 1.0 / 3, 1.0 / 3));
  CHECK(balanced.entries(0, 1) == doctest::Approx(0.5));
  CHECK(balanced.entries(2, 1) == doctest::Approx(0.5));
  CHECK(balanced.entries(1, 1) == 0.0);

  const ModelMatrix skew =
      model_3_from_pi(Eigen::Vector3d(0.5, 0.25, 0.25));
  CHECK(skew.entries(0, 1) == doctest::Approx(0.5));
  CHECK(skew.entries(1, 0) == doctest::Approx(1.0));
  CHECK(skew.entries(1, 2) == doctest::Approx(0.0));

  CHECK_THROWS(model_3_from_pi(Eigen::Vector3d(0.6, 0.2, 0.2)));
  CHECK_THROWS(model_3_from_pi(Eigen::Vector3d(0.5, 0.5, 0.5)));
}

TEST_CASE("stationary of model_3_from_pi is the identity") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Vector3d pi;
    do {
      for (int a = 0; a < 3; ++a) pi[a] = -std::log(1.0 - rng.uniform());
      pi /= pi.sum();
    } while (pi.maxCoeff() > 0.5 - 1e-3);
    const Eigen::VectorXd back = stationary_distribution(model_3_from_pi(pi));
    CHECK((back - pi).lpNorm<Eigen::Infinity>() < 1e-9);
  }
}

TEST_CASE("alpha uncovered bound") {
  const auto [grouping, alpha] = alpha_uncovered_bound(
      from_rows({0, 0.5, 0.5, 1, 0, 0, 1, 0, 0}, 3));
  REQUIRE(grouping.groups.size() == 2);
  CHECK(grouping.groups[0] == std::vector<int>{0});
  CHECK(grouping.groups[1] == std::vector<int>{1, 2});
  CHECK(alpha == doctest::Approx(0.5));
  CHECK(grouping.p[0] == doctest::Approx(0.5));
  CHECK(grouping.p[1] == doctest::Approx(0.0));

  const auto [balanced_groups, balanced_alpha] = alpha_uncovered_bound(
      from_rows({0, 0.5, 0.5, 0.5, 0, 0.5, 0.5, 0.5, 0}, 3), 0.01);
  CHECK(balanced_groups.groups.size() == 3);
  CHECK(balanced_alpha == doctest::Approx(0.0));
  CHECK(balanced_groups.p[0] == doctest::Approx(1.0 / 3.0));

  const auto [two_groups, two_alpha] =
      alpha_uncovered_bound(from_rows({0, 1, 1, 0}, 2));
  CHECK(two_alpha == doctest::Approx(0.0));
  CHECK(two_groups.groups.size() == 2);
}

TEST_CASE("rounding an approximate independent set") {
  const Graph path(3, {{0, 1, 1}, {1, 2, 1}});
  CHECK(round_independent_set(path, {0, 2}) == std::vector<int>{0, 2});
  CHECK(round_independent_set(path, {0, 1, 2}) == std::vector<int>{2});
  CHECK(round_independent_set(triangle(), {0, 1, 2}).size() == 1);
  CHECK(round_independent_set(path, {}).empty());
}

TEST_CASE("rounding guarantee against a brute-force oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform_below(8));
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.uniform() < 0.3) edges.push_back({u, v, 1.0});
      }
    }
    const Graph g(n, edges);
    std::vector<int> s;
    for (int v = 0; v < n; ++v) {
      if (rng.uniform() < 0.7) s.push_back(v);
    }
    const std::vector<int> rounded = round_independent_set(g, s);
    CHECK(independent(g, rounded));
    const int opt = max_independent_subset(g, s);
    // |I'| >= |I*| - |S \ I*|
    CHECK(static_cast<int>(rounded.size()) >=
          opt - (static_cast<int>(s.size()) - opt));
  }
}

TEST_CASE("rounding a coloring") {
  const Graph c4(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}});
  CHECK(round_coloring(c4, Partition({0, 1, 0, 1}, 2)).covered_fraction ==
        1.0);
  CHECK(round_coloring(triangle(), Partition({0, 0, 0}, 1)).covered_fraction ==
        doctest::Approx(1.0 / 3.0));

  const ColoringResult flipped =
      round_coloring(c4, Partition({0, 1, 0, 0}, 2));
  CHECK(flipped.covered_fraction >= 0.5);
  for (const auto& set : flipped.independent_sets) {
    CHECK(independent(c4, set));
  }
}

TEST_CASE("coloring the complete tripartite graph") {
  RecoveryParams params;
  params.lambda = 0.4;
  params.net_resolution = 0.5;
  params.min_class_fraction = 1.0 / 3.0;
  const ColoringResult result =
      color_expander(complete_tripartite(3), 3, params);
  CHECK(result.covered_fraction == doctest::Approx(1.0));
  CHECK(result.k_effective == 3);

  const ColoringResult three =
      color_3_expander(complete_tripartite(3), 0.1, params);
  CHECK(three.covered_fraction == doctest::Approx(1.0));

  CHECK_THROWS(color_3_expander(Graph(3, {{0, 1, 1}, {1, 2, 1}}), 0.1,
                                params));
  CHECK_THROWS(color_expander(Graph(2, {}), 2, params));
}

TEST_CASE("independent set in bipartite graphs") {
  std::vector<Edge> edges;
  for (int u = 0; u < 5; ++u) {
    for (int v = 5; v < 10; ++v) edges.push_back({u, v, 1.0});
  }
  const Graph k55(10, edges);
  RecoveryParams params;
  const std::vector<int> set =
      find_independent_set(k55, 0.1, 0.6, 3, params);
  CHECK(set.size() == 5);
  CHECK(independent(k55, set));

  CHECK(find_independent_set(triangle(), 0.1, 0.3, 3, params).size() == 1);
  CHECK_THROWS(find_independent_set(k55, 0.3, 0.6, 3, params));
  // Bottom rank above the cap.
  CHECK_THROWS(find_independent_set(complete_tripartite(2), 0.1, 0.4, 1,
                                    params));
}

TEST_CASE("Hoffman bound on planted instances") {
  const Graph g = planted_independent_set(225, 275, 44, 8, 5);
  const double mu = 225.0 / 500.0;
  const SpectralDecomposition spec = eig_sym(g.normalized_adjacency());
  CHECK(spec.values[spec.n() - 1] <= -mu / (1.0 - mu) + 1e-7);
}
