#include "doctest.h"

#include <algorithm>
#include <set>

#include "excol/graph.hpp"
#include "excol/instances.hpp"
#include "excol/planting.hpp"
#include "excol/report.hpp"

using namespace excol;

namespace {

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

}  // namespace

TEST_CASE("planting removes exactly the monochromatic edges") {
  const Graph host = random_regular(30, 6, 1);
  const PlantedInstance inst = plant_k_coloring(host, 3, 9);
  CHECK(inst.d == doctest::Approx(6.0));
  CHECK(inst.planted.k == 3);
  CHECK(inst.planted.n() == 30);

  std::set<std::pair<int, int>> kept;
  for (const Edge& e : inst.graph.edges()) kept.insert({e.u, e.v});
  for (const Edge& e : host.edges()) {
    const bool mono = inst.planted.chi[e.u] == inst.planted.chi[e.v];
    CHECK(kept.count({e.u, e.v}) == (mono ? 0u : 1u));
  }

  const PlantedInstance again = plant_k_coloring(host, 3, 9);
  CHECK(again.planted.chi == inst.planted.chi);
  const PlantedInstance other = plant_k_coloring(host, 3, 10);
  CHECK(other.planted.chi != inst.planted.chi);
}

TEST_CASE("partial coloring basics") {
  PartialColoring pc{{0, kFree, 1, kFree}, 2};
  CHECK(pc.free_set() == std::vector<int>{1, 3});
  const Graph path(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  CHECK(pc.proper_on_colored(path));
  pc.colors = {0, kFree, 0, kFree};
  CHECK(pc.proper_on_colored(path));
  pc.colors = {0, 0, 1, kFree};
  CHECK(!pc.proper_on_colored(path));
}

TEST_CASE("uncolor keeps well-supported vertices") {
  const Graph g = complete_tripartite(2);
  const Partition chi({0, 0, 1, 1, 2, 2}, 3);
  // Every vertex sees two neighbors in each other class; nobody drops.
  const PartialColoring pc = uncolor(g, chi, 30.0, 3);
  CHECK(pc.free_set().empty());
  CHECK(pc.proper_on_colored(g));
}

TEST_CASE("uncolor drops a vertex missing a class") {
  // K_{2,2,2} minus both edges from vertex 0 into class 2.
  const Graph full = complete_tripartite(2);
  std::vector<Edge> edges;
  for (const Edge& e : full.edges()) {
    if (e.u == 0 && e.v >= 4) continue;
    edges.push_back(e);
  }
  const Graph g(6, edges);
  const Partition chi({0, 0, 1, 1, 2, 2}, 3);
  // Threshold 6/18: vertex 0 has zero class-2 neighbors, the rest keep
  // at least one neighbor in every other class.
  CHECK(uncolor(g, chi, 6.0, 3).free_set() == std::vector<int>{0});
  // Threshold 30/18 = 5/3 exceeds every cross count once 0 drops.
  CHECK(uncolor(g, chi, 30.0, 3).free_set().size() == 6);
}

TEST_CASE("uncolor output is proper even on improper input") {
  const Graph triangle(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  const PartialColoring pc = uncolor(triangle, Partition({0, 0, 1}, 2), 2.0, 2);
  CHECK(pc.proper_on_colored(triangle));
  CHECK(!pc.free_set().empty());
}

TEST_CASE("safe recolor forced moves") {
  const Graph wedge(3, {{0, 2, 1}, {1, 2, 1}});
  PartialColoring pc{{0, 1, kFree}, 3};
  CHECK(safe_recolor(wedge, pc, 3).colors == std::vector<int>{0, 1, 2});

  // One colored neighbor out of k-1 = 2 needed: no move.
  pc.colors = {0, kFree, kFree};
  CHECK(safe_recolor(wedge, pc, 3).colors ==
        std::vector<int>{0, kFree, kFree});

  // k = 2 cascades down a path.
  const Graph path(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  PartialColoring seed{{0, kFree, kFree, kFree}, 2};
  CHECK(safe_recolor(path, seed, 2).colors == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("finishing by components") {
  const Graph c4(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}});
  const FinishResult singles =
      finish_by_components(c4, PartialColoring{{0, kFree, 0, kFree}, 2}, 2);
  REQUIRE(singles.partition.has_value());
  CHECK(singles.partition->chi == std::vector<int>{0, 1, 0, 1});

  const Graph triangle(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  const FinishResult tri = finish_by_components(
      triangle, PartialColoring{{kFree, kFree, kFree}, 3}, 3, 5);
  REQUIRE(tri.partition.has_value());
  // Lexicographically first proper extension.
  CHECK(tri.partition->chi == std::vector<int>{0, 1, 2});

  const FinishResult stuck = finish_by_components(
      triangle, PartialColoring{{kFree, kFree, kFree}, 2}, 2, 5);
  CHECK(!stuck.partition.has_value());
  CHECK(!stuck.failure.empty());

  std::vector<Edge> edges;
  for (int i = 0; i + 1 < 10; ++i) edges.push_back({i, i + 1, 1.0});
  const FinishResult oversized = finish_by_components(
      Graph(10, edges), PartialColoring{std::vector<int>(10, kFree), 2}, 2, 2);
  CHECK(!oversized.partition.has_value());
  CHECK(!oversized.failure.empty());
}

TEST_CASE("statistically bad vertices match a direct recount") {
  const PlantedInstance inst =
      plant_k_coloring(random_regular(60, 6, 3), 3, 11);
  const std::vector<int> bad = statistically_bad(inst);
  std::vector<int> expected;
  for (int x = 0; x < 60; ++x) {
    Eigen::Vector3d counts = Eigen::Vector3d::Zero();
    for (const Edge& e : inst.graph.edges()) {
      if (e.u == x) counts[inst.planted.chi[e.v]] += 1;
      if (e.v == x) counts[inst.planted.chi[e.u]] += 1;
    }
    bool low = false;
    for (int a = 0; a < 3; ++a) {
      if (a != inst.planted.chi[x] && counts[a] < 6.0 / 6.0) low = true;
    }
    if (low) expected.push_back(x);
  }
  CHECK(bad == expected);
}

TEST_CASE("partial recovery on a complete tripartite instance") {
  const Graph g = complete_tripartite(3);
  RecoveryParams params;
  params.lambda = 0.7;
  params.rank_cap = 3;
  params.min_class_fraction = 1.0 / 3.0;
  params.mode = RecoveryMode::Heuristic;
  // A~ = (3/(2*6)) A has eigenvalues 1.5, 0, -0.75, -0.75.
  const CandidateList list = recover_partial_list(g, 6.0, 3, params);
  const Partition target({0, 0, 0, 1, 1, 1, 2, 2, 2}, 3);
  bool found = false;
  for (const Partition& p : list.partitions) {
    if (permutation_match(target, p).agreement == 1.0) found = true;
  }
  CHECK(found);
}

TEST_CASE("full recovery on a planted 3-coloring") {
  const Graph host = random_regular(400, 60, 2);
  const PlantedInstance inst = plant_k_coloring(host, 3, 5);
  RecoveryParams params;
  params.lambda = 0.45;
  params.mode = RecoveryMode::Heuristic;
  const RecoverFullResult res = recover_full(inst, params);
  REQUIRE(res.partition.has_value());
  CHECK(res.partition->k == 3);
  CHECK(coloring_quality(inst.graph, *res.partition).delta_vertex_cover ==
        0.0);
  CHECK(permutation_match(inst.planted, *res.partition).agreement >= 0.9);
}
