#include "excol/report.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace excol {

namespace {

using nlohmann::json;

std::vector<std::vector<long>> overlap_counts(const Partition& reference,
                                              const std::vector<int>& chi,
                                              int k) {
  std::vector<std::vector<long>> counts(
      k, std::vector<long>(reference.k, 0));
  for (int x = 0; x < reference.n(); ++x) {
    if (chi[x] >= 0) ++counts[chi[x]][reference.chi[x]];
  }
  return counts;
}

MatchResult match_chi(const Partition& reference, const std::vector<int>& chi,
                      int k) {
  if (static_cast<int>(chi.size()) != reference.n()) {
    throw std::invalid_argument("permutation_match: size mismatch");
  }
  const int n = reference.n();
  const auto counts = overlap_counts(reference, chi, k);

  MatchResult best;
  best.permutation.assign(k, 0);
  if (k <= 8) {
    // Permutations of [max(k, reference.k)] restricted to the first k slots
    // cover every injection of candidate colors into reference colors.
    const int kk = std::max(k, reference.k);
    std::vector<int> full(kk);
    for (int a = 0; a < kk; ++a) full[a] = a;
    long best_agree = -1;
    do {
      long agree = 0;
      for (int a = 0; a < k; ++a) {
        if (full[a] < reference.k) agree += counts[a][full[a]];
      }
      if (agree > best_agree) {
        best_agree = agree;
        best.permutation.assign(full.begin(), full.begin() + k);
      }
    } while (std::next_permutation(full.begin(), full.end()));
    best.agreement = static_cast<double>(best_agree) / n;
  } else {
    // Greedy: repeatedly take the heaviest unused (candidate, reference)
    // color pair.
    std::vector<bool> used_a(k, false), used_b(reference.k, false);
    long agree = 0;
    best.permutation.assign(k, -1);
    for (int step = 0; step < std::min(k, reference.k); ++step) {
      long top = -1;
      int ta = -1, tb = -1;
      for (int a = 0; a < k; ++a) {
        if (used_a[a]) continue;
        for (int b = 0; b < reference.k; ++b) {
          if (!used_b[b] && counts[a][b] > top) {
            top = counts[a][b];
            ta = a;
            tb = b;
          }
        }
      }
      used_a[ta] = true;
      used_b[tb] = true;
      best.permutation[ta] = tb;
      agree += top;
    }
    best.agreement = static_cast<double>(agree) / n;
  }
  return best;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

MatchResult permutation_match(const Partition& reference,
                              const Partition& candidate) {
  return match_chi(reference, candidate.chi, candidate.k);
}

MatchResult permutation_match(const Partition& reference,
                              const ColoringResult& candidate) {
  std::vector<int> chi(reference.n(), kFree);
  for (std::size_t a = 0; a < candidate.independent_sets.size(); ++a) {
    for (int v : candidate.independent_sets[a]) chi[v] = static_cast<int>(a);
  }
  return match_chi(reference, chi,
                   std::max(1, static_cast<int>(
                                   candidate.independent_sets.size())));
}

std::string to_json(const Graph& g) {
  json j;
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.w});
  j["edges"] = std::move(edges);
  return j.dump();
}

std::string to_json(const Partition& p) {
  json j;
  j["k"] = p.k;
  j["chi"] = p.chi;
  return j.dump();
}

std::string to_json(const ModelMatrix& m) {
  json j;
  j["entries"] = matrix_json(m.entries);
  if (m.stationary) {
    std::vector<double> pi(m.stationary->data(),
                           m.stationary->data() + m.stationary->size());
    j["stationary"] = pi;
  }
  return j.dump();
}

std::string to_json(const RankReport& r) {
  json j;
  j["tau"] = r.tau;
  j["sigma"] = r.sigma;
  j["tau_prime"] = r.tau_prime;
  j["bottom_rank"] = r.bottom_rank;
  j["top_rank"] = r.top_rank;
  j["lhs"] = r.lhs;
  j["preconditions_ok"] = r.preconditions_ok;
  j["holds"] = r.holds;
  return j.dump();
}

std::string to_json(const WitnessReport& r) {
  json j;
  j["inner_product"] = r.inner_product;
  j["frobenius_sq"] = r.frobenius_sq;
  j["trace"] = r.trace;
  j["lambda"] = r.lambda;
  j["t"] = r.t;
  j["conditions_hold"] = r.conditions_hold;
  return j.dump();
}

std::string to_json(const ColoringResult& r) {
  json j;
  j["independent_sets"] = r.independent_sets;
  j["covered_fraction"] = r.covered_fraction;
  j["k_effective"] = r.k_effective;
  j["provenance"] = r.provenance;
  return j.dump();
}

std::string to_json(const CandidateList& list, const Partition* reference) {
  json j;
  json parts = json::array();
  for (std::size_t i = 0; i < list.partitions.size(); ++i) {
    json item;
    item["chi"] = list.partitions[i].chi;
    item["k"] = list.partitions[i].k;
    item["provenance"] = list.provenance[i];
    if (reference != nullptr) {
      const MatchResult match = permutation_match(*reference,
                                                  list.partitions[i]);
      item["agreement"] = match.agreement;
      item["misclassified"] = 1.0 - match.agreement;
    }
    parts.push_back(std::move(item));
  }
  j["partitions"] = std::move(parts);
  j["count"] = list.partitions.size();
  return j.dump();
}

std::string to_json(const RecoverFullResult& r) {
  json j;
  j["success"] = r.partition.has_value();
  if (r.partition) {
    j["chi"] = r.partition->chi;
    j["k"] = r.partition->k;
  }
  j["diagnostics"] = r.diagnostics;
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j.dump();
}

}  // namespace excol
