#include "excol/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "excol/rng.hpp"

namespace excol {

namespace {

constexpr double kEigSlack = 1e-9;

// Assigns every vertex to the center with the smallest squared coordinate
// distance; ties go to the lowest class index.
std::vector<int> assign_to_centers(const Eigen::MatrixXd& rows,
                                   const Eigen::MatrixXd& centers) {
  const int n = static_cast<int>(rows.rows());
  const int k = static_cast<int>(centers.cols());
  std::vector<int> chi(n, 0);
  for (int x = 0; x < n; ++x) {
    double best = (rows.row(x).transpose() - centers.col(0)).squaredNorm();
    int arg = 0;
    for (int a = 1; a < k; ++a) {
      const double d = (rows.row(x).transpose() - centers.col(a)).squaredNorm();
      if (d < best - 1e-15) {
        best = d;
        arg = a;
      }
    }
    chi[x] = arg;
  }
  return chi;
}

struct GuessCollector {
  int k;
  int max_candidates;
  CandidateList out;
  std::set<std::vector<int>> seen;

  bool full() const {
    return static_cast<int>(out.partitions.size()) >= max_candidates;
  }

  void add(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& centers,
           const std::string& tag) {
    if (full()) return;
    std::vector<int> chi = assign_to_centers(rows, centers);
    if (!seen.insert(chi).second) return;
    out.partitions.emplace_back(std::move(chi), k);
    out.provenance.push_back(tag);
  }
};

// Lloyd iterations from given initial centers (columns). Empty clusters are
// reseeded with the point farthest from its assigned center.
Eigen::MatrixXd kmeans_refine(const Eigen::MatrixXd& rows,
                              Eigen::MatrixXd centers) {
  const int n = static_cast<int>(rows.rows());
  const int ell = static_cast<int>(rows.cols());
  const int k = static_cast<int>(centers.cols());
  std::vector<int> chi(n, -1);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<int> next = assign_to_centers(rows, centers);
    if (next == chi) break;
    chi = std::move(next);
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(ell, k);
    std::vector<int> counts(k, 0);
    for (int x = 0; x < n; ++x) {
      sums.col(chi[x]) += rows.row(x).transpose();
      ++counts[chi[x]];
    }
    for (int a = 0; a < k; ++a) {
      if (counts[a] > 0) {
        centers.col(a) = sums.col(a) / counts[a];
      } else {
        int far = 0;
        double far_d = -1.0;
        for (int x = 0; x < n; ++x) {
          const double d =
              (rows.row(x).transpose() - centers.col(chi[x])).squaredNorm();
          if (d > far_d) {
            far_d = d;
            far = x;
          }
        }
        centers.col(a) = rows.row(far).transpose();
      }
    }
  }
  return centers;
}

// Center guesses from the data itself: quantile-spaced rows along the first
// coordinate, plus a few k-means++ style random restarts. These are cheap
// and recover noiseless inputs exactly.
void add_data_driven_guesses(GuessCollector& col, const Eigen::MatrixXd& rows,
                             int k, std::uint64_t seed) {
  const int n = static_cast<int>(rows.rows());
  const int ell = static_cast<int>(rows.cols());

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (int j = 0; j < ell; ++j) {
      if (rows(a, j) != rows(b, j)) return rows(a, j) < rows(b, j);
    }
    return a < b;
  });
  Eigen::MatrixXd centers(ell, k);
  for (int a = 0; a < k; ++a) {
    centers.col(a) = rows.row(order[((2 * a + 1) * n) / (2 * k)]).transpose();
  }
  col.add(rows, kmeans_refine(rows, centers), "kmeans:quantile");

  Rng rng(Rng::derive(seed, 0x6b6d65616e73ULL));
  for (int restart = 0; restart < 4 && !col.full(); ++restart) {
    centers.col(0) = rows.row(rng.uniform_below(n)).transpose();
    for (int a = 1; a < k; ++a) {
      // k-means++: pick proportionally to squared distance from chosen.
      Eigen::VectorXd d2(n);
      for (int x = 0; x < n; ++x) {
        double best = (rows.row(x).transpose() - centers.col(0)).squaredNorm();
        for (int b = 1; b < a; ++b) {
          best = std::min(
              best, (rows.row(x).transpose() - centers.col(b)).squaredNorm());
        }
        d2[x] = best;
      }
      const double total = d2.sum();
      int pick = static_cast<int>(rng.uniform_below(n));
      if (total > 0.0) {
        double target = rng.uniform() * total;
        for (int x = 0; x < n; ++x) {
          target -= d2[x];
          if (target <= 0.0) {
            pick = x;
            break;
          }
        }
      }
      centers.col(a) = rows.row(pick).transpose();
    }
    col.add(rows, kmeans_refine(rows, centers),
            "kmeans:restart" + std::to_string(restart));
  }
}

void add_grid_guesses(GuessCollector& col, const Eigen::MatrixXd& rows, int k,
                      const RecoveryParams& params, int budget) {
  const int n = static_cast<int>(rows.rows());
  const int ell = static_cast<int>(rows.cols());
  const int axes = ell * k;
  const double half = 1.0 / std::sqrt(params.min_class_fraction * n);
  const double step =
      params.separation_alpha / std::sqrt(12.0 * k * static_cast<double>(n));

  int g = static_cast<int>(std::floor(2.0 * half / step)) + 1;
  // Coarsen until the full grid fits the budget; two points per axis is the
  // coarsest grid that can still separate signs.
  while (g > 2 && std::pow(static_cast<double>(g), axes) >
                      static_cast<double>(budget)) {
    --g;
  }
  if (std::pow(static_cast<double>(g), axes) > static_cast<double>(budget)) {
    return;
  }

  std::vector<int> odo(axes, 0);
  Eigen::MatrixXd centers(ell, k);
  long guess_index = 0;
  while (!col.full()) {
    for (int a = 0; a < k; ++a) {
      for (int j = 0; j < ell; ++j) {
        centers(j, a) =
            -half + odo[a * ell + j] * (2.0 * half / (g - 1));
      }
    }
    col.add(rows, centers, "grid:" + std::to_string(guess_index));
    ++guess_index;
    int pos = 0;
    while (pos < axes && ++odo[pos] == g) {
      odo[pos] = 0;
      ++pos;
    }
    if (pos == axes) break;
  }
}

}  // namespace

void RecoveryParams::validate(int k) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
  if (!(net_resolution > 0.0 && net_resolution <= 1.0)) {
    throw std::invalid_argument("net_resolution must be in (0, 1]");
  }
  if (rank_cap < 1) throw std::invalid_argument("rank_cap must be >= 1");
  if (!(min_class_fraction > 0.0 &&
        min_class_fraction <= 1.0 / std::max(k, 1))) {
    throw std::invalid_argument("min_class_fraction must be in (0, 1/k]");
  }
  if (max_candidates < 1) {
    throw std::invalid_argument("max_candidates must be >= 1");
  }
}

std::vector<Eigen::VectorXd> epsilon_net(int dim, double resolution,
                                         std::uint64_t seed,
                                         int max_candidates) {
  if (dim < 1) throw std::invalid_argument("epsilon_net: dim must be >= 1");
  if (!(resolution > 0.0 && resolution <= 1.0)) {
    throw std::invalid_argument("epsilon_net: resolution must be in (0, 1]");
  }
  // m = (4/resolution)^dim, sized in log space to survive large dims.
  const double log_m = dim * std::log(4.0 / resolution);
  const double log_count =
      std::log(3.0) + log_m + std::log(std::max(log_m, 1.0));
  if (log_count > std::log(static_cast<double>(max_candidates))) {
    throw std::runtime_error(
        "epsilon_net: projected net size exceeds the candidate cap of " +
        std::to_string(max_candidates) + "; coarsen the resolution");
  }
  const long count = static_cast<long>(std::ceil(std::exp(log_count)));
  if (count + 2L * dim > max_candidates) {
    throw std::runtime_error(
        "epsilon_net: projected net size exceeds the candidate cap of " +
        std::to_string(max_candidates) + "; coarsen the resolution");
  }

  std::vector<Eigen::VectorXd> net;
  net.reserve(count + 2L * dim);
  Rng rng(Rng::derive(seed, 0x6e6574ULL));
  for (long i = 0; i < count; ++i) {
    Eigen::VectorXd v(dim);
    for (int j = 0; j < dim; ++j) v[j] = rng.normal();
    const double norm = v.norm();
    if (norm < 1e-12) {
      --i;
      continue;
    }
    net.push_back(v / norm);
  }
  for (int j = 0; j < dim; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e[j] = 1.0;
    net.push_back(e);
    net.push_back(-e);
  }
  return net;
}

Eigen::MatrixXd extreme_eigenspace(const SpectralDecomposition& spec,
                                   const RecoveryParams& params) {
  std::vector<int> idx;
  for (int i = 0; i < spec.n(); ++i) {
    if (std::abs(spec.values[i]) >= params.lambda - kEigSlack) {
      idx.push_back(i);
    }
  }
  const int s = static_cast<int>(idx.size());
  if (s == 0) {
    throw std::runtime_error(
        "extreme_eigenspace: no eigenvalue has magnitude >= " +
        std::to_string(params.lambda));
  }
  if (s > params.rank_cap) {
    throw std::runtime_error(
        "extreme_eigenspace: subspace dimension " + std::to_string(s) +
        " exceeds rank cap " + std::to_string(params.rank_cap));
  }
  // Order by |eigenvalue| descending so prefixes are the most extreme.
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(spec.values[a]) > std::abs(spec.values[b]);
  });
  Eigen::MatrixXd q(spec.vectors.rows(), s);
  for (int c = 0; c < s; ++c) q.col(c) = spec.vectors.col(idx[c]);
  return q;
}

std::vector<Eigen::VectorXd> eigenspace_candidates(
    const Eigen::MatrixXd& normalized_adj, const RecoveryParams& params) {
  const SpectralDecomposition spec = eig_sym(normalized_adj);
  const Eigen::MatrixXd q = extreme_eigenspace(spec, params);
  const int s = static_cast<int>(q.cols());
  std::vector<Eigen::VectorXd> net =
      epsilon_net(s, params.net_resolution, params.seed, params.max_candidates);
  std::vector<Eigen::VectorXd> lifted;
  lifted.reserve(net.size());
  for (const Eigen::VectorXd& y : net) lifted.push_back(q * y);
  return lifted;
}

CandidateList spectral_cluster(const std::vector<Eigen::VectorXd>& hat_us,
                               int k, const RecoveryParams& params) {
  if (hat_us.empty()) {
    throw std::invalid_argument("spectral_cluster: empty candidate list");
  }
  if (k < 2) throw std::invalid_argument("spectral_cluster: k must be >= 2");
  if (static_cast<int>(hat_us.size()) > k) {
    throw std::invalid_argument(
        "spectral_cluster: at most k candidate vectors allowed");
  }
  params.validate(k);
  const int n = static_cast<int>(hat_us.front().size());
  const int ell = static_cast<int>(hat_us.size());
  Eigen::MatrixXd rows(n, ell);
  for (int j = 0; j < ell; ++j) {
    if (hat_us[j].size() != n) {
      throw std::invalid_argument("spectral_cluster: mismatched lengths");
    }
    rows.col(j) = hat_us[j];
  }

  GuessCollector col{k, params.max_candidates, {}, {}};
  if (params.mode == RecoveryMode::Exhaustive) {
    add_grid_guesses(col, rows, k, params, params.max_candidates);
  }
  add_data_driven_guesses(col, rows, k, params.seed);
  col.out.vectors = hat_us;
  return col.out;
}

CandidateList recover_partitions(const Eigen::MatrixXd& normalized_adj,
                                 int k, const RecoveryParams& params) {
  if (k < 2) throw std::invalid_argument("recover_partitions: k must be >= 2");
  params.validate(k);
  const SpectralDecomposition spec = eig_sym(normalized_adj);
  const Eigen::MatrixXd q = extreme_eigenspace(spec, params);
  const int s = static_cast<int>(q.cols());
  const int n = static_cast<int>(q.rows());

  GuessCollector col{k, params.max_candidates, {}, {}};

  if (params.mode == RecoveryMode::Heuristic) {
    // Cluster directly on the most extreme basis vectors.
    const int ell = std::min(s, k);
    Eigen::MatrixXd rows = q.leftCols(ell);
    add_data_driven_guesses(col, rows, k, params.seed);
    CandidateList out = std::move(col.out);
    for (int j = 0; j < ell; ++j) out.vectors.push_back(q.col(j));
    return out;
  }

  std::vector<Eigen::VectorXd> net =
      epsilon_net(s, params.net_resolution, params.seed, params.max_candidates);
  std::vector<Eigen::VectorXd> lifted;
  lifted.reserve(net.size());
  for (const Eigen::VectorXd& y : net) lifted.push_back(q * y);

  // Subsets of at most k candidates: all of them when the list is small,
  // otherwise a few greedy near-orthogonal families.
  std::vector<std::vector<int>> subsets;
  const int m = static_cast<int>(lifted.size());
  if (m <= 20) {
    std::vector<int> subset;
    const auto extend = [&](auto&& self, int start) -> void {
      if (!subset.empty()) subsets.push_back(subset);
      if (static_cast<int>(subset.size()) == k) return;
      for (int i = start; i < m; ++i) {
        subset.push_back(i);
        self(self, i + 1);
        subset.pop_back();
      }
    };
    extend(extend, 0);
  } else {
    const int starts = std::min(m, 10);
    for (int r = 0; r < starts; ++r) {
      std::vector<int> chosen{(r * m) / starts};
      subsets.push_back(chosen);
      while (static_cast<int>(chosen.size()) < std::min(s, k)) {
        int best = -1;
        double best_score = 2.0;
        for (int i = 0; i < m; ++i) {
          if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) {
            continue;
          }
          double score = 0.0;
          for (int c : chosen) {
            score = std::max(score, std::abs(lifted[i].dot(lifted[c])) /
                                        (lifted[i].norm() * lifted[c].norm()));
          }
          if (score < best_score) {
            best_score = score;
            best = i;
          }
        }
        if (best < 0) break;
        chosen.push_back(best);
        subsets.push_back(chosen);
      }
    }
  }

  const int budget = std::max(
      256, params.max_candidates / std::max<int>(1, subsets.size()));
  for (const std::vector<int>& subset : subsets) {
    if (col.full()) break;
    Eigen::MatrixXd rows(n, subset.size());
    for (std::size_t j = 0; j < subset.size(); ++j) {
      rows.col(j) = lifted[subset[j]];
    }
    add_grid_guesses(col, rows, k, params, budget);
    add_data_driven_guesses(col, rows, k, params.seed);
  }

  CandidateList out = std::move(col.out);
  out.vectors = std::move(lifted);
  return out;
}

double row_separation(const ModelMatrix& m) {
  const int k = m.k();
  if (k < 2) throw std::invalid_argument("row_separation: k must be >= 2");
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      best = std::min(best, (m.entries.row(a) - m.entries.row(b)).norm());
    }
  }
  return best;
}

}  // namespace excol
