#include "excol/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace excol {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) fail("graph: negative vertex count");
  std::map<std::pair<int, int>, double> merged;
  for (const Edge& e : edges) {
    int u = e.u, v = e.v;
    if (u > v) std::swap(u, v);
    if (u == v) fail("graph: self-loop at vertex " + std::to_string(u));
    if (u < 0 || v >= n) fail("graph: vertex out of range: " + std::to_string(v));
    if (!(e.w > 0.0)) fail("graph: non-positive weight on edge (" +
                           std::to_string(u) + "," + std::to_string(v) + ")");
    merged[{u, v}] += e.w;  // parallel edges merge by summing
  }
  edges_.reserve(merged.size());
  degree_ = Eigen::VectorXd::Zero(n);
  for (const auto& [uv, w] : merged) {
    edges_.push_back({uv.first, uv.second, w});
    degree_[uv.first] += w;
    degree_[uv.second] += w;
    total_weight_ += w;
  }
  if (n > 0) {
    const double dmax = degree_.maxCoeff();
    const double dmin = degree_.minCoeff();
    is_regular_ = dmin > 0.0 && dmax / dmin <= 1.0 + 1e-9;
  }
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                             [](const Edge& e, const std::pair<int, int>& p) {
                               return std::pair{e.u, e.v} < p;
                             });
  return it != edges_.end() && it->u == u && it->v == v;
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    a(e.u, e.v) = e.w;
    a(e.v, e.u) = e.w;
  }
  return a;
}

Eigen::MatrixXd Graph::normalized_adjacency() const {
  for (int v = 0; v < n_; ++v) {
    if (degree_[v] <= 0.0) {
      fail("normalized adjacency: isolated vertex " + std::to_string(v));
    }
  }
  const Eigen::VectorXd dinv_sqrt = degree_.array().rsqrt();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    const double w = e.w * dinv_sqrt[e.u] * dinv_sqrt[e.v];
    a(e.u, e.v) = w;
    a(e.v, e.u) = w;
  }
  return a;
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

Partition::Partition(std::vector<int> chi_in, int k_in)
    : chi(std::move(chi_in)), k(k_in) {
  if (k <= 0) fail("partition: k must be positive");
  for (std::size_t x = 0; x < chi.size(); ++x) {
    if (chi[x] < 0 || chi[x] >= k) {
      fail("partition: color out of range at vertex " + std::to_string(x));
    }
  }
}

std::vector<int> Partition::class_sizes() const {
  std::vector<int> sizes(k, 0);
  for (int c : chi) sizes[c]++;
  return sizes;
}

std::vector<std::vector<int>> Partition::classes() const {
  std::vector<std::vector<int>> out(k);
  for (int x = 0; x < n(); ++x) out[chi[x]].push_back(x);
  return out;
}

Eigen::MatrixXd Partition::partition_matrix() const {
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n(), k);
  for (int x = 0; x < n(); ++x) z(x, chi[x]) = 1.0;
  return z;
}

bool ModelMatrix::is_row_stochastic(double tol) const {
  if (entries.minCoeff() < -tol) return false;
  return (entries.rowwise().sum().array() - 1.0).abs().maxCoeff() <= tol;
}

bool ModelMatrix::is_zero_diagonal(double tol) const {
  return entries.diagonal().array().abs().maxCoeff() <= tol;
}

bool ModelMatrix::is_reversible(const Eigen::VectorXd& pi, double tol) const {
  for (int a = 0; a < k(); ++a) {
    for (int b = 0; b < k(); ++b) {
      if (std::abs(pi[a] * entries(a, b) - pi[b] * entries(b, a)) > tol) {
        return false;
      }
    }
  }
  return true;
}

// ---- parsing -----------------------------------------------------------

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int max_vertex = -1;
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long u, v;
    double w = 1.0;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) fail("edge list line " + std::to_string(lineno) + ": expected two vertices");
    ls >> w;
    std::string trailing;
    if (ls >> trailing) fail("edge list line " + std::to_string(lineno) + ": trailing tokens");
    if (u < 0 || v < 0) fail("edge list line " + std::to_string(lineno) + ": negative vertex id");
    if (u == v) fail("edge list line " + std::to_string(lineno) + ": self-loop");
    if (!(w > 0.0)) fail("edge list line " + std::to_string(lineno) + ": non-positive weight");
    int a = static_cast<int>(u), b = static_cast<int>(v);
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) {
      fail("edge list line " + std::to_string(lineno) + ": duplicate edge (" +
           std::to_string(a) + "," + std::to_string(b) + ")");
    }
    edges.push_back({a, b, w});
    max_vertex = std::max<int>(max_vertex, b);
  }
  return Graph(max_vertex + 1, std::move(edges));
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open graph file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list(ss.str());
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out.precision(17);
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (e.w != 1.0) out << ' ' << e.w;
    out << '\n';
  }
  return out.str();
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write graph file: " + path);
  out << format_edge_list(g);
}

Partition parse_partition(const std::string& text, int n) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<int> chi(n, -1);
  int max_color = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long long x, c;
    if (!(ls >> x)) continue;
    if (!(ls >> c)) fail("partition line " + std::to_string(lineno) + ": expected vertex and color");
    if (x < 0 || x >= n) fail("partition line " + std::to_string(lineno) + ": vertex out of range");
    if (c < 0) fail("partition line " + std::to_string(lineno) + ": negative color");
    if (chi[x] != -1) fail("partition line " + std::to_string(lineno) + ": duplicate vertex");
    chi[x] = static_cast<int>(c);
    max_color = std::max<int>(max_color, static_cast<int>(c));
  }
  for (int x = 0; x < n; ++x) {
    if (chi[x] == -1) fail("partition: vertex " + std::to_string(x) + " has no color");
  }
  return Partition(std::move(chi), max_color + 1);
}

Partition load_partition(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) fail("cannot open partition file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_partition(ss.str(), n);
}

std::string format_partition(const Partition& p) {
  std::ostringstream out;
  for (int x = 0; x < p.n(); ++x) out << x << ' ' << p.chi[x] << '\n';
  return out.str();
}

void save_partition(const Partition& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write partition file: " + path);
  out << format_partition(p);
}

// ---- operations --------------------------------------------------------

ModelMatrix model_matrix(const Eigen::MatrixXd& normalized_adj,
                         const Partition& p) {
  const int n = p.n();
  if (normalized_adj.rows() != n || normalized_adj.cols() != n) {
    fail("model_matrix: matrix size does not match partition");
  }
  const auto sizes = p.class_sizes();
  for (int a = 0; a < p.k; ++a) {
    if (sizes[a] == 0) fail("model_matrix: empty color class " + std::to_string(a));
  }
  const Eigen::MatrixXd z = p.partition_matrix();
  Eigen::MatrixXd m = z.transpose() * normalized_adj * z;
  for (int a = 0; a < p.k; ++a) m.row(a) /= static_cast<double>(sizes[a]);
  ModelMatrix out;
  out.entries = std::move(m);
  return out;
}

std::vector<int> maximal_matching_cover(const std::vector<Edge>& edges) {
  std::set<int> matched;
  std::vector<int> cover;
  for (const Edge& e : edges) {
    if (!matched.count(e.u) && !matched.count(e.v)) {
      matched.insert(e.u);
      matched.insert(e.v);
      cover.push_back(e.u);
      cover.push_back(e.v);
    }
  }
  return cover;
}

ColoringQuality coloring_quality(const Graph& g, const Partition& p,
                                 const std::optional<ModelMatrix>& target) {
  const int n = g.num_vertices();
  if (p.n() != n) fail("coloring_quality: partition size mismatch");

  std::vector<Edge> mono;
  for (const Edge& e : g.edges()) {
    if (p.chi[e.u] == p.chi[e.v]) mono.push_back(e);
  }
  const auto cover = maximal_matching_cover(mono);

  ColoringQuality q;
  q.delta_vertex_cover = n > 0 ? static_cast<double>(cover.size()) / n : 0.0;
  double cover_deg = 0.0;
  for (int v : cover) cover_deg += g.degrees()[v];
  const double total_deg = g.degrees().sum();
  q.delta_vertex_cover_volume = total_deg > 0 ? cover_deg / total_deg : 0.0;

  const Eigen::MatrixXd atil = g.normalized_adjacency();
  const ModelMatrix m = model_matrix(atil, p);
  if (target) {
    q.model_distance =
        (target->entries - m.entries).array().abs().maxCoeff();
  }

  // per_pair_variance(a,b) = E_{x ~ class a} (D_x^b - M_ab)^2
  const Eigen::MatrixXd z = p.partition_matrix();
  const Eigen::MatrixXd d = atil * z;  // d(x,b) = D_x^b
  const auto sizes = p.class_sizes();
  q.per_pair_variance = Eigen::MatrixXd::Zero(p.k, p.k);
  for (int x = 0; x < n; ++x) {
    const int a = p.chi[x];
    for (int b = 0; b < p.k; ++b) {
      const double dev = d(x, b) - m.entries(a, b);
      q.per_pair_variance(a, b) += dev * dev / sizes[a];
    }
  }
  return q;
}

double check_k_delta_coloring(const Graph& g,
                              const std::vector<std::vector<int>>& sets) {
  const int n = g.num_vertices();
  std::vector<int> owner(n, -1);
  int covered = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int v : sets[i]) {
      if (v < 0 || v >= n) fail("k-delta check: vertex out of range");
      if (owner[v] != -1) {
        fail("k-delta check: vertex " + std::to_string(v) + " in sets " +
             std::to_string(owner[v]) + " and " + std::to_string(i));
      }
      owner[v] = static_cast<int>(i);
      ++covered;
    }
  }
  for (const Edge& e : g.edges()) {
    if (owner[e.u] != -1 && owner[e.u] == owner[e.v]) {
      fail("k-delta check: set " + std::to_string(owner[e.u]) +
           " not independent, witness edge (" + std::to_string(e.u) + "," +
           std::to_string(e.v) + ")");
    }
  }
  return n > 0 ? 1.0 - static_cast<double>(covered) / n : 0.0;
}

}  // namespace excol
