#include "nonet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <queue>
#include <random>
#include <sstream>
#include <string>

#include "nonet/errors.hpp"
#include "nonet/rng.hpp"

namespace nonet {

WeightedGraph::WeightedGraph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ == 0) throw ModelError("graph must have at least one node");
  for (Edge& e : edges_) {
    if (e.u >= node_count_ || e.v >= node_count_) {
      throw ModelError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") references a node outside [0, " + std::to_string(node_count_) + ")");
    }
    if (e.u == e.v) throw ModelError("self-loop at node " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ModelError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") has non-positive weight");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v) {
      throw ModelError("duplicate edge (" + std::to_string(edges_[k].u) + "," +
                       std::to_string(edges_[k].v) + ")");
    }
  }
}

std::vector<double> WeightedGraph::strengths() const {
  std::vector<double> s(node_count_, 0.0);
  for (const Edge& e : edges_) {
    s[e.u] += e.weight;
    s[e.v] += e.weight;
  }
  return s;
}

std::vector<std::size_t> WeightedGraph::degrees() const {
  std::vector<std::size_t> d(node_count_, 0);
  for (const Edge& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

std::size_t WeightedGraph::max_degree() const {
  const auto d = degrees();
  return *std::max_element(d.begin(), d.end());
}

std::vector<std::vector<NodeId>> WeightedGraph::adjacency() const {
  std::vector<std::vector<NodeId>> adj(node_count_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

WeightedGraph WeightedGraph::with_uniform_weight(double weight) const {
  std::vector<Edge> edges = edges_;
  for (Edge& e : edges) e.weight = weight;
  return WeightedGraph(node_count_, std::move(edges));
}

std::optional<GraphKind> parse_graph_kind(std::string_view name) {
  if (name == "er") return GraphKind::er;
  if (name == "path") return GraphKind::path;
  if (name == "ring") return GraphKind::ring;
  if (name == "complete") return GraphKind::complete;
  if (name == "star") return GraphKind::star;
  return std::nullopt;
}

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::er: return "er";
    case GraphKind::path: return "path";
    case GraphKind::ring: return "ring";
    case GraphKind::complete: return "complete";
    case GraphKind::star: return "star";
  }
  return "?";
}

WeightedGraph generate_graph(GraphKind kind, std::size_t n, const GeneratorParams& params,
                             std::uint64_t seed) {
  if (n == 0) throw ModelError("graph size must be positive");
  if (!(params.weight > 0.0)) throw ModelError("edge weight must be positive");
  if (kind == GraphKind::er && !params.edge_prob) {
    throw ModelError("er graphs require edge_prob");
  }
  if (kind != GraphKind::er && params.edge_prob) {
    throw ModelError("edge_prob is only valid for er graphs");
  }
  const double w = params.weight;
  std::vector<Edge> edges;
  switch (kind) {
    case GraphKind::path:
      for (NodeId k = 0; k + 1 < n; ++k) edges.push_back({k, k + 1, w});
      break;
    case GraphKind::ring:
      if (n < 3) throw ModelError("ring graphs need n >= 3");
      for (NodeId k = 0; k < n; ++k) edges.push_back({k, (k + 1) % n, w});
      break;
    case GraphKind::complete:
      for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b) edges.push_back({a, b, w});
      break;
    case GraphKind::star:
      for (NodeId k = 1; k < n; ++k) edges.push_back({0, k, w});
      break;
    case GraphKind::er: {
      const double prob = *params.edge_prob;
      if (!(prob >= 0.0 && prob <= 1.0)) throw ModelError("edge_prob must lie in [0, 1]");
      std::mt19937_64 engine(seed);
      for (int attempt = 0; attempt < kMaxConnectAttempts; ++attempt) {
        edges.clear();
        for (NodeId a = 0; a < n; ++a)
          for (NodeId b = a + 1; b < n; ++b)
            if (uniform01(engine) < prob) edges.push_back({a, b, w});
        WeightedGraph g(n, edges);
        if (is_connected(g)) return g;
      }
      throw ModelError("er(" + std::to_string(n) + ", " + std::to_string(prob) +
                       ") not connected after " + std::to_string(kMaxConnectAttempts) +
                       " attempts");
    }
  }
  return WeightedGraph(n, std::move(edges));
}

SymmetricMatrix laplacian(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    l(u, u) += e.weight;
    l(v, v) += e.weight;
    l(u, v) -= e.weight;
    l(v, u) -= e.weight;
  }
  return SymmetricMatrix(std::move(l));
}

SymmetricMatrix pseudoinverse(const SymmetricMatrix& psd, double zero_tol) {
  const auto n = psd.dim();
  const SymmetricEigen eig = eigen_decompose(psd);
  const double scale = spectral_scale(eig.values);
  if (scale == 0.0) return SymmetricMatrix::zero(n);
  const double cut = zero_tol * scale;
  if (eig.values(0) < -cut) {
    std::ostringstream msg;
    msg << "pseudoinverse: matrix is not positive semidefinite (eigenvalue "
        << eig.values(0) << ")";
    throw ModelError(msg.str());
  }
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig.values(k) > cut) inv(k) = 1.0 / eig.values(k);
  }
  return SymmetricMatrix(eig.vectors * inv.asDiagonal() * eig.vectors.transpose());
}

std::vector<double> pinv_diagonal(const WeightedGraph& g) {
  if (!is_connected(g)) throw ModelError("pinv_diagonal: graph is disconnected");
  const SymmetricMatrix pinv = pseudoinverse(laplacian(g));
  std::vector<double> d(g.node_count());
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = pinv(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  }
  return d;
}

bool is_connected(const WeightedGraph& g) {
  const auto adj = g.adjacency();
  std::vector<bool> seen(g.node_count(), false);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == g.node_count();
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  const auto old_precision = out.precision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  out.precision(old_precision);
}

WeightedGraph read_graph(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw ModelError("graph file: expected header \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    Edge e{};
    std::string weight;
    if (!(in >> e.u >> e.v >> weight)) {
      throw ModelError("graph file: expected " + std::to_string(m) + " edge lines, got " +
                       std::to_string(k));
    }
    try {
      std::size_t used = 0;
      e.weight = std::stod(weight, &used);
      if (used != weight.size()) throw std::invalid_argument(weight);
    } catch (const std::exception&) {
      throw ModelError("graph file: bad weight '" + weight + "'");
    }
    edges.push_back(e);
  }
  return WeightedGraph(n, std::move(edges));
}

void save_graph(const std::filesystem::path& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_graph(out, g);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

WeightedGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_graph(in);
}

}  // namespace nonet
