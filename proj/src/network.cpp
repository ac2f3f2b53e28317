#include "nonet/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nonet/errors.hpp"

namespace nonet {

NetworkOfNetworks::NetworkOfNetworks(std::vector<WeightedGraph> subgraphs,
                                     std::vector<NodeId> bridges,
                                     std::vector<ConnectingEdge> connecting_edges)
    : subgraphs_(std::move(subgraphs)),
      bridges_(std::move(bridges)),
      connecting_edges_(std::move(connecting_edges)) {
  const std::size_t d = subgraphs_.size();
  if (d < 2) throw ModelError("a network of networks needs at least two subgraphs");
  if (bridges_.size() != d) {
    throw ModelError("expected " + std::to_string(d) + " bridge nodes, got " +
                     std::to_string(bridges_.size()));
  }
  offsets_.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    offsets_[k] = node_count_;
    node_count_ += subgraphs_[k].node_count();
    if (!is_connected(subgraphs_[k])) {
      throw ModelError("subgraph " + std::to_string(k) + " is disconnected");
    }
    if (bridges_[k] >= subgraphs_[k].node_count()) {
      throw ModelError("bridge " + std::to_string(bridges_[k]) + " out of range for subgraph " +
                       std::to_string(k));
    }
  }
  for (ConnectingEdge& e : connecting_edges_) {
    if (e.i >= d || e.j >= d) throw ModelError("connecting edge references unknown subgraph");
    if (e.i == e.j) {
      throw ModelError("connecting edge joins subgraph " + std::to_string(e.i) + " to itself");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ModelError("connecting edge weight must be positive");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(connecting_edges_.begin(), connecting_edges_.end(),
            [](const ConnectingEdge& a, const ConnectingEdge& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  for (std::size_t k = 1; k < connecting_edges_.size(); ++k) {
    if (connecting_edges_[k].i == connecting_edges_[k - 1].i &&
        connecting_edges_[k].j == connecting_edges_[k - 1].j) {
      throw ModelError("duplicate connecting edge (" + std::to_string(connecting_edges_[k].i) +
                       "," + std::to_string(connecting_edges_[k].j) + ")");
    }
  }
  if (!is_connected(connecting_graph())) throw ModelError("connecting graph is disconnected");
}

NetworkOfNetworks assemble_non(std::vector<WeightedGraph> subgraphs, std::vector<NodeId> bridges,
                               std::vector<ConnectingEdge> connecting_edges) {
  return NetworkOfNetworks(std::move(subgraphs), std::move(bridges), std::move(connecting_edges));
}

std::vector<ConnectingEdge> backbone_edges(GraphKind kind, std::size_t d, double weight) {
  if (kind == GraphKind::er) throw ModelError("backbone must be deterministic (not er)");
  GeneratorParams params;
  params.weight = weight;
  std::vector<ConnectingEdge> out;
  const WeightedGraph g = generate_graph(kind, d, params, 0);
  for (const Edge& e : g.edges()) out.push_back({e.u, e.v, e.weight});
  return out;
}

std::vector<std::size_t> NetworkOfNetworks::sizes() const {
  std::vector<std::size_t> s;
  s.reserve(subgraphs_.size());
  for (const auto& g : subgraphs_) s.push_back(g.node_count());
  return s;
}

WeightedGraph NetworkOfNetworks::connecting_graph() const {
  std::vector<Edge> edges;
  edges.reserve(connecting_edges_.size());
  for (const auto& e : connecting_edges_) edges.push_back({e.i, e.j, e.weight});
  return WeightedGraph(subgraphs_.size(), std::move(edges));
}

std::vector<double> NetworkOfNetworks::composite_strengths() const {
  std::vector<double> s(node_count_, 0.0);
  for (std::size_t k = 0; k < subgraphs_.size(); ++k) {
    const auto local = subgraphs_[k].strengths();
    std::copy(local.begin(), local.end(), s.begin() + static_cast<std::ptrdiff_t>(offsets_[k]));
  }
  for (const auto& e : connecting_edges_) {
    s[bridge_global(e.i)] += e.weight;
    s[bridge_global(e.j)] += e.weight;
  }
  return s;
}

SymmetricMatrix sub_laplacian(const NetworkOfNetworks& non) {
  const auto n = static_cast<Eigen::Index>(non.node_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < non.subgraph_count(); ++k) {
    const auto off = static_cast<Eigen::Index>(non.offset(k));
    const auto sz = static_cast<Eigen::Index>(non.size(k));
    l.block(off, off, sz, sz) = laplacian(non.subgraph(k)).matrix();
  }
  return SymmetricMatrix(std::move(l));
}

SymmetricMatrix lifted_connecting_laplacian(const NetworkOfNetworks& non) {
  const auto n = static_cast<Eigen::Index>(non.node_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : non.connecting_edges()) {
    const auto r = static_cast<Eigen::Index>(non.bridge_global(e.i));
    const auto s = static_cast<Eigen::Index>(non.bridge_global(e.j));
    l(r, r) += e.weight;
    l(s, s) += e.weight;
    l(r, s) -= e.weight;
    l(s, r) -= e.weight;
  }
  return SymmetricMatrix(std::move(l));
}

SymmetricMatrix connecting_laplacian(const NetworkOfNetworks& non) {
  return laplacian(non.connecting_graph());
}

SymmetricMatrix supra_laplacian(const NetworkOfNetworks& non, double epsilon) {
  if (!(epsilon >= 0.0)) throw ModelError("epsilon must be non-negative");
  return SymmetricMatrix(sub_laplacian(non).matrix() +
                         epsilon * lifted_connecting_laplacian(non).matrix());
}

double max_strength(const NetworkOfNetworks& non) {
  const auto s = non.composite_strengths();
  return *std::max_element(s.begin(), s.end());
}

std::vector<std::string> validate_consensus_params(const NetworkOfNetworks& non,
                                                   const ConsensusParams& params) {
  std::vector<std::string> violations;
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    violations.push_back("activation probability p=" + std::to_string(params.p) +
                         " outside [0, 1]");
  }
  if (!(params.beta > 0.0)) violations.push_back("beta must be positive");
  for (std::size_t k = 0; k < non.subgraph_count(); ++k) {
    const auto strengths = non.subgraph(k).strengths();
    for (std::size_t r = 0; r < strengths.size(); ++r) {
      if (!(strengths[r] < 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "subgraph " << k << " node " << r << ": intra-subgraph weight sum "
            << strengths[r] << " is not < 1";
        violations.push_back(msg.str());
      }
    }
  }
  const double delta = max_strength(non);
  if (params.beta > 1.0 / (2.0 * delta)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "beta=" << params.beta << " exceeds 1/(2*Delta)=" << 1.0 / (2.0 * delta)
        << " with Delta=" << delta;
    violations.push_back(msg.str());
  }
  return violations;
}

ConsensusMatrices consensus_matrices(const NetworkOfNetworks& non, const ConsensusParams& params) {
  const auto violations = validate_consensus_params(non, params);
  if (!violations.empty()) {
    std::string msg = "invalid consensus parameters:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ModelError(msg);
  }
  const auto n = static_cast<Eigen::Index>(non.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - sub_laplacian(non).matrix();
  Eigen::MatrixXd b = params.beta * lifted_connecting_laplacian(non).matrix();
  Eigen::MatrixXd abar = a - params.p * b;
  return {SymmetricMatrix(std::move(a)), SymmetricMatrix(std::move(b)),
          SymmetricMatrix(std::move(abar))};
}

SymmetricMatrix edge_operator(const NetworkOfNetworks& non, std::size_t edge, double beta) {
  const auto& e = non.connecting_edges().at(edge);
  const auto n = static_cast<Eigen::Index>(non.node_count());
  const auto r = static_cast<Eigen::Index>(non.bridge_global(e.i));
  const auto s = static_cast<Eigen::Index>(non.bridge_global(e.j));
  const double c = beta * e.weight;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(r, r) = c;
  m(s, s) = c;
  m(r, s) = -c;
  m(s, r) = -c;
  return SymmetricMatrix(std::move(m));
}

double default_intra_weight(const std::vector<WeightedGraph>& subgraphs) {
  std::size_t max_degree = 0;
  for (const auto& g : subgraphs) max_degree = std::max(max_degree, g.max_degree());
  return 1.0 / (2.0 * static_cast<double>(max_degree) + 1.0);
}

}  // namespace nonet
