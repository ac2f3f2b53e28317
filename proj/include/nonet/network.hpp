#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nonet/graph.hpp"
#include "nonet/matrix.hpp"

namespace nonet {

// Edge of the connecting graph, between the bridges of subgraphs i and j.
struct ConnectingEdge {
  std::size_t i;
  std::size_t j;
  double weight = 1.0;

  friend bool operator==(const ConnectingEdge&, const ConnectingEdge&) = default;
};

/// D connected subgraphs, one bridge node per subgraph, and weighted
/// connecting edges between bridges.
///
/// Global node ids are block-contiguous in subgraph order: subgraph k
/// occupies [offset(k), offset(k) + size(k)). Connecting edges are stored
/// canonicalized (i < j) and sorted.
class NetworkOfNetworks {
 public:
  // Validates every invariant; throws ModelError naming the violation.
  NetworkOfNetworks(std::vector<WeightedGraph> subgraphs, std::vector<NodeId> bridges,
                    std::vector<ConnectingEdge> connecting_edges);

  std::size_t subgraph_count() const { return subgraphs_.size(); }
  std::size_t node_count() const { return node_count_; }
  const std::vector<WeightedGraph>& subgraphs() const { return subgraphs_; }
  const WeightedGraph& subgraph(std::size_t k) const { return subgraphs_.at(k); }
  const std::vector<NodeId>& bridges() const { return bridges_; }
  const std::vector<ConnectingEdge>& connecting_edges() const { return connecting_edges_; }

  std::size_t offset(std::size_t k) const { return offsets_.at(k); }
  std::size_t size(std::size_t k) const { return subgraphs_.at(k).node_count(); }
  std::vector<std::size_t> sizes() const;
  std::size_t bridge_global(std::size_t k) const { return offsets_.at(k) + bridges_.at(k); }

  // The connecting graph on D nodes (node k = bridge of subgraph k).
  WeightedGraph connecting_graph() const;

  // Node strengths of the composite graph, connecting weights unscaled.
  std::vector<double> composite_strengths() const;

 private:
  std::vector<WeightedGraph> subgraphs_;
  std::vector<NodeId> bridges_;
  std::vector<ConnectingEdge> connecting_edges_;
  std::vector<std::size_t> offsets_;
  std::size_t node_count_ = 0;
};

// Connecting edges of a deterministic backbone (path, ring, complete, star)
// over D subgraphs.
std::vector<ConnectingEdge> backbone_edges(GraphKind kind, std::size_t d, double weight = 1.0);

NetworkOfNetworks assemble_non(std::vector<WeightedGraph> subgraphs, std::vector<NodeId> bridges,
                               std::vector<ConnectingEdge> connecting_edges);

// Block-diagonal Laplacian of the subgraphs (N x N).
SymmetricMatrix sub_laplacian(const NetworkOfNetworks& non);
// Laplacian of the connecting edges lifted to global ids (N x N).
SymmetricMatrix lifted_connecting_laplacian(const NetworkOfNetworks& non);
// Laplacian of the connecting graph on the bridges (D x D).
SymmetricMatrix connecting_laplacian(const NetworkOfNetworks& non);

/// L_sub + epsilon * L_con. epsilon = 0 is allowed (decoupled limit).
SymmetricMatrix supra_laplacian(const NetworkOfNetworks& non, double epsilon);

struct ConsensusParams {
  double beta = 0.0;
  double p = 0.0;
  double epsilon = 0.0;
};

struct ConsensusMatrices {
  SymmetricMatrix a;     // I - L_sub
  SymmetricMatrix b;     // beta * L_con (lifted)
  SymmetricMatrix abar;  // A - p B
};

/// Every violated consensus assumption, one message per violation: the
/// per-node intra-subgraph weight sum must stay below 1, and beta must not
/// exceed 1 / (2 Delta) with Delta the maximal composite node strength.
std::vector<std::string> validate_consensus_params(const NetworkOfNetworks& non,
                                                   const ConsensusParams& params);

// Throws ModelError listing all violations.
ConsensusMatrices consensus_matrices(const NetworkOfNetworks& non, const ConsensusParams& params);

// B_rs = beta * w * b b^T for connecting edge `edge` (N x N).
SymmetricMatrix edge_operator(const NetworkOfNetworks& non, std::size_t edge, double beta);

// Maximal composite node strength Delta.
double max_strength(const NetworkOfNetworks& non);

// 1 / (2 * max_degree + 1) over all subgraphs; keeps every intra-subgraph
// row sum below 1/2.
double default_intra_weight(const std::vector<WeightedGraph>& subgraphs);

}  // namespace nonet
