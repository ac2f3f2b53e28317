#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nonet/graph.hpp"
#include "nonet/network.hpp"

namespace testing {

inline nonet::WeightedGraph path(std::size_t n, double w = 1.0) {
  nonet::GeneratorParams gp;
  gp.weight = w;
  return nonet::generate_graph(nonet::GraphKind::path, n, gp, 0);
}

inline nonet::WeightedGraph complete(std::size_t n, double w = 1.0) {
  nonet::GeneratorParams gp;
  gp.weight = w;
  return nonet::generate_graph(nonet::GraphKind::complete, n, gp, 0);
}

inline nonet::WeightedGraph er(std::size_t n, double q, std::uint64_t seed, double w = 1.0) {
  nonet::GeneratorParams gp;
  gp.edge_prob = q;
  gp.weight = w;
  return nonet::generate_graph(nonet::GraphKind::er, n, gp, seed);
}

inline nonet::NetworkOfNetworks pair(nonet::WeightedGraph a, nonet::WeightedGraph b,
                                     nonet::NodeId s1 = 0, nonet::NodeId s2 = 0) {
  return nonet::NetworkOfNetworks({std::move(a), std::move(b)}, {s1, s2}, {{0, 1, 1.0}});
}

// Dense eigenvalues computed straight from a matrix, ascending.
inline Eigen::VectorXd eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

// Supra-Laplacian assembled entry by entry from the raw edge lists.
inline Eigen::MatrixXd supra_by_hand(const nonet::NetworkOfNetworks& non, double eps) {
  const auto n = static_cast<Eigen::Index>(non.node_count());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  auto add = [&](Eigen::Index u, Eigen::Index v, double w) {
    l(u, u) += w;
    l(v, v) += w;
    l(u, v) -= w;
    l(v, u) -= w;
  };
  for (std::size_t k = 0; k < non.subgraph_count(); ++k)
    for (const auto& e : non.subgraph(k).edges())
      add(static_cast<Eigen::Index>(non.offset(k) + e.u),
          static_cast<Eigen::Index>(non.offset(k) + e.v), e.weight);
  for (const auto& e : non.connecting_edges())
    add(static_cast<Eigen::Index>(non.bridge_global(e.i)),
        static_cast<Eigen::Index>(non.bridge_global(e.j)), eps * e.weight);
  return l;
}

}  // namespace testing
