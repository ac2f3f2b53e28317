#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "nonet/matrix.hpp"

namespace nonet {

using NodeId = std::size_t;

struct Edge {
  NodeId u;
  NodeId v;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph on nodes 0..n-1.
///
/// Edges are canonicalized to u < v and sorted lexicographically, so two
/// graphs with the same edge set compare equal regardless of input order.
/// Self-loops, duplicate pairs, out-of-range ids and non-positive weights
/// are rejected with ModelError.
class WeightedGraph {
 public:
  WeightedGraph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Sum of incident edge weights per node.
  std::vector<double> strengths() const;
  std::vector<std::size_t> degrees() const;
  std::size_t max_degree() const;
  std::vector<std::vector<NodeId>> adjacency() const;

  // Same topology with every edge weight replaced by `weight`.
  WeightedGraph with_uniform_weight(double weight) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
};

enum class GraphKind { er, path, ring, complete, star };

std::optional<GraphKind> parse_graph_kind(std::string_view name);
std::string_view to_string(GraphKind kind);

struct GeneratorParams {
  std::optional<double> edge_prob;  // required for er, rejected otherwise
  double weight = 1.0;
};

inline constexpr int kMaxConnectAttempts = 1000;

/// Generates a graph of the requested family with uniform edge weights.
/// Erdős–Rényi graphs are resampled from a single seeded stream until
/// connected; ModelError after kMaxConnectAttempts failures. Ring needs
/// n >= 3. Star is centered at node 0.
WeightedGraph generate_graph(GraphKind kind, std::size_t n, const GeneratorParams& params,
                             std::uint64_t seed);

SymmetricMatrix laplacian(const WeightedGraph& g);

// Relative cut below which eigenvalues are treated as zero.
inline constexpr double kZeroEigenTolerance = 1e-10;

/// Moore–Penrose pseudoinverse of a symmetric PSD matrix via its
/// eigendecomposition. Eigenvalues below zero_tol * lambda_max are treated
/// as exact zeros; eigenvalues below -zero_tol * lambda_max raise ModelError.
SymmetricMatrix pseudoinverse(const SymmetricMatrix& psd, double zero_tol = kZeroEigenTolerance);

/// diag(L^+) for L = laplacian(g). ModelError if g is disconnected.
std::vector<double> pinv_diagonal(const WeightedGraph& g);

bool is_connected(const WeightedGraph& g);

// Text format: "n m", then m lines "u v w". Weights are written with 17
// significant digits so that a write/read cycle is bit-exact.
void write_graph(std::ostream& out, const WeightedGraph& g);
WeightedGraph read_graph(std::istream& in);
void save_graph(const std::filesystem::path& path, const WeightedGraph& g);
WeightedGraph load_graph(const std::filesystem::path& path);

}  // namespace nonet
