#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonet/consensus.hpp"
#include "nonet/network.hpp"

namespace nonet {

// diffusion_gap is maximized, ms_rate minimized.
enum class ObjectiveKind { diffusion_gap, ms_rate };

std::optional<ObjectiveKind> parse_objective_kind(std::string_view name);
std::string_view to_string(ObjectiveKind kind);

struct BridgeAssignment {
  std::vector<NodeId> nodes;
  ObjectiveKind objective_kind = ObjectiveKind::diffusion_gap;
  double objective_value = 0.0;
};

struct SelectionParams {
  double epsilon = 0.1;  // diffusion_gap
  double p = 0.1;        // ms_rate
  double beta = 1.0 / 21.0;
  ActivationMode mode = ActivationMode::joint;
};

inline constexpr double kTieTolerance = 1e-12;
inline constexpr std::size_t kMaxAssignments = 1000000;

/// Per subgraph, the node with the smallest diagonal entry of the Laplacian
/// pseudoinverse (maximal information centrality). Ties go to the smaller id.
/// objective_value is left at 0.
BridgeAssignment heuristic_bridges(const std::vector<WeightedGraph>& subgraphs);

double evaluate_objective(const std::vector<WeightedGraph>& subgraphs,
                          const std::vector<NodeId>& bridges,
                          const std::vector<ConnectingEdge>& connecting_edges,
                          const SelectionParams& params, ObjectiveKind kind);

// Fills in objective_value for the given nodes.
BridgeAssignment evaluated(const std::vector<WeightedGraph>& subgraphs, std::vector<NodeId> nodes,
                           const std::vector<ConnectingEdge>& connecting_edges,
                           const SelectionParams& params, ObjectiveKind kind);

/// Exhaustive search over all prod N_k assignments in lexicographic order. A
/// later assignment replaces the incumbent only if it is better by more than
/// kTieTolerance (relative), so ties keep the lexicographically first.
BridgeAssignment brute_force_bridges(const std::vector<WeightedGraph>& subgraphs,
                                     const std::vector<ConnectingEdge>& connecting_edges,
                                     const SelectionParams& params, ObjectiveKind kind);

struct StrategyRow {
  std::string strategy;  // heuristic, optimum, random
  BridgeAssignment assignment;
  bool matches_optimum = false;
};

std::vector<StrategyRow> compare_strategies(const std::vector<WeightedGraph>& subgraphs,
                                            const std::vector<ConnectingEdge>& connecting_edges,
                                            const SelectionParams& params, ObjectiveKind kind,
                                            std::uint64_t seed);

// True when a is at least as good as b for the objective, up to kTieTolerance.
bool at_least_as_good(double a, double b, ObjectiveKind kind);

}  // namespace nonet
