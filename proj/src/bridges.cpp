#include "nonet/bridges.hpp"

#include <cmath>
#include <random>

#include "nonet/errors.hpp"
#include "nonet/rng.hpp"
#include "nonet/spectral.hpp"

namespace nonet {
namespace {

double tie_scale(double a, double b) {
  return kTieTolerance * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Strictly better by more than the tie tolerance.
bool better(double challenger, double incumbent, ObjectiveKind kind) {
  const double margin = tie_scale(challenger, incumbent);
  return kind == ObjectiveKind::diffusion_gap ? challenger > incumbent + margin
                                              : challenger < incumbent - margin;
}

}  // namespace

std::optional<ObjectiveKind> parse_objective_kind(std::string_view name) {
  if (name == "diffusion_gap") return ObjectiveKind::diffusion_gap;
  if (name == "ms_rate") return ObjectiveKind::ms_rate;
  return std::nullopt;
}

std::string_view to_string(ObjectiveKind kind) {
  return kind == ObjectiveKind::diffusion_gap ? "diffusion_gap" : "ms_rate";
}

bool at_least_as_good(double a, double b, ObjectiveKind kind) { return !better(b, a, kind); }

BridgeAssignment heuristic_bridges(const std::vector<WeightedGraph>& subgraphs) {
  BridgeAssignment out;
  for (const auto& g : subgraphs) {
    const auto diag = pinv_diagonal(g);
    NodeId best = 0;
    for (NodeId v = 1; v < diag.size(); ++v) {
      if (diag[v] < diag[best] - tie_scale(diag[v], diag[best])) best = v;
    }
    out.nodes.push_back(best);
  }
  return out;
}

double evaluate_objective(const std::vector<WeightedGraph>& subgraphs,
                          const std::vector<NodeId>& bridges,
                          const std::vector<ConnectingEdge>& connecting_edges,
                          const SelectionParams& params, ObjectiveKind kind) {
  const NetworkOfNetworks non(subgraphs, bridges, connecting_edges);
  if (kind == ObjectiveKind::diffusion_gap) {
    return spectral_gap(supra_laplacian(non, params.epsilon));
  }
  return ms_spectral_radius(non, params.p, params.beta, params.mode);
}

BridgeAssignment evaluated(const std::vector<WeightedGraph>& subgraphs, std::vector<NodeId> nodes,
                           const std::vector<ConnectingEdge>& connecting_edges,
                           const SelectionParams& params, ObjectiveKind kind) {
  BridgeAssignment a;
  a.objective_value = evaluate_objective(subgraphs, nodes, connecting_edges, params, kind);
  a.nodes = std::move(nodes);
  a.objective_kind = kind;
  return a;
}

BridgeAssignment brute_force_bridges(const std::vector<WeightedGraph>& subgraphs,
                                     const std::vector<ConnectingEdge>& connecting_edges,
                                     const SelectionParams& params, ObjectiveKind kind) {
  if (subgraphs.empty()) throw ModelError("no subgraphs");
  double count = 1.0;
  for (const auto& g : subgraphs) count *= static_cast<double>(g.node_count());
  if (count > static_cast<double>(kMaxAssignments)) {
    throw ModelError("brute force over " + std::to_string(static_cast<long long>(count)) +
                     " assignments exceeds the limit of " + std::to_string(kMaxAssignments));
  }
  std::vector<NodeId> current(subgraphs.size(), 0);
  BridgeAssignment best = evaluated(subgraphs, current, connecting_edges, params, kind);
  while (true) {
    std::size_t k = subgraphs.size();
    while (k > 0) {
      --k;
      if (++current[k] < subgraphs[k].node_count()) break;
      current[k] = 0;
      if (k == 0) return best;
    }
    const double value = evaluate_objective(subgraphs, current, connecting_edges, params, kind);
    if (better(value, best.objective_value, kind)) {
      best.nodes = current;
      best.objective_value = value;
    }
  }
}

std::vector<StrategyRow> compare_strategies(const std::vector<WeightedGraph>& subgraphs,
                                            const std::vector<ConnectingEdge>& connecting_edges,
                                            const SelectionParams& params, ObjectiveKind kind,
                                            std::uint64_t seed) {
  const BridgeAssignment optimum = brute_force_bridges(subgraphs, connecting_edges, params, kind);
  const BridgeAssignment heuristic = evaluated(subgraphs, heuristic_bridges(subgraphs).nodes,
                                               connecting_edges, params, kind);
  std::mt19937_64 engine(seed);
  std::vector<NodeId> pick;
  for (const auto& g : subgraphs) pick.push_back(uniform_below(engine, g.node_count()));
  const BridgeAssignment random = evaluated(subgraphs, pick, connecting_edges, params, kind);

  auto matches = [&](const BridgeAssignment& a) {
    return std::abs(a.objective_value - optimum.objective_value) <=
           tie_scale(a.objective_value, optimum.objective_value);
  };
  return {{"heuristic", heuristic, matches(heuristic)},
          {"optimum", optimum, true},
          {"random", random, matches(random)}};
}

}  // namespace nonet
