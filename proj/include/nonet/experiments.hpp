#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "nonet/bridges.hpp"
#include "nonet/graph.hpp"

namespace nonet {

inline constexpr const char* kSweepSchema = "nonet.sweep/1";
inline constexpr const char* kSelectionSchema = "nonet.selection/1";

enum class Quantity { diffusion_gap, rho_ess, ms_rate };
enum class BridgePolicy { random, first, heuristic };

struct SweepSpec {
  std::string scenario = "custom";
  GraphKind family = GraphKind::er;
  std::optional<double> edge_prob;
  std::optional<double> weight;  // default 1 for diffusion, 1/(2 maxdeg + 1) otherwise
  std::vector<GraphKind> backbones{GraphKind::complete};
  std::vector<std::size_t> size_grid;
  std::vector<std::size_t> d_grid;
  std::vector<double> param_grid;  // epsilon, or p for the consensus quantities
  std::optional<double> beta;      // default 1 / (2 Delta + 1) per instance
  Quantity quantity = Quantity::diffusion_gap;
  BridgePolicy bridges = BridgePolicy::random;
  std::size_t trials = 1;  // instances averaged per grid point
  std::uint64_t seed = 1;
};

struct SweepRow {
  GraphKind backbone;
  std::size_t d;
  std::size_t subgraph_size;
  double param;
  double exact;
  double spa1;
  double spa2;
  double rel_err_spa1;
  double rel_err_spa2;
};

// Presets for fig1, fig2, fig3; "custom" gives an empty spec.
SweepSpec sweep_preset(const std::string& scenario);
// Applies the keys present in j on top of base.
SweepSpec sweep_spec_from_json(const nlohmann::json& j, SweepSpec base);
nlohmann::json to_json(const SweepSpec& spec);
void validate_sweep_spec(const SweepSpec& spec);

// The instance used at one grid point and trial. Independent of the
// parameter grid, so every epsilon (or p) sees the same network.
NetworkOfNetworks sweep_instance(const SweepSpec& spec, std::size_t backbone_index,
                                 std::size_t d_index, std::size_t size_index, std::size_t trial);

// Rows in grid order: backbone, D, size, param.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

struct SelectionSpec {
  std::string scenario = "fig4";
  std::size_t instances = 20;
  std::size_t min_size = 8;
  std::size_t max_size = 12;
  double edge_prob = 0.2;
  double intra_weight = 1.0;
  ObjectiveKind objective = ObjectiveKind::diffusion_gap;
  SelectionParams params;
  std::uint64_t seed = 1;
};

struct SelectionInstance {
  std::vector<WeightedGraph> subgraphs;
  std::vector<ConnectingEdge> connecting_edges;
  std::vector<StrategyRow> rows;
};

SelectionSpec selection_preset(const std::string& scenario);
SelectionSpec selection_spec_from_json(const nlohmann::json& j, SelectionSpec base);
nlohmann::json to_json(const SelectionSpec& spec);

// Two seeded ER subgraphs of uniformly drawn sizes joined by one edge.
SelectionInstance selection_instance(const SelectionSpec& spec, std::size_t index);
std::vector<SelectionInstance> run_selection(const SelectionSpec& spec);
void write_selection_csv(std::ostream& out, const SelectionSpec& spec,
                         const std::vector<SelectionInstance>& instances);

std::optional<Quantity> parse_quantity(std::string_view name);
std::string_view to_string(Quantity q);

/// fn(0..n-1) on a pool of threads; results come back in index order. The
/// first exception thrown by any task is rethrown.
template <typename Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        slots[k].emplace(fn(k));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace nonet
