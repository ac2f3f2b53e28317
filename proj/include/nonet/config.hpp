#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include <nlohmann/json.hpp>

#include "nonet/consensus.hpp"
#include "nonet/network.hpp"
#include "nonet/spectral.hpp"

namespace nonet {

struct NonParams {
  double epsilon = 0.1;
  double p = 0.1;
  std::optional<double> beta;  // default 1 / (2 Delta + 1)
};

struct NonConfig {
  NetworkOfNetworks non;
  NonParams params;
};

/// {"subgraphs": [...], "bridges": [...], "connecting_edges": [[i, j, w], ...]
///  or "backbone": "complete", "params": {"epsilon", "p", "beta"}}
///
/// A subgraph entry is {"file": path}, {"n": n, "edges": [[u, v, w], ...]}
/// or a generator {"kind": "er", "n": 10, "edge_prob": 0.2, "weight": w,
/// "seed": s}. Relative file paths resolve against base_dir.
NonConfig parse_non_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
NonConfig load_non_config(const std::filesystem::path& path);

nlohmann::json load_json(const std::filesystem::path& path);

// beta if set, else 1 / (2 Delta + 1).
double effective_beta(const NetworkOfNetworks& non, const NonParams& params);

nlohmann::json to_json(const SpectralGapReport& r);
nlohmann::json to_json(const MeanSquareReport& r);

// Flat key=value lines, numbers in %.17g.
void write_kv(std::ostream& out, const nlohmann::json& j, const std::string& prefix = "");

std::string format_double(double v);

}  // namespace nonet
