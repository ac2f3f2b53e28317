#include "nonet/config.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "nonet/errors.hpp"

namespace nonet {
namespace {

using nlohmann::json;

template <typename T>
T field(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw ModelError(std::string(where) + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ModelError(std::string(where) + ": bad \"" + key + "\": " + e.what());
  }
}

WeightedGraph parse_subgraph(const json& j, const std::filesystem::path& base_dir,
                             std::size_t index) {
  const std::string where = "subgraph " + std::to_string(index);
  if (!j.is_object()) throw ModelError(where + ": expected an object");
  if (j.contains("file")) {
    std::filesystem::path path = field<std::string>(j, "file", where.c_str());
    if (path.is_relative()) path = base_dir / path;
    return load_graph(path);
  }
  const auto n = field<std::size_t>(j, "n", where.c_str());
  if (j.contains("edges")) {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        throw ModelError(where + ": edges must be [u, v] or [u, v, w]");
      }
      edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>(),
                       e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    return WeightedGraph(n, std::move(edges));
  }
  const auto kind_name = field<std::string>(j, "kind", where.c_str());
  const auto kind = parse_graph_kind(kind_name);
  if (!kind) throw ModelError(where + ": unknown graph kind \"" + kind_name + "\"");
  GeneratorParams params;
  if (j.contains("edge_prob")) params.edge_prob = field<double>(j, "edge_prob", where.c_str());
  if (j.contains("weight")) params.weight = field<double>(j, "weight", where.c_str());
  const auto seed = j.contains("seed") ? field<std::uint64_t>(j, "seed", where.c_str()) : 0;
  return generate_graph(*kind, n, params, seed);
}

}  // namespace

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
}

NonConfig parse_non_config(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ModelError("config: expected a JSON object");
  if (!j.contains("subgraphs") || !j.at("subgraphs").is_array()) {
    throw ModelError("config: missing \"subgraphs\" array");
  }
  std::vector<WeightedGraph> subgraphs;
  for (std::size_t k = 0; k < j.at("subgraphs").size(); ++k) {
    subgraphs.push_back(parse_subgraph(j.at("subgraphs")[k], base_dir, k));
  }
  std::vector<NodeId> bridges = j.contains("bridges")
                                    ? field<std::vector<NodeId>>(j, "bridges", "config")
                                    : std::vector<NodeId>(subgraphs.size(), 0);
  std::vector<ConnectingEdge> edges;
  if (j.contains("connecting_edges")) {
    for (const auto& e : j.at("connecting_edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        throw ModelError("config: connecting edges must be [i, j] or [i, j, w]");
      }
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                       e.size() == 3 ? e[2].get<double>() : 1.0});
    }
  } else if (j.contains("backbone")) {
    const auto name = field<std::string>(j, "backbone", "config");
    const auto kind = parse_graph_kind(name);
    if (!kind) throw ModelError("config: unknown backbone \"" + name + "\"");
    edges = backbone_edges(*kind, subgraphs.size());
  } else {
    throw ModelError("config: need \"connecting_edges\" or \"backbone\"");
  }
  NonParams params;
  if (j.contains("params")) {
    const json& pj = j.at("params");
    if (pj.contains("epsilon")) params.epsilon = field<double>(pj, "epsilon", "params");
    if (pj.contains("p")) params.p = field<double>(pj, "p", "params");
    if (pj.contains("beta")) params.beta = field<double>(pj, "beta", "params");
  }
  return {NetworkOfNetworks(std::move(subgraphs), std::move(bridges), std::move(edges)), params};
}

NonConfig load_non_config(const std::filesystem::path& path) {
  return parse_non_config(load_json(path), path.parent_path());
}

double effective_beta(const NetworkOfNetworks& non, const NonParams& params) {
  if (params.beta) return *params.beta;
  return 1.0 / (2.0 * max_strength(non) + 1.0);
}

json to_json(const SpectralGapReport& r) {
  return {{"exact_gap", r.exact_gap},
          {"spa1", r.spa1},
          {"spa2", r.spa2},
          {"m_hat_eigenvalues", r.m_hat_eigenvalues},
          {"m_hat_fiedler", r.m_hat_fiedler},
          {"s_hat_diag", r.s_hat_diag}};
}

json to_json(const MeanSquareReport& r) {
  json j = {{"mode", std::string(to_string(r.mode))},
            {"rho_exact", r.rho_exact},
            {"spa1", r.spa1}};
  j["rho_oracle"] = r.rho_oracle ? json(*r.rho_oracle) : json(nullptr);
  j["spa2"] = r.spa2 ? json(*r.spa2) : json(nullptr);
  j["closed_form"] = r.closed_form ? json(*r.closed_form) : json(nullptr);
  json rows = json::array();
  for (const auto& t : r.second_order) {
    rows.push_back({{"i", t.i}, {"j", t.j}, {"value", t.value}, {"lower", t.lower},
                    {"upper", t.upper}});
  }
  j["second_order"] = rows;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_kv(std::ostream& out, const json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      write_kv(out, value, prefix.empty() ? key : prefix + "." + key);
    }
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) {
      write_kv(out, j[k], prefix + "." + std::to_string(k));
    }
  } else if (j.is_number_float()) {
    out << prefix << '=' << format_double(j.get<double>()) << '\n';
  } else if (j.is_string()) {
    out << prefix << '=' << j.get<std::string>() << '\n';
  } else {
    out << prefix << '=' << j.dump() << '\n';
  }
}

}  // namespace nonet
