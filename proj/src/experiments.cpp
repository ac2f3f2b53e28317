#include "nonet/experiments.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "nonet/config.hpp"
#include "nonet/errors.hpp"
#include "nonet/rng.hpp"
#include "nonet/spectral.hpp"

namespace nonet {
namespace {

using nlohmann::json;

std::vector<std::size_t> range_step(std::size_t lo, std::size_t hi, std::size_t step) {
  std::vector<std::size_t> v;
  for (std::size_t x = lo; x <= hi; x += step) v.push_back(x);
  return v;
}

GraphKind kind_from(const json& j) {
  const auto name = j.get<std::string>();
  const auto kind = parse_graph_kind(name);
  if (!kind) throw ModelError("unknown graph kind \"" + name + "\"");
  return *kind;
}

std::string_view to_string(BridgePolicy b) {
  switch (b) {
    case BridgePolicy::random: return "random";
    case BridgePolicy::first: return "first";
    case BridgePolicy::heuristic: return "heuristic";
  }
  return "?";
}

BridgePolicy policy_from(const std::string& name) {
  if (name == "random") return BridgePolicy::random;
  if (name == "first") return BridgePolicy::first;
  if (name == "heuristic") return BridgePolicy::heuristic;
  throw ModelError("unknown bridge policy \"" + name + "\"");
}

struct Triple {
  double exact;
  double spa1;
  double spa2;
};

// For the consensus quantities the relative errors are taken on the decay
// rate 1 - rho; rho itself sits next to 1.
Triple evaluate(const NetworkOfNetworks& non, const SweepSpec& spec, double param) {
  switch (spec.quantity) {
    case Quantity::diffusion_gap:
      return {spectral_gap(supra_laplacian(non, param)), spa1_gap(non, param),
              spa2_gap(non, param)};
    case Quantity::rho_ess: {
      const double beta = spec.beta ? *spec.beta : 1.0 / (2.0 * max_strength(non) + 1.0);
      const ConsensusMatrices cm = consensus_matrices(non, {beta, param, 0.0});
      return {rho_ess(cm.abar), rho_ess_spa(non, param, beta, 1), rho_ess_spa(non, param, beta, 2)};
    }
    case Quantity::ms_rate: {
      const double beta = spec.beta ? *spec.beta : 1.0 / (2.0 * max_strength(non) + 1.0);
      return {ms_spectral_radius(non, param, beta, ActivationMode::joint),
              ms_spa1(non, param, beta), ms_spa2(non, param, beta)};
    }
  }
  return {};
}

double rel_err(double approx, double exact, Quantity q) {
  if (q == Quantity::diffusion_gap) return std::abs(approx - exact) / std::abs(exact);
  return std::abs(approx - exact) / std::abs(1.0 - exact);
}

}  // namespace

std::optional<Quantity> parse_quantity(std::string_view name) {
  if (name == "diffusion_gap") return Quantity::diffusion_gap;
  if (name == "rho_ess") return Quantity::rho_ess;
  if (name == "ms_rate") return Quantity::ms_rate;
  return std::nullopt;
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::diffusion_gap: return "diffusion_gap";
    case Quantity::rho_ess: return "rho_ess";
    case Quantity::ms_rate: return "ms_rate";
  }
  return "?";
}

SweepSpec sweep_preset(const std::string& scenario) {
  SweepSpec s;
  s.scenario = scenario;
  if (scenario == "custom") return s;
  s.size_grid = range_step(5, 50, 5);
  s.d_grid = {2, 4, 8};
  s.param_grid = {0.001, 0.01, 0.1};
  if (scenario == "fig1") {
    s.edge_prob = 0.6;
  } else if (scenario == "fig2") {
    s.family = GraphKind::path;
    s.bridges = BridgePolicy::first;
  } else if (scenario == "fig3") {
    s.edge_prob = 0.6;
    s.size_grid = {10};
    s.d_grid = range_step(3, 12, 1);
    s.param_grid = {0.01};
    s.backbones = {GraphKind::complete, GraphKind::ring};
  } else {
    throw ModelError("unknown sweep scenario \"" + scenario + "\"");
  }
  return s;
}

namespace {

// null clears an optional field.
std::optional<double> optional_double(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

SweepSpec sweep_spec_from_json(const json& j, SweepSpec s) {
  try {
    if (j.contains("scenario")) s.scenario = j.at("scenario").get<std::string>();
    if (j.contains("family")) s.family = kind_from(j.at("family"));
    if (j.contains("edge_prob")) s.edge_prob = optional_double(j.at("edge_prob"));
    if (j.contains("weight")) s.weight = optional_double(j.at("weight"));
    if (j.contains("backbones")) {
      s.backbones.clear();
      for (const auto& b : j.at("backbones")) s.backbones.push_back(kind_from(b));
    }
    if (j.contains("size_grid")) s.size_grid = j.at("size_grid").get<std::vector<std::size_t>>();
    if (j.contains("d_grid")) s.d_grid = j.at("d_grid").get<std::vector<std::size_t>>();
    if (j.contains("param_grid")) s.param_grid = j.at("param_grid").get<std::vector<double>>();
    if (j.contains("beta")) s.beta = optional_double(j.at("beta"));
    if (j.contains("quantity")) {
      const auto q = parse_quantity(j.at("quantity").get<std::string>());
      if (!q) throw ModelError("unknown quantity " + j.at("quantity").dump());
      s.quantity = *q;
    }
    if (j.contains("bridges")) s.bridges = policy_from(j.at("bridges").get<std::string>());
    if (j.contains("trials")) s.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ModelError(std::string("sweep config: ") + e.what());
  }
  return s;
}

json to_json(const SweepSpec& s) {
  json backbones = json::array();
  for (auto b : s.backbones) backbones.push_back(std::string(to_string(b)));
  json j = {{"scenario", s.scenario},
            {"family", std::string(to_string(s.family))},
            {"backbones", backbones},
            {"size_grid", s.size_grid},
            {"d_grid", s.d_grid},
            {"param_grid", s.param_grid},
            {"quantity", std::string(to_string(s.quantity))},
            {"bridges", std::string(to_string(s.bridges))},
            {"trials", s.trials},
            {"seed", s.seed}};
  j["edge_prob"] = s.edge_prob ? json(*s.edge_prob) : json(nullptr);
  j["weight"] = s.weight ? json(*s.weight) : json(nullptr);
  j["beta"] = s.beta ? json(*s.beta) : json(nullptr);
  return j;
}

void validate_sweep_spec(const SweepSpec& s) {
  if (s.size_grid.empty() || s.d_grid.empty() || s.param_grid.empty() || s.backbones.empty()) {
    throw ModelError("sweep grids must be nonempty");
  }
  if (s.trials == 0) throw ModelError("trials must be >= 1");
  for (auto n : s.size_grid)
    if (n == 0) throw ModelError("subgraph sizes must be positive");
  for (auto d : s.d_grid)
    if (d < 2) throw ModelError("D must be >= 2");
  for (auto b : s.backbones) {
    if (b == GraphKind::er) throw ModelError("backbone must be path, ring, complete or star");
    if (b == GraphKind::ring)
      for (auto d : s.d_grid)
        if (d < 3) throw ModelError("ring backbone needs D >= 3");
  }
  for (double x : s.param_grid) {
    if (!(x > 0.0)) throw ModelError("epsilon / p values must be positive");
    if (s.quantity != Quantity::diffusion_gap && x > 1.0) throw ModelError("p must be <= 1");
  }
  if (s.family == GraphKind::er && !s.edge_prob) throw ModelError("er family needs edge_prob");
}

NetworkOfNetworks sweep_instance(const SweepSpec& spec, std::size_t bi, std::size_t di,
                                 std::size_t si, std::size_t trial) {
  const std::size_t d = spec.d_grid.at(di);
  const std::size_t n = spec.size_grid.at(si);
  const std::uint64_t inst = derive_seed(spec.seed, {hash_name(spec.scenario), bi, di, si, trial});
  GeneratorParams gp;
  if (spec.family == GraphKind::er) gp.edge_prob = spec.edge_prob;
  std::vector<WeightedGraph> subgraphs;
  for (std::size_t k = 0; k < d; ++k) {
    subgraphs.push_back(generate_graph(spec.family, n, gp, derive_seed(inst, {k})));
  }
  double weight = 1.0;
  if (spec.weight) {
    weight = *spec.weight;
  } else if (spec.quantity != Quantity::diffusion_gap) {
    weight = default_intra_weight(subgraphs);
  }
  if (weight != 1.0)
    for (auto& g : subgraphs) g = g.with_uniform_weight(weight);

  std::vector<NodeId> bridges(d, 0);
  if (spec.bridges == BridgePolicy::random) {
    std::mt19937_64 engine(derive_seed(inst, {hash_name("bridges")}));
    for (auto& b : bridges) b = uniform_below(engine, n);
  } else if (spec.bridges == BridgePolicy::heuristic) {
    bridges = heuristic_bridges(subgraphs).nodes;
  }
  return NetworkOfNetworks(std::move(subgraphs), std::move(bridges),
                           backbone_edges(spec.backbones.at(bi), d));
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate_sweep_spec(spec);
  const std::size_t nb = spec.backbones.size(), nd = spec.d_grid.size(),
                    ns = spec.size_grid.size(), np = spec.param_grid.size();
  auto cell = [&](std::size_t flat) {
    const std::size_t si = flat % ns;
    const std::size_t di = (flat / ns) % nd;
    const std::size_t bi = flat / (ns * nd);
    std::vector<SweepRow> rows(np);
    for (std::size_t pi = 0; pi < np; ++pi) {
      rows[pi] = {spec.backbones[bi], spec.d_grid[di], spec.size_grid[si], spec.param_grid[pi],
                  0, 0, 0, 0, 0};
    }
    for (std::size_t t = 0; t < spec.trials; ++t) {
      const NetworkOfNetworks non = sweep_instance(spec, bi, di, si, t);
      for (std::size_t pi = 0; pi < np; ++pi) {
        const Triple v = evaluate(non, spec, spec.param_grid[pi]);
        SweepRow& r = rows[pi];
        r.exact += v.exact;
        r.spa1 += v.spa1;
        r.spa2 += v.spa2;
        r.rel_err_spa1 += rel_err(v.spa1, v.exact, spec.quantity);
        r.rel_err_spa2 += rel_err(v.spa2, v.exact, spec.quantity);
      }
    }
    const double count = static_cast<double>(spec.trials);
    for (auto& r : rows) {
      r.exact /= count;
      r.spa1 /= count;
      r.spa2 /= count;
      r.rel_err_spa1 /= count;
      r.rel_err_spa2 /= count;
    }
    return rows;
  };
  std::vector<SweepRow> out;
  for (auto& block : parallel_map(nb * nd * ns, cell))
    out.insert(out.end(), block.begin(), block.end());
  return out;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  out << "# schema=" << kSweepSchema << '\n';
  out << "# config=" << to_json(spec).dump() << '\n';
  out << "backbone,D,subgraph_size,epsilon_or_p,exact,spa1,spa2,rel_err_spa1,rel_err_spa2\n";
  for (const auto& r : rows) {
    out << to_string(r.backbone) << ',' << r.d << ',' << r.subgraph_size << ','
        << format_double(r.param) << ',' << format_double(r.exact) << ','
        << format_double(r.spa1) << ',' << format_double(r.spa2) << ','
        << format_double(r.rel_err_spa1) << ',' << format_double(r.rel_err_spa2) << '\n';
  }
}

SelectionSpec selection_preset(const std::string& scenario) {
  SelectionSpec s;
  s.scenario = scenario;
  if (scenario == "fig4") {
    s.objective = ObjectiveKind::diffusion_gap;
    s.params.epsilon = 0.1;
  } else if (scenario == "fig5") {
    s.objective = ObjectiveKind::ms_rate;
    s.params.p = 0.1;
    s.params.beta = 1.0 / 21.0;
    s.intra_weight = 1.0 / 21.0;
  } else if (scenario != "custom") {
    throw ModelError("unknown selection scenario \"" + scenario + "\"");
  }
  return s;
}

SelectionSpec selection_spec_from_json(const json& j, SelectionSpec s) {
  try {
    if (j.contains("scenario")) s.scenario = j.at("scenario").get<std::string>();
    if (j.contains("instances")) s.instances = j.at("instances").get<std::size_t>();
    if (j.contains("min_size")) s.min_size = j.at("min_size").get<std::size_t>();
    if (j.contains("max_size")) s.max_size = j.at("max_size").get<std::size_t>();
    if (j.contains("edge_prob")) s.edge_prob = j.at("edge_prob").get<double>();
    if (j.contains("intra_weight")) s.intra_weight = j.at("intra_weight").get<double>();
    if (j.contains("objective")) {
      const auto k = parse_objective_kind(j.at("objective").get<std::string>());
      if (!k) throw ModelError("unknown objective " + j.at("objective").dump());
      s.objective = *k;
    }
    if (j.contains("epsilon")) s.params.epsilon = j.at("epsilon").get<double>();
    if (j.contains("p")) s.params.p = j.at("p").get<double>();
    if (j.contains("beta")) s.params.beta = j.at("beta").get<double>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ModelError(std::string("selection config: ") + e.what());
  }
  return s;
}

json to_json(const SelectionSpec& s) {
  return {{"scenario", s.scenario},
          {"instances", s.instances},
          {"min_size", s.min_size},
          {"max_size", s.max_size},
          {"edge_prob", s.edge_prob},
          {"intra_weight", s.intra_weight},
          {"objective", std::string(to_string(s.objective))},
          {"epsilon", s.params.epsilon},
          {"p", s.params.p},
          {"beta", s.params.beta},
          {"mode", std::string(to_string(s.params.mode))},
          {"seed", s.seed}};
}

SelectionInstance selection_instance(const SelectionSpec& spec, std::size_t index) {
  if (spec.min_size == 0 || spec.min_size > spec.max_size) throw ModelError("bad size range");
  const std::uint64_t inst = derive_seed(spec.seed, {hash_name(spec.scenario), index});
  std::mt19937_64 engine(derive_seed(inst, {hash_name("sizes")}));
  GeneratorParams gp;
  gp.edge_prob = spec.edge_prob;
  gp.weight = spec.intra_weight;
  SelectionInstance out;
  for (std::size_t k = 0; k < 2; ++k) {
    const std::size_t n = spec.min_size + uniform_below(engine, spec.max_size - spec.min_size + 1);
    out.subgraphs.push_back(generate_graph(GraphKind::er, n, gp, derive_seed(inst, {k})));
  }
  out.connecting_edges = {{0, 1, 1.0}};
  return out;
}

std::vector<SelectionInstance> run_selection(const SelectionSpec& spec) {
  if (spec.instances == 0) throw ModelError("instances must be >= 1");
  return parallel_map(spec.instances, [&](std::size_t k) {
    SelectionInstance inst = selection_instance(spec, k);
    inst.rows = compare_strategies(inst.subgraphs, inst.connecting_edges, spec.params,
                                   spec.objective, derive_seed(spec.seed, {hash_name("random"), k}));
    return inst;
  });
}

void write_selection_csv(std::ostream& out, const SelectionSpec& spec,
                         const std::vector<SelectionInstance>& instances) {
  out << "# schema=" << kSelectionSchema << '\n';
  out << "# config=" << to_json(spec).dump() << '\n';
  out << "instance,strategy,node_ids,objective_kind,objective_value,matches_optimum\n";
  std::size_t matches = 0;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    for (const auto& row : instances[k].rows) {
      std::string ids;
      for (std::size_t i = 0; i < row.assignment.nodes.size(); ++i) {
        if (i) ids += ';';
        ids += std::to_string(row.assignment.nodes[i]);
      }
      out << k << ',' << row.strategy << ',' << ids << ',' << to_string(spec.objective) << ','
          << format_double(row.assignment.objective_value) << ','
          << (row.matches_optimum ? "true" : "false") << '\n';
      if (row.strategy == "heuristic" && row.matches_optimum) ++matches;
    }
  }
  const double fraction =
      instances.empty() ? 0.0 : static_cast<double>(matches) / static_cast<double>(instances.size());
  out << "summary,heuristic_match_fraction,," << to_string(spec.objective) << ','
      << format_double(fraction) << ",\n";
}

}  // namespace nonet
