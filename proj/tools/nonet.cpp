// nonet: command-line front end for the network-of-networks toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nonet/bridges.hpp"
#include "nonet/config.hpp"
#include "nonet/consensus.hpp"
#include "nonet/errors.hpp"
#include "nonet/experiments.hpp"
#include "nonet/rng.hpp"
#include "nonet/simulation.hpp"
#include "nonet/spectral.hpp"
#include "nonet/validation.hpp"

namespace {

using nlohmann::json;
using namespace nonet;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string mode = "joint";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON config file");
  cmd->add_option("--seed", c.seed, "Top-level seed");
  cmd->add_option("--out", c.out, "Output path (default stdout)");
  cmd->add_option("--mode", c.mode, "Link activation: joint or iid")
      ->check(CLI::IsMember({"joint", "iid"}));
}

// Writes to --out, or stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

ActivationMode mode_of(const Common& c) { return *parse_activation_mode(c.mode); }

json config_json(const Common& c) { return c.config.empty() ? json::object() : load_json(c.config); }

int cmd_gen(const Common& c, const std::string& kind_name, std::size_t n,
            std::optional<double> edge_prob, double weight) {
  const auto kind = parse_graph_kind(kind_name);
  if (!kind) throw ModelError("unknown graph kind \"" + kind_name + "\"");
  GeneratorParams gp;
  gp.edge_prob = edge_prob;
  gp.weight = weight;
  Output out(c.out);
  write_graph(out.stream(), generate_graph(*kind, n, gp, c.seed.value_or(1)));
  return 0;
}

int cmd_analyze(const Common& c, const std::string& format) {
  if (c.config.empty()) throw CLI::RequiredError("--config");
  const NonConfig cfg = load_non_config(c.config);
  const double beta = effective_beta(cfg.non, cfg.params);
  KrylovOptions opts;
  if (c.seed) opts.seed = *c.seed;
  json report = {
      {"params", {{"epsilon", cfg.params.epsilon}, {"p", cfg.params.p}, {"beta", beta}}},
      {"nodes", cfg.non.node_count()},
      {"subgraphs", cfg.non.subgraph_count()},
      {"spectral", to_json(analyze_spectral_gap(cfg.non, cfg.params.epsilon))}};
  const auto violations = validate_consensus_params(cfg.non, {beta, cfg.params.p, 0.0});
  if (violations.empty()) {
    report["mean_square"] =
        to_json(analyze_mean_square(cfg.non, cfg.params.p, beta, mode_of(c), opts));
    report["rho_ess"] = rho_ess(consensus_matrices(cfg.non, {beta, cfg.params.p, 0.0}).abar);
  } else {
    report["consensus_violations"] = violations;
  }
  Output out(c.out);
  if (format == "kv") {
    write_kv(out.stream(), report);
  } else {
    out.stream() << report.dump(2) << '\n';
  }
  return 0;
}

int cmd_sweep(const Common& c, const std::string& scenario, std::optional<std::string> quantity,
              std::optional<std::size_t> trials) {
  const json j = config_json(c);
  const std::string name = j.contains("scenario") && scenario.empty()
                               ? j.at("scenario").get<std::string>()
                               : (scenario.empty() ? "fig1" : scenario);
  SweepSpec spec = sweep_spec_from_json(j, sweep_preset(name));
  spec.scenario = name;
  if (c.seed) spec.seed = *c.seed;
  if (quantity) {
    const auto q = parse_quantity(*quantity);
    if (!q) throw CLI::ValidationError("--quantity", "unknown quantity " + *quantity);
    spec.quantity = *q;
  }
  if (trials) spec.trials = *trials;
  const auto rows = run_sweep(spec);
  Output out(c.out);
  write_sweep_csv(out.stream(), spec, rows);
  return 0;
}

int cmd_select(const Common& c, const std::string& scenario, std::optional<std::size_t> instances) {
  const json j = config_json(c);
  const std::string name = j.contains("scenario") && scenario.empty()
                               ? j.at("scenario").get<std::string>()
                               : (scenario.empty() ? "fig4" : scenario);
  SelectionSpec spec = selection_spec_from_json(j, selection_preset(name));
  spec.scenario = name;
  spec.params.mode = mode_of(c);
  if (c.seed) spec.seed = *c.seed;
  if (instances) spec.instances = *instances;
  const auto result = run_selection(spec);
  Output out(c.out);
  write_selection_csv(out.stream(), spec, result);
  return 0;
}

int cmd_simulate(const Common& c, std::size_t steps, std::size_t trials) {
  if (c.config.empty()) throw CLI::RequiredError("--config");
  const NonConfig cfg = load_non_config(c.config);
  const double beta = effective_beta(cfg.non, cfg.params);
  const std::uint64_t seed = c.seed.value_or(1);
  const Eigen::VectorXd x0 =
      random_initial_state(cfg.non.node_count(), derive_seed(seed, {hash_name("x0")}));
  Output out(c.out);
  if (trials <= 1) {
    const ConsensusTrace trace =
        simulate_consensus(cfg.non, cfg.params.p, beta, mode_of(c), x0, steps, seed);
    write_series_csv(out.stream(), "deviation_norm", trace.deviation_norms, seed);
  } else {
    const SigmaEstimate est =
        monte_carlo_sigma(cfg.non, cfg.params.p, beta, mode_of(c), x0, steps, trials, seed);
    write_series_csv(out.stream(), "trace_sigma", est.trace_series, seed);
  }
  return 0;
}

int cmd_validate(const Common& c, const std::vector<int>& only) {
  const std::uint64_t seed = c.seed.value_or(kAcceptanceSeed);
  const auto results = run_acceptance(seed, only);
  bool all = true;
  for (const auto& r : results) {
    std::cerr << summary_line(r) << '\n';
    all = all && r.passed;
  }
  Output out(c.out);
  out.stream() << acceptance_report(results, seed).dump(2) << '\n';
  return all ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion and consensus analysis for networks of networks"};
  app.require_subcommand(1);

  Common common;

  auto* gen = app.add_subcommand("gen", "Generate a graph file");
  add_common(gen, common);
  std::string kind = "er";
  std::size_t n = 10;
  std::optional<double> edge_prob;
  double weight = 1.0;
  gen->add_option("--kind", kind, "er, path, ring, complete or star");
  gen->add_option("--n", n, "Number of nodes")->check(CLI::PositiveNumber);
  gen->add_option("--edge-prob", edge_prob, "Edge probability (er only)");
  gen->add_option("--weight", weight, "Edge weight");

  auto* analyze = app.add_subcommand("analyze", "Spectral and mean-square report for one network");
  add_common(analyze, common);
  std::string format = "json";
  analyze->add_option("--format", format, "json or kv")->check(CLI::IsMember({"json", "kv"}));

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  add_common(sweep, common);
  std::string sweep_scenario;
  std::optional<std::string> quantity;
  std::optional<std::size_t> trials;
  sweep->add_option("--scenario", sweep_scenario, "fig1, fig2, fig3 or custom");
  sweep->add_option("--quantity", quantity, "diffusion_gap, rho_ess or ms_rate");
  sweep->add_option("--trials", trials, "Instances averaged per grid point");

  auto* select = app.add_subcommand("select", "Bridge selection comparison to CSV");
  add_common(select, common);
  std::string select_scenario;
  std::optional<std::size_t> instances;
  select->add_option("--scenario", select_scenario, "fig4, fig5 or custom");
  select->add_option("--instances", instances, "Number of seeded instances");

  auto* simulate = app.add_subcommand("simulate", "Simulate the stochastic consensus dynamics");
  add_common(simulate, common);
  std::size_t steps = 100;
  std::size_t sim_trials = 1;
  simulate->add_option("--steps", steps, "Number of steps");
  simulate->add_option("--trials", sim_trials, "Trials; more than one writes the trace of Sigma");

  auto* validate = app.add_subcommand("validate", "Run the acceptance checks");
  add_common(validate, common);
  std::vector<int> only;
  validate->add_option("--only", only, "Criterion ids to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(common, kind, n, edge_prob, weight);
    if (*analyze) return cmd_analyze(common, format);
    if (*sweep) return cmd_sweep(common, sweep_scenario, quantity, trials);
    if (*select) return cmd_select(common, select_scenario, instances);
    if (*simulate) return cmd_simulate(common, steps, sim_trials);
    if (*validate) return cmd_validate(common, only);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
