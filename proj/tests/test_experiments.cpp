#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "helpers.hpp"
#include "nonet/config.hpp"
#include "nonet/errors.hpp"
#include "nonet/experiments.hpp"

using namespace nonet;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "nonet_test_experiments";
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("parallel map keeps order and forwards errors") {
  const auto sq = parallel_map(100, [](std::size_t k) { return k * k; });
  for (std::size_t k = 0; k < 100; ++k) CHECK(sq[k] == k * k);
  CHECK(parallel_map(0, [](std::size_t k) { return k; }).empty());
  CHECK_THROWS_AS(parallel_map(10,
                               [](std::size_t k) {
                                 if (k == 7) throw std::runtime_error("seven");
                                 return k;
                               }),
                  std::runtime_error);
}

TEST_CASE("equal-size sweep matches the closed form") {
  SweepSpec spec = sweep_preset("fig3");
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 2 * 10);
  const double pi = std::acos(-1.0);
  for (const auto& r : rows) {
    CHECK(r.subgraph_size == 10);
    CHECK(r.param == 0.01);
    const double d = double(r.d);
    const double l2 = r.backbone == GraphKind::complete ? d : 2 - 2 * std::cos(2 * pi / d);
    CHECK(r.spa1 == doctest::Approx(0.01 * l2 / 10).epsilon(1e-12));
    if (r.backbone == GraphKind::complete) CHECK(r.spa1 == doctest::Approx(0.01 * d / 10));
    CHECK(r.rel_err_spa1 == doctest::Approx(std::abs(r.spa1 - r.exact) / r.exact).epsilon(1e-12));
  }
}

TEST_CASE("sweep output is deterministic") {
  SweepSpec spec = sweep_preset("fig1");
  spec.size_grid = {5, 10};
  spec.d_grid = {2, 4};
  spec.param_grid = {1e-3, 0.1};
  spec.trials = 2;
  std::ostringstream a, b;
  write_sweep_csv(a, spec, run_sweep(spec));
  write_sweep_csv(b, spec, run_sweep(spec));
  CHECK(a.str() == b.str());
  const auto ls = lines(a.str());
  REQUIRE(ls.size() == 2 + 1 + 8);
  CHECK(ls[0] == std::string("# schema=") + kSweepSchema);
  CHECK(ls[1].rfind("# config=", 0) == 0);
  CHECK(ls[2] == "backbone,D,subgraph_size,epsilon_or_p,exact,spa1,spa2,rel_err_spa1,rel_err_spa2");

  spec.seed = 2;
  std::ostringstream c;
  write_sweep_csv(c, spec, run_sweep(spec));
  CHECK(c.str() != a.str());
}

TEST_CASE("sweep instances do not depend on the parameter grid") {
  SweepSpec spec = sweep_preset("fig1");
  const auto x = sweep_instance(spec, 0, 1, 2, 0);
  spec.param_grid = {0.5};
  const auto y = sweep_instance(spec, 0, 1, 2, 0);
  CHECK(supra_laplacian(x, 1.0) == supra_laplacian(y, 1.0));
  CHECK_FALSE(supra_laplacian(x, 1.0) == supra_laplacian(sweep_instance(spec, 0, 1, 2, 1), 1.0));
}

TEST_CASE("sweep spec validation and JSON") {
  SweepSpec spec = sweep_preset("fig2");
  CHECK(spec.family == GraphKind::path);
  const SweepSpec back = sweep_spec_from_json(to_json(spec), SweepSpec{});
  CHECK(to_json(back) == to_json(spec));
  spec.d_grid = {1};
  CHECK_THROWS(validate_sweep_spec(spec));
  CHECK_THROWS(sweep_preset("fig9"));
  CHECK(parse_quantity("rho_ess") == Quantity::rho_ess);
  CHECK(to_string(Quantity::ms_rate) == "ms_rate");

  SweepSpec ms = sweep_preset("fig3");
  ms.quantity = Quantity::ms_rate;
  ms.d_grid = {2, 3};
  ms.backbones = {GraphKind::complete};
  for (const auto& r : run_sweep(ms)) {
    CHECK(r.exact < 1.0);
    CHECK(r.rel_err_spa1 ==
          doctest::Approx(std::abs(r.spa1 - r.exact) / (1 - r.exact)).epsilon(1e-9));
  }
}

TEST_CASE("selection CSV") {
  SelectionSpec spec = selection_preset("fig4");
  spec.instances = 3;
  const auto result = run_selection(spec);
  std::ostringstream os;
  write_selection_csv(os, spec, result);
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 2 + 1 + 9 + 1);
  CHECK(ls[0] == std::string("# schema=") + kSelectionSchema);
  CHECK(ls[2] == "instance,strategy,node_ids,objective_kind,objective_value,matches_optimum");
  CHECK(ls.back().rfind("summary,heuristic_match_fraction,,diffusion_gap,", 0) == 0);
  for (const auto& inst : result) {
    CHECK(inst.subgraphs.size() == 2);
    for (const auto& g : inst.subgraphs) {
      CHECK(g.node_count() >= spec.min_size);
      CHECK(g.node_count() <= spec.max_size);
    }
  }
  CHECK(selection_preset("fig5").objective == ObjectiveKind::ms_rate);
}

TEST_CASE("config parsing") {
  const auto dir = scratch_dir();
  save_graph(dir / "k3.graph", testing::complete(3, 0.1));
  const json j = json::parse(R"({
    "subgraphs": [{"file": "k3.graph"},
                  {"n": 2, "edges": [[0, 1, 0.2]]},
                  {"kind": "er", "n": 6, "edge_prob": 0.5, "weight": 0.1, "seed": 4}],
    "bridges": [0, 1, 2],
    "backbone": "ring",
    "params": {"epsilon": 0.05, "p": 0.3}
  })");
  const NonConfig cfg = parse_non_config(j, dir);
  CHECK(cfg.non.node_count() == 11);
  CHECK(cfg.non.connecting_edges().size() == 3);
  CHECK(cfg.params.epsilon == 0.05);
  CHECK_FALSE(cfg.params.beta);
  CHECK(effective_beta(cfg.non, cfg.params) ==
        doctest::Approx(1.0 / (2 * max_strength(cfg.non) + 1)));

  {
    std::ofstream f(dir / "net.json");
    f << j.dump();
  }
  const auto cwd = std::filesystem::current_path();
  std::filesystem::current_path(std::filesystem::temp_directory_path());
  CHECK(load_non_config(dir / "net.json").non.node_count() == 11);
  std::filesystem::current_path(cwd);

  json bad = j;
  bad["bridges"] = {0, 7, 0};
  CHECK_THROWS_AS(parse_non_config(bad, dir), ModelError);
  bad = j;
  bad.erase("subgraphs");
  CHECK_THROWS(parse_non_config(bad, dir));
  bad = j;
  bad["subgraphs"][0]["file"] = "missing.graph";
  CHECK_THROWS(parse_non_config(bad, dir));
  bad = j;
  bad.erase("backbone");
  bad["connecting_edges"] = {{0, 1, 1.0}, {1, 2, 0.5}};
  bad["params"]["beta"] = 0.05;
  const NonConfig explicit_edges = parse_non_config(bad, dir);
  CHECK(explicit_edges.non.connecting_edges().size() == 2);
  CHECK(effective_beta(explicit_edges.non, explicit_edges.params) == 0.05);
}

TEST_CASE("key-value output") {
  std::ostringstream os;
  write_kv(os, json{{"a", 0.1}, {"b", {{"c", json::array({1, 2})}}}, {"s", "x"}});
  CHECK(os.str() == "a=0.10000000000000001\nb.c.0=1\nb.c.1=2\ns=x\n");
  CHECK(format_double(0.5) == "0.5");
}
