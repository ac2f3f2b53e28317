#include <doctest.h>

#include <numeric>
#include <sstream>

#include "helpers.hpp"
#include "nonet/errors.hpp"
#include "nonet/graph.hpp"
#include "nonet/rng.hpp"

using namespace nonet;

namespace {

// Union-find component count, independent of the BFS in the library.
std::size_t components(const WeightedGraph& g) {
  std::vector<std::size_t> parent(g.node_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t count = g.node_count();
  for (const auto& e : g.edges()) {
    const auto a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("graph construction canonicalizes and validates") {
  const WeightedGraph g(3, {{2, 0, 1.5}, {1, 0, 1.0}});
  CHECK(g.edges()[0] == Edge{0, 1, 1.0});
  CHECK(g.edges()[1] == Edge{0, 2, 1.5});
  CHECK(g.strengths() == std::vector<double>{2.5, 1.0, 1.5});
  CHECK_THROWS_AS(WeightedGraph(0, {}), ModelError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 0, 1.0}}), ModelError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, 1.0}}), ModelError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, 1.0}, {1, 0, 2.0}}), ModelError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, 0.0}}), ModelError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, -1.0}}), ModelError);
}

TEST_CASE("deterministic generators") {
  CHECK(testing::path(5).edge_count() == 4);
  CHECK(testing::complete(6).edge_count() == 15);
  GeneratorParams gp;
  CHECK(generate_graph(GraphKind::ring, 7, gp, 0).edge_count() == 7);
  CHECK(generate_graph(GraphKind::star, 5, gp, 0).degrees()[0] == 4);
  CHECK_THROWS_AS(generate_graph(GraphKind::ring, 2, gp, 0), ModelError);
  gp.edge_prob = 0.5;
  CHECK_THROWS_AS(generate_graph(GraphKind::path, 4, gp, 0), ModelError);
  CHECK_THROWS_AS(generate_graph(GraphKind::er, 4, GeneratorParams{}, 0), ModelError);
}

TEST_CASE("er graphs are connected and reproducible") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = testing::er(12, 0.2, seed);
    CHECK(components(g) == 1);
    CHECK(is_connected(g));
    CHECK(g == testing::er(12, 0.2, seed));
  }
  CHECK_FALSE(testing::er(15, 0.3, 1) == testing::er(15, 0.3, 2));
  GeneratorParams gp;
  gp.edge_prob = 0.0;
  CHECK_THROWS_AS(generate_graph(GraphKind::er, 5, gp, 0), ModelError);
}

TEST_CASE("is_connected agrees with union-find") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 e(seed);
    std::vector<Edge> edges;
    for (NodeId a = 0; a < 9; ++a)
      for (NodeId b = a + 1; b < 9; ++b)
        if (uniform01(e) < 0.15) edges.push_back({a, b, 1.0});
    const WeightedGraph g(9, edges);
    CHECK(is_connected(g) == (components(g) == 1));
  }
}

TEST_CASE("laplacian rows sum to zero") {
  const auto l = laplacian(testing::er(10, 0.5, 3, 0.3)).matrix();
  CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() < 1e-15);
  CHECK(l(0, 0) == doctest::Approx(testing::er(10, 0.5, 3, 0.3).strengths()[0]));
}

TEST_CASE("pseudoinverse on hand-computed cases") {
  const auto k2 = pseudoinverse(laplacian(testing::complete(2)));
  CHECK(k2(0, 0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(k2(0, 1) == doctest::Approx(-0.25).epsilon(1e-14));
  const auto d = pinv_diagonal(testing::path(3));
  CHECK(d[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-13));
  CHECK(d[1] == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
  CHECK(d[2] == doctest::Approx(5.0 / 9.0).epsilon(1e-13));
  CHECK(pseudoinverse(SymmetricMatrix::zero(3)) == SymmetricMatrix::zero(3));
  CHECK_THROWS_AS(pinv_diagonal(WeightedGraph(3, {{0, 1, 1.0}})), ModelError);
  CHECK_THROWS_AS(pseudoinverse(SymmetricMatrix(Eigen::MatrixXd(-Eigen::MatrixXd::Identity(2, 2)))),
                  ModelError);
}

TEST_CASE("pseudoinverse satisfies the Penrose conditions") {
  const auto l = laplacian(testing::er(11, 0.4, 9, 0.7)).matrix();
  const auto p = pseudoinverse(SymmetricMatrix(l)).matrix();
  CHECK((l * p * l - l).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((p * l * p - p).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((p * Eigen::VectorXd::Ones(11)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("graph files round trip") {
  const auto g = testing::er(8, 0.5, 4, 1.0 / 3.0);
  std::stringstream s;
  write_graph(s, g);
  CHECK(read_graph(s) == g);
  std::stringstream bad("3 2\n0 1 1\n");
  CHECK_THROWS_AS(read_graph(bad), ModelError);
  std::stringstream junk("2 1\n0 1 1.0x\n");
  CHECK_THROWS_AS(read_graph(junk), ModelError);
}

TEST_CASE("network validation") {
  const auto a = testing::path(3), b = testing::path(4);
  CHECK_THROWS_AS(NetworkOfNetworks({a}, {0}, {}), ModelError);
  CHECK_THROWS_AS(NetworkOfNetworks({a, b}, {0}, {{0, 1, 1.0}}), ModelError);
  CHECK_THROWS_AS(NetworkOfNetworks({a, b}, {3, 0}, {{0, 1, 1.0}}), ModelError);
  CHECK_THROWS_AS(NetworkOfNetworks({a, b}, {0, 0}, {}), ModelError);
  CHECK_THROWS_AS(NetworkOfNetworks({a, b}, {0, 0}, {{0, 0, 1.0}}), ModelError);
  CHECK_THROWS_AS(NetworkOfNetworks({a, b}, {0, 0}, {{0, 1, 1.0}, {1, 0, 1.0}}), ModelError);
  CHECK_THROWS_AS(NetworkOfNetworks({a, WeightedGraph(2, {})}, {0, 0}, {{0, 1, 1.0}}), ModelError);
  const NetworkOfNetworks non({a, b}, {1, 3}, {{1, 0, 2.0}});
  CHECK(non.node_count() == 7);
  CHECK(non.bridge_global(1) == 6);
  CHECK(non.connecting_edges()[0] == ConnectingEdge{0, 1, 2.0});
  CHECK((supra_laplacian(non, 0.3).matrix() - testing::supra_by_hand(non, 0.3)).norm() == 0.0);
  CHECK_THROWS_AS(supra_laplacian(non, -1.0), ModelError);
}

TEST_CASE("consensus parameter checks name every violation") {
  const auto non = testing::pair(testing::complete(3, 0.6), testing::path(3, 0.1));
  const auto v = validate_consensus_params(non, {0.9, 1.5, 0.0});
  // p, the three nodes of the first subgraph, and beta.
  CHECK(v.size() == 5);
  bool beta_named = false;
  for (const auto& s : v) beta_named = beta_named || s.find("Delta") != std::string::npos;
  CHECK(beta_named);
  CHECK_THROWS_AS(consensus_matrices(non, {0.9, 0.5, 0.0}), ModelError);
}

TEST_CASE("backbones") {
  CHECK(backbone_edges(GraphKind::complete, 4).size() == 6);
  CHECK(backbone_edges(GraphKind::ring, 5).size() == 5);
  CHECK(backbone_edges(GraphKind::path, 5).size() == 4);
  CHECK_THROWS_AS(backbone_edges(GraphKind::er, 4), ModelError);
}
