#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nonet/errors.hpp"
#include "nonet/spectral.hpp"

using namespace nonet;

TEST_CASE("spectral gap of known graphs") {
  CHECK(spectral_gap(laplacian(testing::complete(6))) == doctest::Approx(6.0).epsilon(1e-13));
  const double pi = std::acos(-1.0);
  CHECK(spectral_gap(laplacian(testing::path(9))) ==
        doctest::Approx(2 - 2 * std::cos(pi / 9)).epsilon(1e-12));
  GeneratorParams gp;
  CHECK(spectral_gap(laplacian(generate_graph(GraphKind::ring, 8, gp, 0))) ==
        doctest::Approx(2 - 2 * std::cos(2 * pi / 8)).epsilon(1e-12));
  CHECK_THROWS_AS(spectral_gap(laplacian(WeightedGraph(4, {{0, 1, 1.0}, {2, 3, 1.0}}))),
                  SpectrumError);
  CHECK_THROWS_AS(spectral_gap(SymmetricMatrix::zero(1)), SpectrumError);
}

TEST_CASE("two K2 subgraphs: exact root and both approximations") {
  // Antisymmetric modes reduce to [[1 + 2e, -1], [-1, 1]], whose smaller
  // root is (1 + e) - sqrt(1 + e^2).
  const double eps = 0.1;
  const auto non = testing::pair(testing::complete(2), testing::complete(2));
  const double root = (1 + eps) - std::sqrt(1 + eps * eps);
  CHECK(root == doctest::Approx(0.0950124).epsilon(1e-6));
  const auto r = analyze_spectral_gap(non, eps);
  CHECK(r.exact_gap == doctest::Approx(root).epsilon(1e-13));
  CHECK(r.spa1 == doctest::Approx(0.1).epsilon(1e-14));
  // S = N_k L^+(s, s) = 2 * 1/4, u_2' S u_2 = 1/2.
  CHECK(r.spa2 == doctest::Approx(0.095).epsilon(1e-14));
  CHECK(std::abs(r.exact_gap - r.spa2) < std::abs(r.exact_gap - r.spa1));
  CHECK(r.s_hat_diag == std::vector<double>{0.5, 0.5});
}

TEST_CASE("first-order gap ignores topology, depends on sizes") {
  const auto a = testing::pair(testing::path(7), testing::complete(4), 3, 1);
  const auto b = testing::pair(testing::er(7, 0.5, 2), testing::path(4));
  CHECK(spa1_gap(a, 0.01) == spa1_gap(b, 0.01));
  CHECK(spa1_gap(a, 0.01) == doctest::Approx(gap_closed_form_d2(7, 4, 0.01)).epsilon(1e-14));
}

TEST_CASE("equal sizes closed form over ring and complete backbones") {
  const double pi = std::acos(-1.0);
  for (std::size_t d : {3, 5, 8}) {
    std::vector<WeightedGraph> gs;
    for (std::size_t k = 0; k < d; ++k) gs.push_back(testing::er(6, 0.6, 10 + k));
    const NetworkOfNetworks ring(gs, std::vector<NodeId>(d, 2), backbone_edges(GraphKind::ring, d));
    const NetworkOfNetworks full(gs, std::vector<NodeId>(d, 2),
                                 backbone_edges(GraphKind::complete, d));
    const double l2_ring = 2 - 2 * std::cos(2 * pi / static_cast<double>(d));
    CHECK(spa1_gap(ring, 0.01) ==
          doctest::Approx(gap_closed_form_equal(d, 6 * d, l2_ring, 0.01)).epsilon(1e-12));
    CHECK(spa1_gap(full, 0.01) ==
          doctest::Approx(gap_closed_form_equal(d, 6 * d, double(d), 0.01)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gap_closed_form_equal(3, 10, 1.0, 0.1), ModelError);
}

TEST_CASE("residual orders: second and third power of epsilon") {
  std::vector<WeightedGraph> gs{testing::er(8, 0.5, 1), testing::er(11, 0.5, 2),
                                testing::er(6, 0.5, 3)};
  const NetworkOfNetworks non(gs, {1, 4, 2}, backbone_edges(GraphKind::path, 3));
  auto residuals = [&](double eps) {
    const double exact = testing::eig(testing::supra_by_hand(non, eps))(1);
    return std::pair{std::abs(exact - spa1_gap(non, eps)), std::abs(exact - spa2_gap(non, eps))};
  };
  const auto [r1a, r2a] = residuals(1e-2);
  const auto [r1b, r2b] = residuals(1e-3);
  CHECK(r1a / r1b == doctest::Approx(100).epsilon(0.1));
  CHECK(r2a / r2b == doctest::Approx(1000).epsilon(0.1));
}

TEST_CASE("degenerate connecting spectrum resolves into branches") {
  // Complete backbone over equal sizes: lambda_2 of the generalized Laplacian
  // is (D-1)-fold. The bridges differ, so the branches split at second order.
  std::vector<WeightedGraph> gs{testing::path(5), testing::path(5), testing::path(5)};
  const NetworkOfNetworks non(gs, {0, 1, 2}, backbone_edges(GraphKind::complete, 3));
  const auto r = analyze_spectral_gap(non, 1e-2);
  CHECK(r.m_hat_eigenvalues[1] == doctest::Approx(r.m_hat_eigenvalues[2]).epsilon(1e-12));
  const Eigen::VectorXd exact = testing::eig(testing::supra_by_hand(non, 1e-2));
  const auto branches = perturbed_spectrum(non, 1e-2, 2);
  REQUIRE(branches.size() == 2);
  CHECK(branches[0] == r.spa2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(std::abs(branches[k] - exact(static_cast<Eigen::Index>(k) + 1)) < 1e-5);
    CHECK(std::abs(branches[k] - exact(static_cast<Eigen::Index>(k) + 1)) <
          std::abs(1e-2 * r.m_hat_eigenvalues[1] - exact(static_cast<Eigen::Index>(k) + 1)));
  }
  const Eigen::Map<const Eigen::VectorXd> f(r.m_hat_fiedler.data(), 3);
  CHECK(f.norm() == doctest::Approx(1.0));
  CHECK(std::abs(f.sum()) < 1e-12);
}

TEST_CASE("perturbed spectrum first order") {
  const auto non = testing::pair(testing::path(4), testing::path(6));
  const auto s = perturbed_spectrum(non, 0.2, 1);
  REQUIRE(s.size() == 1);
  CHECK(s[0] == doctest::Approx(0.2 * (1.0 / 4 + 1.0 / 6)).epsilon(1e-14));
  CHECK_THROWS_AS(perturbed_spectrum(non, 0.2, 3), ModelError);
}
