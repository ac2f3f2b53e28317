#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "nonet/errors.hpp"
#include "nonet/simulation.hpp"

using namespace nonet;

namespace {

constexpr double kBeta = 1.0 / 21.0;

NetworkOfNetworks small_non() {
  std::vector<WeightedGraph> gs{testing::er(5, 0.6, 1, 0.1), testing::er(6, 0.6, 2, 0.1),
                                testing::er(4, 0.6, 3, 0.1)};
  return NetworkOfNetworks(gs, {0, 1, 2}, backbone_edges(GraphKind::complete, 3));
}

double mean(const Eigen::VectorXd& x) { return x.sum() / double(x.size()); }

}  // namespace

TEST_CASE("consensus dynamics invariants") {
  const auto non = small_non();
  const auto n = non.node_count();
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(Eigen::Index(n), 0.7);
  const auto flat = simulate_consensus(non, 0.5, kBeta, ActivationMode::joint, c, 25, 3);
  for (const auto& x : flat.states) CHECK((x - c).cwiseAbs().maxCoeff() < 1e-14);

  const Eigen::VectorXd x0 = random_initial_state(n, 9);
  for (auto mode : {ActivationMode::joint, ActivationMode::iid}) {
    const auto tr = simulate_consensus(non, 0.5, kBeta, mode, x0, 60, 4);
    CHECK(tr.states.size() == 61);
    CHECK(tr.deviation_norms.size() == 61);
    CHECK(tr.activation_log.size() == 60);
    for (const auto& x : tr.states) CHECK(std::abs(mean(x) - mean(x0)) < 1e-13);
    CHECK(tr.deviation_norms.back() < tr.deviation_norms.front());
  }
}

TEST_CASE("activation patterns") {
  const auto non = small_non();
  const Eigen::VectorXd x0 = random_initial_state(non.node_count(), 5);
  const auto joint = simulate_consensus(non, 0.5, kBeta, ActivationMode::joint, x0, 200, 6);
  for (const auto& step : joint.activation_log) {
    REQUIRE(step.size() == 3);
    CHECK(step[0] == step[1]);
    CHECK(step[1] == step[2]);
  }
  const auto iid = simulate_consensus(non, 0.5, kBeta, ActivationMode::iid, x0, 200, 6);
  std::size_t mixed = 0, on = 0;
  for (const auto& step : iid.activation_log) {
    mixed += !(step[0] == step[1] && step[1] == step[2]);
    for (bool b : step) on += b;
  }
  CHECK(mixed > 50);
  CHECK(std::abs(double(on) / 600.0 - 0.5) < 0.1);

  const auto none = simulate_consensus(non, 0.0, kBeta, ActivationMode::iid, x0, 50, 6);
  for (const auto& step : none.activation_log)
    for (bool b : step) CHECK_FALSE(b);
  // Without bridge activity the subgraph averages never mix.
  for (std::size_t k = 0; k < non.subgraph_count(); ++k) {
    const auto off = Eigen::Index(non.offset(k));
    const auto len = Eigen::Index(non.subgraph(k).node_count());
    CHECK(std::abs(none.states.back().segment(off, len).sum() - x0.segment(off, len).sum()) <
          1e-12);
  }
}

TEST_CASE("simulation is reproducible") {
  const auto non = small_non();
  const Eigen::VectorXd x0 = random_initial_state(non.node_count(), 5);
  CHECK(random_initial_state(non.node_count(), 5) == x0);
  const auto a = simulate_consensus(non, 0.3, kBeta, ActivationMode::iid, x0, 40, 77, 2);
  const auto b = simulate_consensus(non, 0.3, kBeta, ActivationMode::iid, x0, 40, 77, 2);
  const auto other = simulate_consensus(non, 0.3, kBeta, ActivationMode::iid, x0, 40, 77, 3);
  CHECK(a.activation_log == b.activation_log);
  CHECK(a.states.back() == b.states.back());
  CHECK(a.activation_log != other.activation_log);
  for (double v : x0) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("second-moment estimates") {
  const auto non = small_non();
  const Eigen::VectorXd x0 = random_initial_state(non.node_count(), 8);
  const auto n = Eigen::Index(non.node_count());
  const Eigen::MatrixXd proj =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / double(n));
  const Eigen::MatrixXd s0 = proj * x0 * x0.transpose() * proj;

  const auto mc0 = monte_carlo_sigma(non, 0.2, kBeta, ActivationMode::joint, x0, 0, 10, 1);
  CHECK((mc0.sigma_hat[0] - s0).cwiseAbs().maxCoeff() < 1e-14);
  const auto ex = exact_sigma(non, 0.2, kBeta, ActivationMode::joint, x0, 5);
  CHECK((ex.sigma_hat[0] - s0).cwiseAbs().maxCoeff() < 1e-14);

  // p = 1 in joint mode is a deterministic recursion.
  const auto det = monte_carlo_sigma(non, 1.0, kBeta, ActivationMode::joint, x0, 5, 7, 2);
  const auto det_exact = exact_sigma(non, 1.0, kBeta, ActivationMode::joint, x0, 5);
  for (std::size_t l = 0; l <= 5; ++l)
    CHECK((det.sigma_hat[l] - det_exact.sigma_hat[l]).cwiseAbs().maxCoeff() < 1e-13);

  // Standard error of the mean falls like 1/sqrt(trials).
  const auto few = monte_carlo_sigma(non, 0.5, kBeta, ActivationMode::iid, x0, 10, 100, 3);
  const auto many = monte_carlo_sigma(non, 0.5, kBeta, ActivationMode::iid, x0, 10, 1600, 3);
  const double ratio = few.std_error[10].sum() / many.std_error[10].sum();
  CHECK(ratio > 0.8 * 4);
  CHECK(ratio < 1.25 * 4);
}

TEST_CASE("empirical rate fit") {
  std::vector<double> series;
  for (int l = 0; l < 60; ++l) series.push_back(3.0 * std::pow(0.93, l));
  CHECK(empirical_ms_rate(series) == doctest::Approx(0.93).epsilon(1e-12));
  CHECK(empirical_ms_rate(series, 0) == doctest::Approx(0.93).epsilon(1e-12));
  series[40] = 0.0;
  CHECK_THROWS(empirical_ms_rate(series));
  CHECK_THROWS(log_slope({0.0, 1.0}, {1.0, -1.0}));

  const auto non = testing::pair(testing::er(6, 0.6, 4, 0.1), testing::er(7, 0.6, 5, 0.1));
  const Eigen::VectorXd x0 = random_initial_state(non.node_count(), 2);
  const auto ex = exact_sigma(non, 0.3, kBeta, ActivationMode::joint, x0, 3000);
  const double rho = ms_spectral_radius(non, 0.3, kBeta, ActivationMode::joint);
  CHECK(std::abs(empirical_ms_rate(ex, 1000) - rho) < 0.01 * rho);
}

TEST_CASE("diffusion trajectory") {
  const auto non = small_non();
  const double eps = 0.2;
  const auto n = non.node_count();
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(Eigen::Index(n), 2.0);
  for (const auto& x : diffusion_trajectory(non, eps, c, {0.0, 1.0, 10.0}))
    CHECK((x - c).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(testing::supra_by_hand(non, eps));
  const Eigen::VectorXd v = es.eigenvectors().col(1);
  const auto traj = diffusion_trajectory(non, eps, v, {0.0, 2.0});
  CHECK((traj[1] - std::exp(-2.0 * es.eigenvalues()(1)) * v).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::VectorXd x0 = random_initial_state(n, 3);
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(0.5 * k);
  const auto norms = diffusion_deviation_norms(non, eps, x0, times);
  for (std::size_t k = 1; k < norms.size(); ++k) CHECK(norms[k] <= norms[k - 1] * (1 + 1e-12));
  const auto xs = diffusion_trajectory(non, eps, x0, times);
  for (std::size_t k = 0; k < 6; ++k)
    CHECK(std::abs((xs[k].array() - mean(x0)).matrix().norm() - norms[k]) < 1e-10);
}

TEST_CASE("series CSV") {
  std::ostringstream os;
  write_series_csv(os, "trace_sigma", {1.0, 0.5}, 42);
  CHECK(os.str() == "# seed=42\nstep,trace_sigma\n0,1\n1,0.5\n");
}
