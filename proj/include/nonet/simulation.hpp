#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nonet/consensus.hpp"
#include "nonet/network.hpp"

namespace nonet {

struct ConsensusTrace {
  std::size_t steps = 0;
  std::vector<Eigen::VectorXd> states;         // x(0) .. x(steps)
  std::vector<double> deviation_norms;         // ||P x(l)||
  std::vector<std::vector<bool>> activation_log;  // per step, per connecting edge
};

/// One realization of x(l+1) = (A - sum_e delta_e(l) B_e) x(l).
///
/// delta_e(l) is a counter-based Bernoulli(p) draw keyed by (seed, trial, l)
/// and the edge index (always 0 in joint mode, so every edge shares it).
ConsensusTrace simulate_consensus(const NetworkOfNetworks& non, double p, double beta,
                                  ActivationMode mode, const Eigen::VectorXd& x0,
                                  std::size_t steps, std::uint64_t seed, std::uint64_t trial = 0);

struct SigmaEstimate {
  std::size_t trials = 0;
  std::vector<Eigen::MatrixXd> sigma_hat;   // l = 0 .. steps
  std::vector<Eigen::MatrixXd> std_error;   // entrywise standard error of the mean
  std::vector<double> trace_series;
};

// Empirical E[x~ x~'] with x~ = P x over independent trials.
SigmaEstimate monte_carlo_sigma(const NetworkOfNetworks& non, double p, double beta,
                                ActivationMode mode, const Eigen::VectorXd& x0,
                                std::size_t steps, std::size_t trials, std::uint64_t seed);

// Sigma(0) = P x0 x0' P, Sigma(l+1) = mean-square operator applied to Sigma(l).
SigmaEstimate exact_sigma(const NetworkOfNetworks& non, double p, double beta,
                          ActivationMode mode, const Eigen::VectorXd& x0, std::size_t steps);

inline constexpr std::size_t kDefaultBurnIn = 20;

/// exp of the least-squares slope of ln(trace) against the step index, over
/// steps >= burn_in.
double empirical_ms_rate(const std::vector<double>& trace_series,
                         std::size_t burn_in = kDefaultBurnIn);
double empirical_ms_rate(const SigmaEstimate& estimate, std::size_t burn_in = kDefaultBurnIn);

// I.i.d. uniform [0, 1) entries.
Eigen::VectorXd random_initial_state(std::size_t n, std::uint64_t seed);

/// x(t) = exp(-L t) x0 for the supra-Laplacian L, via its eigendecomposition.
std::vector<Eigen::VectorXd> diffusion_trajectory(const NetworkOfNetworks& non, double epsilon,
                                                  const Eigen::VectorXd& x0,
                                                  const std::vector<double>& times);

// ||P x(t)|| summed over the nonzero modes directly, so it stays accurate
// long after x(t) has converged to the mean in floating point.
std::vector<double> diffusion_deviation_norms(const NetworkOfNetworks& non, double epsilon,
                                              const Eigen::VectorXd& x0,
                                              const std::vector<double>& times);

// Least-squares slope of ln(values) against t.
double log_slope(const std::vector<double>& t, const std::vector<double>& values);

void write_series_csv(std::ostream& out, const std::string& value_column,
                      const std::vector<double>& values, std::uint64_t seed);

}  // namespace nonet
