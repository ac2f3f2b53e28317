#include "nonet/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "nonet/errors.hpp"
#include "nonet/rng.hpp"

namespace nonet {
namespace {

struct LinkTerm {
  Eigen::Index r;
  Eigen::Index s;
  double c;
};

std::vector<LinkTerm> link_terms(const NetworkOfNetworks& non, double beta) {
  std::vector<LinkTerm> links;
  for (const auto& e : non.connecting_edges()) {
    links.push_back({static_cast<Eigen::Index>(non.bridge_global(e.i)),
                     static_cast<Eigen::Index>(non.bridge_global(e.j)), beta * e.weight});
  }
  return links;
}

Eigen::VectorXd centered(const Eigen::VectorXd& x) {
  return x.array() - x.mean();
}

}  // namespace

ConsensusTrace simulate_consensus(const NetworkOfNetworks& non, double p, double beta,
                                  ActivationMode mode, const Eigen::VectorXd& x0,
                                  std::size_t steps, std::uint64_t seed, std::uint64_t trial) {
  const ConsensusMatrices cm = consensus_matrices(non, {beta, p, 0.0});
  if (x0.size() != cm.a.dim()) throw ModelError("initial state has the wrong dimension");
  const auto links = link_terms(non, beta);

  ConsensusTrace trace;
  trace.steps = steps;
  trace.states.reserve(steps + 1);
  trace.states.push_back(x0);
  trace.deviation_norms.push_back(centered(x0).norm());
  for (std::size_t l = 0; l < steps; ++l) {
    const std::uint64_t key = derive_seed(seed, {trial, l});
    std::vector<bool> active(links.size());
    const bool shared = counter_uniform(key, 0) < p;
    for (std::size_t e = 0; e < links.size(); ++e) {
      active[e] = mode == ActivationMode::joint ? shared : counter_uniform(key, e) < p;
    }
    const Eigen::VectorXd& x = trace.states.back();
    Eigen::VectorXd next = cm.a.matrix() * x;
    for (std::size_t e = 0; e < links.size(); ++e) {
      if (!active[e]) continue;
      const double flow = links[e].c * (x(links[e].r) - x(links[e].s));
      next(links[e].r) -= flow;
      next(links[e].s) += flow;
    }
    trace.deviation_norms.push_back(centered(next).norm());
    trace.states.push_back(std::move(next));
    trace.activation_log.push_back(std::move(active));
  }
  return trace;
}

SigmaEstimate monte_carlo_sigma(const NetworkOfNetworks& non, double p, double beta,
                                ActivationMode mode, const Eigen::VectorXd& x0,
                                std::size_t steps, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw ModelError("monte_carlo_sigma needs at least one trial");
  const auto n = x0.size();
  std::vector<Eigen::MatrixXd> sum(steps + 1, Eigen::MatrixXd::Zero(n, n));
  std::vector<Eigen::MatrixXd> sum_sq(steps + 1, Eigen::MatrixXd::Zero(n, n));
  for (std::size_t t = 0; t < trials; ++t) {
    const ConsensusTrace trace = simulate_consensus(non, p, beta, mode, x0, steps, seed, t);
    for (std::size_t l = 0; l <= steps; ++l) {
      const Eigen::VectorXd y = centered(trace.states[l]);
      const Eigen::MatrixXd outer = y * y.transpose();
      sum[l] += outer;
      sum_sq[l] += outer.cwiseProduct(outer);
    }
  }
  SigmaEstimate est;
  est.trials = trials;
  const double count = static_cast<double>(trials);
  for (std::size_t l = 0; l <= steps; ++l) {
    Eigen::MatrixXd mean = sum[l] / count;
    Eigen::MatrixXd se = Eigen::MatrixXd::Zero(n, n);
    if (trials > 1) {
      const Eigen::ArrayXXd var =
          ((sum_sq[l] / count).array() - mean.array().square()).max(0.0) * count / (count - 1.0);
      se = (var / count).sqrt().matrix();
    }
    est.trace_series.push_back(mean.trace());
    est.sigma_hat.push_back(std::move(mean));
    est.std_error.push_back(std::move(se));
  }
  return est;
}

SigmaEstimate exact_sigma(const NetworkOfNetworks& non, double p, double beta,
                          ActivationMode mode, const Eigen::VectorXd& x0, std::size_t steps) {
  const MeanSquareOperator op(non, p, beta, mode);
  if (x0.size() != op.dim()) throw ModelError("initial state has the wrong dimension");
  SigmaEstimate est;
  const Eigen::VectorXd y = centered(x0);
  Eigen::MatrixXd sigma = y * y.transpose();
  for (std::size_t l = 0; l <= steps; ++l) {
    est.trace_series.push_back(sigma.trace());
    est.std_error.push_back(Eigen::MatrixXd::Zero(op.dim(), op.dim()));
    est.sigma_hat.push_back(sigma);
    if (l < steps) sigma = op.apply(sigma);
  }
  return est;
}

double log_slope(const std::vector<double>& t, const std::vector<double>& values) {
  if (t.size() != values.size() || t.size() < 2) {
    throw ModelError("slope fit needs at least two matching points");
  }
  const auto m = static_cast<double>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!(values[k] > 0.0)) {
      throw ModelError("nonpositive value at index " + std::to_string(k) +
                       " in slope fit; shorten the horizon");
    }
    const double y = std::log(values[k]);
    st += t[k];
    sy += y;
    stt += t[k] * t[k];
    sty += t[k] * y;
  }
  return (m * sty - st * sy) / (m * stt - st * st);
}

double empirical_ms_rate(const std::vector<double>& trace_series, std::size_t burn_in) {
  if (trace_series.size() < burn_in + 2) {
    throw ModelError("trace series too short for burn_in " + std::to_string(burn_in));
  }
  std::vector<double> t;
  std::vector<double> v;
  for (std::size_t l = burn_in; l < trace_series.size(); ++l) {
    t.push_back(static_cast<double>(l));
    v.push_back(trace_series[l]);
  }
  return std::exp(log_slope(t, v));
}

double empirical_ms_rate(const SigmaEstimate& estimate, std::size_t burn_in) {
  return empirical_ms_rate(estimate.trace_series, burn_in);
}

Eigen::VectorXd random_initial_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = uniform01(engine);
  return x;
}

std::vector<Eigen::VectorXd> diffusion_trajectory(const NetworkOfNetworks& non, double epsilon,
                                                  const Eigen::VectorXd& x0,
                                                  const std::vector<double>& times) {
  const SymmetricEigen eig = eigen_decompose(supra_laplacian(non, epsilon));
  if (x0.size() != eig.values.size()) throw ModelError("initial state has the wrong dimension");
  const Eigen::VectorXd coeff = eig.vectors.transpose() * x0;
  std::vector<Eigen::VectorXd> out;
  double last = 0.0;
  for (double t : times) {
    if (!(t >= 0.0) || t < last) throw ModelError("times must be nonnegative and ascending");
    last = t;
    const Eigen::VectorXd decay = (-eig.values.array().max(0.0) * t).exp();
    out.push_back(eig.vectors * coeff.cwiseProduct(decay));
  }
  return out;
}

std::vector<double> diffusion_deviation_norms(const NetworkOfNetworks& non, double epsilon,
                                              const Eigen::VectorXd& x0,
                                              const std::vector<double>& times) {
  const SymmetricEigen eig = eigen_decompose(supra_laplacian(non, epsilon));
  if (x0.size() != eig.values.size()) throw ModelError("initial state has the wrong dimension");
  // Mode 0 is the constant vector; P removes exactly that component.
  const Eigen::VectorXd coeff = eig.vectors.transpose() * x0;
  const Eigen::Index n = eig.values.size();
  std::vector<double> out;
  double last = 0.0;
  for (double t : times) {
    if (!(t >= 0.0) || t < last) throw ModelError("times must be nonnegative and ascending");
    last = t;
    // Factor out the slowest mode so the sum does not underflow.
    const double lead = eig.values(1);
    double s = 0.0;
    for (Eigen::Index k = 1; k < n; ++k) {
      const double c = coeff(k) * std::exp(-(eig.values(k) - lead) * t);
      s += c * c;
    }
    out.push_back(std::sqrt(s) * std::exp(-lead * t));
  }
  return out;
}

void write_series_csv(std::ostream& out, const std::string& value_column,
                      const std::vector<double>& values, std::uint64_t seed) {
  out << "# seed=" << seed << '\n';
  out << "step," << value_column << '\n';
  char buf[64];
  for (std::size_t l = 0; l < values.size(); ++l) {
    std::snprintf(buf, sizeof buf, "%.17g", values[l]);
    out << l << ',' << buf << '\n';
  }
}

}  // namespace nonet
