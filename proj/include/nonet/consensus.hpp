#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "nonet/matrix.hpp"
#include "nonet/network.hpp"

namespace nonet {

// joint: every connecting edge shares one Bernoulli(p) activation per step.
// iid: each connecting edge has its own.
enum class ActivationMode { joint, iid };

std::optional<ActivationMode> parse_activation_mode(std::string_view name);
std::string_view to_string(ActivationMode mode);

/// Second-largest eigenvalue of a symmetric matrix whose top eigenvalue 1 is
/// simple. SpectrumError otherwise.
double rho_ess(const SymmetricMatrix& abar);

// 1 - spa1_gap(non, p * beta) or 1 - spa2_gap(non, p * beta).
double rho_ess_spa(const NetworkOfNetworks& non, double p, double beta, int order);

/// The mean-square operator X -> (P Abar P) X (P Abar P) + p(1-p) B X B
/// (joint) or + p(1-p) sum_e B_e X B_e (iid), on symmetric N x N matrices.
class MeanSquareOperator {
 public:
  MeanSquareOperator(const NetworkOfNetworks& non, double p, double beta, ActivationMode mode);

  Eigen::Index dim() const { return m_.rows(); }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;

  // P Abar P.
  const Eigen::MatrixXd& projected_mean() const { return m_; }
  // Dense N^2 x N^2 matrix of the operator acting on column-stacked X.
  Eigen::MatrixXd kronecker() const;

 private:
  struct EdgeTerm {
    Eigen::Index r;
    Eigen::Index s;
    double c;
  };
  Eigen::MatrixXd m_;
  std::vector<EdgeTerm> edges_;
  double variance_;
  ActivationMode mode_;
};

Eigen::MatrixXd ms_operator_apply(const Eigen::MatrixXd& x, const NetworkOfNetworks& non,
                                  double p, double beta, ActivationMode mode);

struct KrylovOptions {
  double tol = 1e-10;
  std::size_t max_iterations = 100000;  // operator applications
  std::size_t max_basis = 400;          // restart length
  std::uint64_t seed = 0x6d73726164ULL;
};

/// rho of the mean-square operator by restarted Lanczos on the symmetric
/// matrices (trace inner product), started from P R R' P with R standard
/// normal. Converged when the top Ritz residual is <= tol * |theta|.
/// ConvergenceError at the iteration cap.
double ms_spectral_radius(const NetworkOfNetworks& non, double p, double beta,
                          ActivationMode mode, const KrylovOptions& options = {});

// Full eigensolve of the N^2 x N^2 Kronecker lift. Small N only.
double ms_spectral_radius_dense(const NetworkOfNetworks& non, double p, double beta,
                                ActivationMode mode);

/// Orthonormal w_1..w_{D-1}: block-constant, orthogonal to 1, with
/// w_i' B w_j = 0 for i != j. Sorted by ascending b_i = w_i' B w_i.
struct Lemma1Basis {
  Eigen::MatrixXd vectors;  // N x (D-1)
  Eigen::VectorXd b_quadratics;
};

Lemma1Basis lemma1_basis(const NetworkOfNetworks& non, double beta);

// First-order coefficient -b_i - b_j + b_i b_j.
double first_order_coefficient(const Lemma1Basis& basis, std::size_t i, std::size_t j);

// max over all (D-1)^2 pairs of 1 + p * f_ij.
double ms_spa1(const NetworkOfNetworks& non, double p, double beta);

double ms_closed_form_d2(std::size_t n1, std::size_t n2, double p, double beta);
double ms_closed_form_equal(std::size_t d, std::size_t n, double lambda2_con, double p,
                            double beta);

// First-order rate with independent edge activations: 1 + p * lambda_max(F),
// F = -(H x I) - (I x H) + sum_e H_e x H_e in the block basis.
double iid_ms_spa1(const NetworkOfNetworks& non, double p, double beta);
bool iid_bound_check(const NetworkOfNetworks& non, double p, double beta);

struct SecondOrderTerm {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Second-order coefficient of the (i, j) eigenvalue branch (0-based block basis
/// indices), joint mode. Independent of p. Requires every nonzero subgraph
/// Laplacian eigenvalue to lie in (0, 1).
SecondOrderTerm ms_second_order(const NetworkOfNetworks& non, double beta, std::size_t i,
                                std::size_t j);
std::vector<SecondOrderTerm> ms_second_order_table(const NetworkOfNetworks& non, double beta);

// 1 + p f + p^2 C for the dominant branch; a degenerate top group is
// resolved by diagonalizing the second-order matrix inside it.
double ms_spa2(const NetworkOfNetworks& non, double p, double beta);

struct MeanSquareReport {
  ActivationMode mode = ActivationMode::joint;
  double rho_exact = 0.0;
  std::optional<double> rho_oracle;
  double spa1 = 0.0;
  std::optional<double> spa2;
  std::optional<double> closed_form;
  std::vector<SecondOrderTerm> second_order;
};

inline constexpr std::size_t kDenseOracleMaxNodes = 12;

MeanSquareReport analyze_mean_square(const NetworkOfNetworks& non, double p, double beta,
                                     ActivationMode mode, const KrylovOptions& options = {});

}  // namespace nonet
