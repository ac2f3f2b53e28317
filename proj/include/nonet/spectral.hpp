#pragma once

#include <cstddef>
#include <vector>

#include "nonet/matrix.hpp"
#include "nonet/network.hpp"

namespace nonet {

// Two eigenvalues of the generalized Laplacian closer than this (relative to
// its largest eigenvalue) are handled as one degenerate group.
inline constexpr double kDegenerateTolerance = 1e-8;

struct SpectralGapReport {
  double exact_gap = 0.0;
  double spa1 = 0.0;
  double spa2 = 0.0;
  std::vector<double> m_hat_eigenvalues;  // ascending
  std::vector<double> m_hat_fiedler;      // unit norm, first nonzero entry > 0
  std::vector<double> s_hat_diag;
};

/// Second-smallest eigenvalue of a symmetric PSD matrix with a simple zero
/// eigenvalue. SpectrumError if the zero eigenvalue is repeated (a
/// disconnected graph).
double spectral_gap(const SymmetricMatrix& laplacian);

/// R^{-1/2} L_con R^{-1/2} on the D bridges, R = diag(N_1, ..., N_D).
SymmetricMatrix generalized_laplacian(const NetworkOfNetworks& non);

// N_k * L_k^+(s_k, s_k) for every subgraph.
std::vector<double> s_hat_diagonal(const NetworkOfNetworks& non);

/// First-order gap epsilon * lambda_2(M). Depends only on subgraph sizes and
/// the connecting graph.
double spa1_gap(const NetworkOfNetworks& non, double epsilon);

/// Second-order gap epsilon*lambda_2 - epsilon^2 * lambda_2^2 * u_2' S u_2.
///
/// When lambda_2(M) is repeated (e.g. a complete connecting graph over
/// equal-size subgraphs), the second-order interaction is diagonalized inside
/// the eigenspace and the smallest resulting branch is returned.
double spa2_gap(const NetworkOfNetworks& non, double epsilon);

/// Perturbative approximations of the D-1 smallest nonzero eigenvalues of the
/// supra-Laplacian, ascending. order is 1 or 2.
std::vector<double> perturbed_spectrum(const NetworkOfNetworks& non, double epsilon, int order);

SpectralGapReport analyze_spectral_gap(const NetworkOfNetworks& non, double epsilon);

// epsilon * weight * (N1 + N2) / (N1 * N2): two subgraphs joined by one edge.
double gap_closed_form_d2(std::size_t n1, std::size_t n2, double epsilon, double weight = 1.0);

// epsilon * (D / N) * lambda_2(L_con): D subgraphs of N / D nodes each.
double gap_closed_form_equal(std::size_t d, std::size_t n, double lambda2_con, double epsilon);

}  // namespace nonet
