#include "nonet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nonet/errors.hpp"

namespace nonet {
namespace {

// One group of (numerically) equal nonzero eigenvalues of M, together with
// the second-order interaction restricted to it.
struct BranchGroup {
  Eigen::VectorXd lambda;  // group eigenvalues of M
  Eigen::MatrixXd basis;   // D x g eigenvectors of M
};

std::vector<BranchGroup> nonzero_groups(const SymmetricEigen& m_eig) {
  const Eigen::Index d = m_eig.values.size();
  const double tol = kDegenerateTolerance * spectral_scale(m_eig.values);
  std::vector<BranchGroup> groups;
  Eigen::Index start = 1;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && m_eig.values(end) - m_eig.values(end - 1) <= tol) ++end;
    groups.push_back({m_eig.values.segment(start, end - start),
                      m_eig.vectors.middleCols(start, end - start)});
    start = end;
  }
  return groups;
}

void require_connected_backbone(const SymmetricEigen& m_eig) {
  const double cut = kZeroEigenTolerance * spectral_scale(m_eig.values);
  if (m_eig.values.size() < 2 || m_eig.values(1) <= cut) {
    throw SpectrumError("lambda_2 of the generalized Laplacian is zero: connecting graph is "
                        "disconnected");
  }
}

// Second-order branches of one group: eigenpairs of
// eps * Lambda - eps^2 * Lambda (U' S U) Lambda.
SymmetricEigen second_order_group(const BranchGroup& g, const Eigen::VectorXd& s_hat,
                                  double epsilon) {
  const Eigen::MatrixXd projected = g.basis.transpose() * s_hat.asDiagonal() * g.basis;
  const Eigen::MatrixXd t = epsilon * Eigen::MatrixXd(g.lambda.asDiagonal()) -
                            epsilon * epsilon * g.lambda.asDiagonal() * projected *
                                g.lambda.asDiagonal();
  return eigen_decompose(SymmetricMatrix(t));
}

Eigen::VectorXd s_hat_vector(const NetworkOfNetworks& non) {
  const auto s = s_hat_diagonal(non);
  return Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
}

}  // namespace

double spectral_gap(const SymmetricMatrix& laplacian) {
  if (laplacian.dim() < 2) throw SpectrumError("spectral gap needs at least two nodes");
  const Eigen::VectorXd values = eigenvalues(laplacian);
  const double cut = kZeroEigenTolerance * spectral_scale(values);
  if (values(1) <= cut) {
    Eigen::Index zeros = 0;
    while (zeros < values.size() && values(zeros) <= cut) ++zeros;
    std::ostringstream msg;
    msg << "zero eigenvalue is not simple (multiplicity " << zeros << ")";
    throw SpectrumError(msg.str());
  }
  return values(1);
}

SymmetricMatrix generalized_laplacian(const NetworkOfNetworks& non) {
  const auto d = static_cast<Eigen::Index>(non.subgraph_count());
  Eigen::VectorXd inv_sqrt(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    inv_sqrt(k) = 1.0 / std::sqrt(static_cast<double>(non.size(static_cast<std::size_t>(k))));
  }
  return SymmetricMatrix(inv_sqrt.asDiagonal() * connecting_laplacian(non).matrix() *
                         inv_sqrt.asDiagonal());
}

std::vector<double> s_hat_diagonal(const NetworkOfNetworks& non) {
  std::vector<double> s(non.subgraph_count());
  for (std::size_t k = 0; k < s.size(); ++k) {
    s[k] = static_cast<double>(non.size(k)) * pinv_diagonal(non.subgraph(k))[non.bridges()[k]];
  }
  return s;
}

double spa1_gap(const NetworkOfNetworks& non, double epsilon) {
  const SymmetricEigen m_eig = eigen_decompose(generalized_laplacian(non));
  require_connected_backbone(m_eig);
  return epsilon * m_eig.values(1);
}

double spa2_gap(const NetworkOfNetworks& non, double epsilon) {
  const SymmetricEigen m_eig = eigen_decompose(generalized_laplacian(non));
  require_connected_backbone(m_eig);
  const auto groups = nonzero_groups(m_eig);
  const Eigen::VectorXd s_hat = s_hat_vector(non);
  const BranchGroup& first = groups.front();
  if (first.lambda.size() == 1) {
    const double lambda2 = first.lambda(0);
    const Eigen::VectorXd u2 = first.basis.col(0);
    return epsilon * lambda2 -
           epsilon * epsilon * lambda2 * lambda2 * u2.dot(s_hat.asDiagonal() * u2);
  }
  return second_order_group(first, s_hat, epsilon).values(0);
}

std::vector<double> perturbed_spectrum(const NetworkOfNetworks& non, double epsilon, int order) {
  if (order != 1 && order != 2) throw ModelError("perturbation order must be 1 or 2");
  const SymmetricEigen m_eig = eigen_decompose(generalized_laplacian(non));
  require_connected_backbone(m_eig);
  std::vector<double> out;
  if (order == 1) {
    for (Eigen::Index k = 1; k < m_eig.values.size(); ++k) out.push_back(epsilon * m_eig.values(k));
  } else {
    const Eigen::VectorXd s_hat = s_hat_vector(non);
    for (const auto& g : nonzero_groups(m_eig)) {
      const auto branch = second_order_group(g, s_hat, epsilon);
      for (Eigen::Index k = 0; k < branch.values.size(); ++k) out.push_back(branch.values(k));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SpectralGapReport analyze_spectral_gap(const NetworkOfNetworks& non, double epsilon) {
  SpectralGapReport report;
  report.exact_gap = spectral_gap(supra_laplacian(non, epsilon));
  const SymmetricEigen m_eig = eigen_decompose(generalized_laplacian(non));
  require_connected_backbone(m_eig);
  report.spa1 = epsilon * m_eig.values(1);
  report.spa2 = spa2_gap(non, epsilon);
  report.m_hat_eigenvalues.assign(m_eig.values.data(), m_eig.values.data() + m_eig.values.size());
  report.s_hat_diag = s_hat_diagonal(non);

  const BranchGroup first = nonzero_groups(m_eig).front();
  Eigen::VectorXd fiedler = first.basis.col(0);
  if (first.lambda.size() > 1) {
    // The branch that attains spa2 picks a direction inside the eigenspace.
    const Eigen::VectorXd s_hat = s_hat_vector(non);
    fiedler = first.basis * second_order_group(first, s_hat, epsilon).vectors.col(0);
    fiedler.normalize();
  }
  fix_sign(fiedler);
  report.m_hat_fiedler.assign(fiedler.data(), fiedler.data() + fiedler.size());
  return report;
}

double gap_closed_form_d2(std::size_t n1, std::size_t n2, double epsilon, double weight) {
  if (n1 == 0 || n2 == 0) throw ModelError("subgraph sizes must be positive");
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  return epsilon * weight * (a + b) / (a * b);
}

double gap_closed_form_equal(std::size_t d, std::size_t n, double lambda2_con, double epsilon) {
  if (d == 0 || n == 0 || n % d != 0) throw ModelError("D must divide N");
  if (!(lambda2_con >= 0.0)) throw ModelError("lambda_2 of the connecting graph must be >= 0");
  return epsilon * (static_cast<double>(d) / static_cast<double>(n)) * lambda2_con;
}

}  // namespace nonet
