#include "nonet/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "nonet/errors.hpp"

namespace nonet {

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw ModelError("SymmetricMatrix: matrix is not square");
  }
  const Eigen::MatrixXd t = m_.transpose();
  m_ = 0.5 * (m_ + t);
}

SymmetricMatrix SymmetricMatrix::zero(Eigen::Index n) {
  return SymmetricMatrix(Eigen::MatrixXd::Zero(n, n));
}

SymmetricMatrix SymmetricMatrix::identity(Eigen::Index n) {
  return SymmetricMatrix(Eigen::MatrixXd::Identity(n, n));
}

SymmetricEigen eigen_decompose(const Eigen::MatrixXd& symmetric) {
  // Householder tridiagonalization followed by implicit symmetric QR.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw SpectrumError("symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SymmetricEigen eigen_decompose(const SymmetricMatrix& m) { return eigen_decompose(m.matrix()); }

Eigen::VectorXd eigenvalues(const SymmetricMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw SpectrumError("symmetric eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double spectral_scale(const Eigen::VectorXd& ascending) {
  if (ascending.size() == 0) return 0.0;
  return std::max(std::abs(ascending(0)), std::abs(ascending(ascending.size() - 1)));
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v, double tol) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > tol) {
      if (v(k) < 0) v = -v;
      return;
    }
  }
}

}  // namespace nonet
