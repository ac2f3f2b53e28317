#pragma once

#include <Eigen/Dense>

namespace nonet {

/// Dense real symmetric matrix. The input is symmetrized on construction,
/// so (i, j) and (j, i) are always bit-identical.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(Eigen::MatrixXd m);

  static SymmetricMatrix zero(Eigen::Index n);
  static SymmetricMatrix identity(Eigen::Index n);

  Eigen::Index dim() const { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const { return m_; }

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXd m_;
};

// Eigenpairs sorted by ascending eigenvalue; columns of `vectors` are
// orthonormal.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

SymmetricEigen eigen_decompose(const SymmetricMatrix& m);
SymmetricEigen eigen_decompose(const Eigen::MatrixXd& symmetric);
Eigen::VectorXd eigenvalues(const SymmetricMatrix& m);

// Largest eigenvalue magnitude of an ascending spectrum.
double spectral_scale(const Eigen::VectorXd& ascending);

// Flips `v` so that its first entry with |v_k| > tol is positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v, double tol = 1e-12);

}  // namespace nonet
