#include "nonet/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "nonet/errors.hpp"
#include "nonet/rng.hpp"
#include "nonet/spectral.hpp"

namespace nonet {
namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd centering(Eigen::Index n) {
  return Eigen::MatrixXd::Identity(n, n) -
         Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
}

double frob(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a.array() * b.array()).sum();
}

bool all_unit_weights(const NetworkOfNetworks& non) {
  return std::all_of(non.connecting_edges().begin(), non.connecting_edges().end(),
                     [](const ConnectingEdge& e) { return e.weight == 1.0; });
}

bool equal_sizes(const NetworkOfNetworks& non) {
  const auto s = non.sizes();
  return std::all_of(s.begin(), s.end(), [&](std::size_t v) { return v == s.front(); });
}

// Everything the second-order sums need: the block basis, the couplings
// a_mi = w_m' B w_i between nonconstant subgraph modes m and basis vectors i,
// and the subgraph eigenvalues lambda_m.
struct SecondOrderData {
  Lemma1Basis basis;
  Eigen::MatrixXd a;       // (N-D) x (D-1)
  Eigen::VectorXd lambda;  // N-D
  Eigen::MatrixXd kernel;  // 1 / (l_m + l_n - l_m l_n)

  double entry(std::size_t k, std::size_t l, std::size_t i, std::size_t j) const {
    const auto& b = basis.b_quadratics;
    const auto ki = static_cast<Eigen::Index>(k), li = static_cast<Eigen::Index>(l);
    const auto ii = static_cast<Eigen::Index>(i), ji = static_cast<Eigen::Index>(j);
    double t1 = 0.0;
    double t2 = 0.0;
    if (l == j) {
      t1 = (1 - b(ji)) * (1 - b(li)) *
           (a.col(ki).array() * a.col(ii).array() / lambda.array()).sum();
    }
    if (k == i) {
      t2 = (1 - b(ii)) * (1 - b(ki)) *
           (a.col(li).array() * a.col(ji).array() / lambda.array()).sum();
    }
    const Eigen::VectorXd u = a.col(ki).cwiseProduct(a.col(ii));
    const Eigen::VectorXd v = a.col(li).cwiseProduct(a.col(ji));
    return t1 + t2 + u.dot(kernel * v);
  }
};

SecondOrderData second_order_data(const NetworkOfNetworks& non, double beta) {
  SecondOrderData data;
  data.basis = lemma1_basis(non, beta);
  const auto n = static_cast<Eigen::Index>(non.node_count());
  const auto d = static_cast<Eigen::Index>(non.subgraph_count());
  Eigen::MatrixXd modes = Eigen::MatrixXd::Zero(n, n - d);
  data.lambda.resize(n - d);
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < non.subgraph_count(); ++k) {
    const SymmetricEigen eig = eigen_decompose(laplacian(non.subgraph(k)));
    const auto off = static_cast<Eigen::Index>(non.offset(k));
    for (Eigen::Index m = 1; m < eig.values.size(); ++m, ++col) {
      const double l = eig.values(m);
      if (!(l > 0.0 && l < 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "subgraph " << k << " Laplacian eigenvalue " << l
            << " outside (0, 1); reduce the intra-subgraph weights";
        throw ModelError(msg.str());
      }
      data.lambda(col) = l;
      modes.block(off, col, eig.values.size(), 1) = eig.vectors.col(m);
    }
  }
  const Eigen::MatrixXd b = beta * lifted_connecting_laplacian(non).matrix();
  data.a = modes.transpose() * (b * data.basis.vectors);
  const Eigen::Index r = data.lambda.size();
  data.kernel.resize(r, r);
  for (Eigen::Index m = 0; m < r; ++m)
    for (Eigen::Index q = 0; q < r; ++q) {
      const double lm = data.lambda(m), lq = data.lambda(q);
      data.kernel(m, q) = 1.0 / (lm + lq - lm * lq);
    }
  return data;
}

}  // namespace

std::optional<ActivationMode> parse_activation_mode(std::string_view name) {
  if (name == "joint") return ActivationMode::joint;
  if (name == "iid") return ActivationMode::iid;
  return std::nullopt;
}

std::string_view to_string(ActivationMode mode) {
  return mode == ActivationMode::joint ? "joint" : "iid";
}

double rho_ess(const SymmetricMatrix& abar) {
  const Eigen::VectorXd values = eigenvalues(abar);
  const Eigen::Index n = values.size();
  if (n < 2) throw SpectrumError("rho_ess needs at least two nodes");
  if (values(n - 1) - values(n - 2) <= 1e-10 * spectral_scale(values)) {
    throw SpectrumError("top eigenvalue is not simple");
  }
  return values(n - 2);
}

double rho_ess_spa(const NetworkOfNetworks& non, double p, double beta, int order) {
  if (order == 1) return 1.0 - spa1_gap(non, p * beta);
  if (order == 2) return 1.0 - spa2_gap(non, p * beta);
  throw ModelError("perturbation order must be 1 or 2");
}

MeanSquareOperator::MeanSquareOperator(const NetworkOfNetworks& non, double p, double beta,
                                       ActivationMode mode)
    : variance_(p * (1.0 - p)), mode_(mode) {
  const ConsensusMatrices cm = consensus_matrices(non, {beta, p, 0.0});
  const Eigen::MatrixXd proj = centering(cm.abar.dim());
  m_ = proj * cm.abar.matrix() * proj;
  for (const auto& e : non.connecting_edges()) {
    edges_.push_back({static_cast<Eigen::Index>(non.bridge_global(e.i)),
                      static_cast<Eigen::Index>(non.bridge_global(e.j)), beta * e.weight});
  }
}

Eigen::MatrixXd MeanSquareOperator::apply(const Eigen::MatrixXd& x) const {
  if (x.rows() != dim() || x.cols() != dim()) {
    throw ModelError("mean-square operator: dimension mismatch");
  }
  Eigen::MatrixXd y = m_ * x * m_;
  if (variance_ == 0.0) return y;
  if (mode_ == ActivationMode::iid) {
    for (const auto& e : edges_) {
      const double q = variance_ * e.c * e.c * (x(e.r, e.r) + x(e.s, e.s) - 2.0 * x(e.r, e.s));
      y(e.r, e.r) += q;
      y(e.s, e.s) += q;
      y(e.r, e.s) -= q;
      y(e.s, e.r) -= q;
    }
    return y;
  }
  // B X B only touches the bridge rows and columns.
  std::vector<Eigen::Index> idx;
  for (const auto& e : edges_) {
    idx.push_back(e.r);
    idx.push_back(e.s);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  const auto k = static_cast<Eigen::Index>(idx.size());
  auto local = [&](Eigen::Index g) {
    return static_cast<Eigen::Index>(std::lower_bound(idx.begin(), idx.end(), g) - idx.begin());
  };
  Eigen::MatrixXd bb = Eigen::MatrixXd::Zero(k, k);
  for (const auto& e : edges_) {
    const auto r = local(e.r), s = local(e.s);
    bb(r, r) += e.c;
    bb(s, s) += e.c;
    bb(r, s) -= e.c;
    bb(s, r) -= e.c;
  }
  const Eigen::MatrixXd xb = x(idx, idx);
  y(idx, idx) += variance_ * bb * xb * bb;
  return y;
}

Eigen::MatrixXd MeanSquareOperator::kronecker() const {
  const Eigen::Index n = dim();
  Eigen::MatrixXd k = kron(m_, m_);
  if (variance_ == 0.0) return k;
  auto edge_matrix = [n](const EdgeTerm& e) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    b(e.r, e.r) = b(e.s, e.s) = e.c;
    b(e.r, e.s) = b(e.s, e.r) = -e.c;
    return b;
  };
  if (mode_ == ActivationMode::iid) {
    for (const auto& e : edges_) {
      const Eigen::MatrixXd b = edge_matrix(e);
      k += variance_ * kron(b, b);
    }
  } else {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges_) b += edge_matrix(e);
    k += variance_ * kron(b, b);
  }
  return k;
}

Eigen::MatrixXd ms_operator_apply(const Eigen::MatrixXd& x, const NetworkOfNetworks& non,
                                  double p, double beta, ActivationMode mode) {
  return MeanSquareOperator(non, p, beta, mode).apply(x);
}

double ms_spectral_radius(const NetworkOfNetworks& non, double p, double beta,
                          ActivationMode mode, const KrylovOptions& options) {
  const MeanSquareOperator op(non, p, beta, mode);
  const Eigen::Index n = op.dim();
  const Eigen::MatrixXd proj = centering(n);

  std::mt19937_64 engine(options.seed);
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) r(i, j) = standard_normal(engine);
  Eigen::MatrixXd start = proj * r * r.transpose() * proj;
  start = 0.5 * (start + start.transpose());

  // The operator lives on symmetric matrices orthogonal to the constant
  // directions, of dimension n(n-1)/2; the Krylov space cannot exceed it.
  const std::size_t space = static_cast<std::size_t>(n * (n - 1) / 2);
  const std::size_t basis_cap = std::max<std::size_t>(2, std::min(options.max_basis, space));

  std::size_t applications = 0;
  double theta = 0.0;
  double previous = 0.0;
  while (true) {
    std::vector<Eigen::MatrixXd> v;
    std::vector<double> alpha;
    std::vector<double> beta_sub;
    start /= std::sqrt(frob(start, start));
    v.push_back(start);
    Eigen::MatrixXd ritz;
    for (std::size_t j = 0; j < basis_cap; ++j) {
      Eigen::MatrixXd w = op.apply(v[j]);
      ++applications;
      alpha.push_back(frob(w, v[j]));
      // Full reorthogonalization, twice.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : v) w -= frob(w, q) * q;
      const double next = std::sqrt(frob(w, w));

      const auto m = static_cast<Eigen::Index>(alpha.size());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(
                                        beta_sub.data(), m - 1))
                                  : Eigen::VectorXd(0);
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      previous = theta;
      theta = tri.eigenvalues()(m - 1);
      const double residual = next * std::abs(tri.eigenvectors()(m - 1, m - 1));
      const bool exhausted = next <= 1e-14 * std::max(1.0, std::abs(theta)) ||
                             static_cast<std::size_t>(m) >= space;
      if (residual <= options.tol * std::abs(theta) || exhausted) return std::abs(theta);
      if (applications >= options.max_iterations) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "mean-square spectral radius did not converge after " << applications
            << " operator applications (last iterates " << previous << ", " << theta << ")";
        throw ConvergenceError(msg.str());
      }
      if (j + 1 == basis_cap) {
        ritz = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index k = 0; k < m; ++k) ritz += tri.eigenvectors()(k, m - 1) * v[k];
        break;
      }
      beta_sub.push_back(next);
      v.push_back(w / next);
    }
    start = ritz;
  }
}

double ms_spectral_radius_dense(const NetworkOfNetworks& non, double p, double beta,
                                ActivationMode mode) {
  const MeanSquareOperator op(non, p, beta, mode);
  const Eigen::VectorXd values = eigen_decompose(op.kronecker()).values;
  return spectral_scale(values);
}

Lemma1Basis lemma1_basis(const NetworkOfNetworks& non, double beta) {
  const auto n = static_cast<Eigen::Index>(non.node_count());
  const auto d = static_cast<Eigen::Index>(non.subgraph_count());
  Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(n, d);
  Eigen::VectorXd ones_coords(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const auto sz = static_cast<Eigen::Index>(non.size(static_cast<std::size_t>(k)));
    const auto off = static_cast<Eigen::Index>(non.offset(static_cast<std::size_t>(k)));
    blocks.block(off, k, sz, 1).setConstant(1.0 / std::sqrt(static_cast<double>(sz)));
    ones_coords(k) = std::sqrt(static_cast<double>(sz) / static_cast<double>(n));
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones_coords);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd complement = q.rightCols(d - 1);

  // U' B U in block coordinates is beta * R^{-1/2} L_con R^{-1/2}.
  const Eigen::MatrixXd h =
      complement.transpose() * (beta * generalized_laplacian(non).matrix()) * complement;
  const SymmetricEigen eig = eigen_decompose(h);
  Lemma1Basis basis;
  basis.vectors = blocks * (complement * eig.vectors);
  for (Eigen::Index k = 0; k < basis.vectors.cols(); ++k) fix_sign(basis.vectors.col(k));
  basis.b_quadratics = eig.values;
  return basis;
}

double first_order_coefficient(const Lemma1Basis& basis, std::size_t i, std::size_t j) {
  const double bi = basis.b_quadratics(static_cast<Eigen::Index>(i));
  const double bj = basis.b_quadratics(static_cast<Eigen::Index>(j));
  return -bi - bj + bi * bj;
}

double ms_spa1(const NetworkOfNetworks& non, double p, double beta) {
  const Lemma1Basis basis = lemma1_basis(non, beta);
  const auto k = static_cast<std::size_t>(basis.b_quadratics.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      best = std::max(best, 1.0 + p * first_order_coefficient(basis, i, j));
  return best;
}

double ms_closed_form_d2(std::size_t n1, std::size_t n2, double p, double beta) {
  if (n1 == 0 || n2 == 0) throw ModelError("subgraph sizes must be positive");
  const double x = static_cast<double>(n1 + n2) / (static_cast<double>(n1) * static_cast<double>(n2));
  return 1.0 - 2.0 * p * beta * x + p * beta * beta * x * x;
}

double ms_closed_form_equal(std::size_t d, std::size_t n, double lambda2_con, double p,
                            double beta) {
  if (d == 0 || n == 0 || n % d != 0) throw ModelError("D must divide N");
  const double x = static_cast<double>(d) / static_cast<double>(n) * lambda2_con;
  return 1.0 - p * (2.0 * beta * x - beta * beta * x * x);
}

double iid_ms_spa1(const NetworkOfNetworks& non, double p, double beta) {
  const Lemma1Basis basis = lemma1_basis(non, beta);
  const Eigen::Index k = basis.b_quadratics.size();
  const Eigen::MatrixXd h = basis.b_quadratics.asDiagonal();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(k, k);
  Eigen::MatrixXd f = -kron(h, eye) - kron(eye, h);
  for (const auto& e : non.connecting_edges()) {
    const Eigen::VectorXd g =
        basis.vectors.row(static_cast<Eigen::Index>(non.bridge_global(e.i))).transpose() -
        basis.vectors.row(static_cast<Eigen::Index>(non.bridge_global(e.j))).transpose();
    const Eigen::MatrixXd he = beta * e.weight * g * g.transpose();
    f += kron(he, he);
  }
  return 1.0 + p * eigen_decompose(SymmetricMatrix(f)).values.maxCoeff();
}

bool iid_bound_check(const NetworkOfNetworks& non, double p, double beta) {
  return iid_ms_spa1(non, p, beta) <= ms_spa1(non, p, beta) + 1e-12;
}

SecondOrderTerm ms_second_order(const NetworkOfNetworks& non, double beta, std::size_t i,
                                std::size_t j) {
  const SecondOrderData data = second_order_data(non, beta);
  const auto k = static_cast<std::size_t>(data.basis.b_quadratics.size());
  if (i >= k || j >= k) throw ModelError("second-order pair index out of range");
  SecondOrderTerm t{i, j, 0.0, 0.0, 0.0};
  const auto& b = data.basis.b_quadratics;
  const auto ii = static_cast<Eigen::Index>(i), ji = static_cast<Eigen::Index>(j);
  const double si = (data.a.col(ii).array().square() / data.lambda.array()).sum();
  const double sj = (data.a.col(ji).array().square() / data.lambda.array()).sum();
  t.lower = (1 - b(ji)) * (1 - b(ji)) * si + (1 - b(ii)) * (1 - b(ii)) * sj;
  t.upper = t.lower + si * data.a.col(ji).squaredNorm();
  t.value = data.entry(i, j, i, j);
  return t;
}

std::vector<SecondOrderTerm> ms_second_order_table(const NetworkOfNetworks& non, double beta) {
  const auto k = non.subgraph_count() - 1;
  std::vector<SecondOrderTerm> rows;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) rows.push_back(ms_second_order(non, beta, i, j));
  return rows;
}

double ms_spa2(const NetworkOfNetworks& non, double p, double beta) {
  const SecondOrderData data = second_order_data(non, beta);
  const auto k = static_cast<std::size_t>(data.basis.b_quadratics.size());
  double top = -std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const double f = first_order_coefficient(data.basis, i, j);
      top = std::max(top, f);
      scale = std::max(scale, std::abs(f));
    }
  std::vector<std::pair<std::size_t, std::size_t>> group;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (top - first_order_coefficient(data.basis, i, j) <= kDegenerateTolerance * scale) {
        group.emplace_back(i, j);
      }
  const auto g = static_cast<Eigen::Index>(group.size());
  Eigen::MatrixXd second(g, g);
  for (Eigen::Index r = 0; r < g; ++r)
    for (Eigen::Index c = 0; c < g; ++c)
      second(r, c) = data.entry(group[r].first, group[r].second, group[c].first, group[c].second);
  return 1.0 + p * top + p * p * eigen_decompose(SymmetricMatrix(second)).values.maxCoeff();
}

MeanSquareReport analyze_mean_square(const NetworkOfNetworks& non, double p, double beta,
                                     ActivationMode mode, const KrylovOptions& options) {
  MeanSquareReport report;
  report.mode = mode;
  report.rho_exact = ms_spectral_radius(non, p, beta, mode, options);
  if (non.node_count() <= kDenseOracleMaxNodes) {
    report.rho_oracle = ms_spectral_radius_dense(non, p, beta, mode);
  }
  if (mode == ActivationMode::joint) {
    report.spa1 = ms_spa1(non, p, beta);
    try {
      report.spa2 = ms_spa2(non, p, beta);
      report.second_order = ms_second_order_table(non, beta);
    } catch (const ModelError&) {
      // Subgraph spectrum outside (0, 1): no second-order expansion.
    }
    if (all_unit_weights(non)) {
      if (non.subgraph_count() == 2) {
        report.closed_form = ms_closed_form_d2(non.size(0), non.size(1), p, beta);
      } else if (equal_sizes(non)) {
        const double l2 = spectral_gap(connecting_laplacian(non));
        report.closed_form =
            ms_closed_form_equal(non.subgraph_count(), non.node_count(), l2, p, beta);
      }
    }
  } else {
    report.spa1 = iid_ms_spa1(non, p, beta);
  }
  return report;
}

}  // namespace nonet
