#pragma once
// Toeplitz graphical lasso solved with ADMM: minimize
//   -log det(Theta) + tr(S*Theta) + (lam/member_count) * sum_C |z_C|
// over block-Toeplitz Theta, where the z_C are the Toeplitz equivalence
// classes of off-diagonal entries.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sticc/model.hpp"

namespace sticc {

struct TglProblem {
  Eigen::MatrixXd S;     // empirical covariance, DR x DR
  double lam = 0.0;      // scalar broadcast over off-diagonal entries
  int member_count = 1;  // cluster size scaling the penalty
  int radius = 1;
  int dim = 1;
};

struct AdmmConfig {
  double rho = 1.0;
  int max_iter = 1000;
  double eps_abs = 1e-5;
  double eps_rel = 1e-5;
};

struct TglSolution {
  ToeplitzPrecision precision;
  bool converged = false;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

namespace detail {

// One Toeplitz equivalence class: the assembled-matrix entries that must
// share a value, plus whether the class sits on the diagonal (never
// penalized).
struct ToeplitzClass {
  std::vector<std::pair<int, int>> entries;
  bool diagonal = false;
};

inline std::vector<ToeplitzClass> toeplitz_classes(int radius, int dim) {
  std::vector<ToeplitzClass> classes;
  // Lag 0: diagonal blocks, one class per unordered within-block (i,j).
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      ToeplitzClass c;
      c.diagonal = (i == j);
      for (int b = 0; b < radius; ++b) {
        c.entries.emplace_back(b * dim + i, b * dim + j);
        if (i != j) c.entries.emplace_back(b * dim + j, b * dim + i);
      }
      classes.push_back(std::move(c));
    }
  // Lag r >= 1: ordered (i,j) pairs; symmetry pairs the transposed entry.
  for (int r = 1; r < radius; ++r)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        ToeplitzClass c;
        for (int b = 0; b + r < radius; ++b) {
          c.entries.emplace_back((b + r) * dim + i, b * dim + j);
          c.entries.emplace_back(b * dim + j, (b + r) * dim + i);
        }
        classes.push_back(std::move(c));
      }
  return classes;
}

inline double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

}  // namespace detail

// Proximal step for the smooth part: argmin -log det(Theta) + tr(S*Theta)
// + (rho/2)||Theta - Z + U||^2, via eigendecomposition of (Z - U) - S/rho
// with the eigenvalue map d -> (d + sqrt(d^2 + 4/rho)) / 2.
inline Eigen::MatrixXd theta_update(const Eigen::MatrixXd& z, const Eigen::MatrixXd& u,
                                    const Eigen::MatrixXd& s, double rho) {
  Eigen::MatrixXd m = z - u - s / rho;
  m = ((m + m.transpose()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("theta_update: eigendecomposition failed");
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i)
    d[i] = (d[i] + std::sqrt(d[i] * d[i] + 4.0 / rho)) / 2.0;
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

// Proximal step for the constraint + penalty: average each Toeplitz
// equivalence class of Theta+U, then soft-threshold off-diagonal classes by
// lam / (member_count * rho * c) where c is the class size.
inline Eigen::MatrixXd z_update(const Eigen::MatrixXd& theta_plus_u, double lam,
                                int member_count, double rho, int radius, int dim) {
  const int n = radius * dim;
  if (theta_plus_u.rows() != n || theta_plus_u.cols() != n)
    throw std::invalid_argument("z_update: shape mismatch");
  Eigen::MatrixXd z(n, n);
  for (const auto& cls : detail::toeplitz_classes(radius, dim)) {
    double sum = 0.0;
    for (auto [r, c] : cls.entries) sum += theta_plus_u(r, c);
    double v = sum / static_cast<double>(cls.entries.size());
    if (!cls.diagonal)
      v = detail::soft_threshold(
          v, lam / (member_count * rho * static_cast<double>(cls.entries.size())));
    for (auto [r, c] : cls.entries) z(r, c) = v;
  }
  return z;
}

// Objective the solver minimizes; +inf when Theta is not PD.
inline double tgl_objective(const TglProblem& p, const ToeplitzPrecision& tp) {
  const Eigen::MatrixXd theta = assemble(tp);
  Eigen::LLT<Eigen::MatrixXd> llt(theta);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  double log_det = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += 2.0 * std::log(l(i, i));
  double penalty = 0.0;
  for (const auto& cls : detail::toeplitz_classes(tp.radius, tp.dim))
    if (!cls.diagonal)
      penalty += std::abs(theta(cls.entries[0].first, cls.entries[0].second));
  return -log_det + (p.S * theta).trace() +
         p.lam / static_cast<double>(p.member_count) * penalty;
}

inline TglSolution solve(const TglProblem& p, const AdmmConfig& cfg = {},
                         const Eigen::MatrixXd* z_init = nullptr) {
  const int n = p.radius * p.dim;
  if (p.S.rows() != n || p.S.cols() != n)
    throw std::invalid_argument("tgl solve: S must be (radius*dim) square");
  const double s_scale = 1.0 + p.S.cwiseAbs().maxCoeff();
  if ((p.S - p.S.transpose()).cwiseAbs().maxCoeff() > 1e-8 * s_scale)
    throw std::invalid_argument("tgl solve: S must be symmetric");
  if (p.lam < 0) throw std::invalid_argument("tgl solve: lam must be >= 0");
  if (p.member_count < 1)
    throw std::invalid_argument("tgl solve: member_count must be >= 1");
  if (cfg.rho <= 0 || cfg.max_iter <= 0 || cfg.eps_abs <= 0 || cfg.eps_rel <= 0)
    throw std::invalid_argument("tgl solve: config values must be positive");

  // Rank-deficient S (tiny clusters) makes the problem ill-posed; add a
  // trace-scaled ridge. An exactly zero trace still needs a positive floor.
  Eigen::MatrixXd s = (p.S + p.S.transpose()) / 2.0;
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo <= 1e-10 * std::max(1.0, hi)) {
      double scale = s.trace() / static_cast<double>(n);
      if (scale <= 0) scale = 1.0;
      s += 1e-6 * scale * Eigen::MatrixXd::Identity(n, n);
    }
  }

  Eigen::MatrixXd z = z_init ? *z_init : Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(n, n);

  TglSolution sol;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    theta = theta_update(z, u, s, cfg.rho);
    Eigen::MatrixXd z_prev = z;
    z = z_update(theta + u, p.lam, p.member_count, cfg.rho, p.radius, p.dim);
    u += theta - z;

    sol.iterations = it;
    sol.primal_residual = (theta - z).norm();
    sol.dual_residual = cfg.rho * (z - z_prev).norm();
    const double eps_pri = n * cfg.eps_abs + cfg.eps_rel * std::max(theta.norm(), z.norm());
    const double eps_dual = n * cfg.eps_abs + cfg.eps_rel * cfg.rho * u.norm();
    if (sol.primal_residual <= eps_pri && sol.dual_residual <= eps_dual) {
      sol.converged = true;
      break;
    }
  }

  // Z is exactly block-Toeplitz by construction; read the blocks off its
  // first block column.
  std::vector<Eigen::MatrixXd> blocks(p.radius);
  for (int r = 0; r < p.radius; ++r) blocks[r] = z.block(r * p.dim, 0, p.dim, p.dim);
  sol.precision = make_toeplitz(std::move(blocks));

  // The thresholded projection can leave Z indefinite; shift the diagonal
  // just enough to restore positive definiteness.
  Eigen::LLT<Eigen::MatrixXd> llt(assemble(sol.precision));
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(z, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    const double shift = -lo + std::max(1e-8, 1e-8 * std::abs(hi));
    sol.precision.blocks[0] += shift * Eigen::MatrixXd::Identity(p.dim, p.dim);
  }
  return sol;
}

}  // namespace sticc
