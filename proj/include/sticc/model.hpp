#pragma once
// Block-Toeplitz precision matrices and the Gaussian cluster models built
// from them.

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sticc {

// blocks[r] holds the dim x dim coupling at lag r; blocks[0] must be
// symmetric since it sits on the diagonal of the assembled matrix.
struct ToeplitzPrecision {
  std::vector<Eigen::MatrixXd> blocks;
  int radius = 0;
  int dim = 0;
};

inline ToeplitzPrecision make_toeplitz(std::vector<Eigen::MatrixXd> blocks) {
  ToeplitzPrecision tp;
  tp.radius = static_cast<int>(blocks.size());
  if (tp.radius == 0) throw std::invalid_argument("toeplitz: need at least one block");
  tp.dim = static_cast<int>(blocks[0].rows());
  for (const auto& b : blocks)
    if (b.rows() != tp.dim || b.cols() != tp.dim)
      throw std::invalid_argument("toeplitz: blocks must all be dim x dim");
  const double scale = 1.0 + blocks[0].cwiseAbs().maxCoeff();
  if ((blocks[0] - blocks[0].transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("toeplitz: lag-0 block must be symmetric");
  tp.blocks = std::move(blocks);
  return tp;
}

// Dense dim*radius square matrix with block (i,j) = blocks[i-j] below the
// diagonal and its transpose mirrored above.
inline Eigen::MatrixXd assemble(const ToeplitzPrecision& tp) {
  const int d = tp.dim, r = tp.radius;
  Eigen::MatrixXd theta(d * r, d * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i >= j)
        theta.block(i * d, j * d, d, d) = tp.blocks[i - j];
      else
        theta.block(i * d, j * d, d, d) = tp.blocks[j - i].transpose();
    }
  return theta;
}

struct EmpiricalStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;  // population-normalized (divide by m)
};

inline EmpiricalStats empirical_stats(const std::vector<Eigen::VectorXd>& members) {
  if (members.empty())
    throw std::invalid_argument("empirical_stats: need at least one member");
  const auto n = members[0].size();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  for (const auto& x : members) {
    if (x.size() != n)
      throw std::invalid_argument("empirical_stats: member length mismatch");
    mean += x;
  }
  mean /= static_cast<double>(members.size());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  for (const auto& x : members) {
    Eigen::VectorXd c = x - mean;
    cov.noalias() += c * c.transpose();
  }
  cov /= static_cast<double>(members.size());
  return {std::move(mean), std::move(cov)};
}

class ClusterModel {
 public:
  ClusterModel(Eigen::VectorXd mean, ToeplitzPrecision precision, int member_count)
      : mean_(std::move(mean)),
        precision_(std::move(precision)),
        member_count_(member_count) {
    if (precision_.dim * precision_.radius != mean_.size())
      throw std::invalid_argument("cluster model: mean length must be dim*radius");
    theta_ = assemble(precision_);
    Eigen::LLT<Eigen::MatrixXd> llt(theta_);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("cluster model: precision is not positive definite");
    log_det_ = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) log_det_ += 2.0 * std::log(l(i, i));
  }

  const Eigen::VectorXd& mean() const { return mean_; }
  const ToeplitzPrecision& precision() const { return precision_; }
  const Eigen::MatrixXd& theta() const { return theta_; }
  double log_det() const { return log_det_; }
  int member_count() const { return member_count_; }

  // Gaussian log density of a stacked subregion vector under this model.
  double log_likelihood(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd c = x - mean_;
    const double quad = c.dot(theta_ * c);
    const double n = static_cast<double>(mean_.size());
    return -0.5 * quad + 0.5 * log_det_ -
           0.5 * n * std::log(2.0 * std::numbers::pi);
  }

 private:
  Eigen::VectorXd mean_;
  ToeplitzPrecision precision_;
  Eigen::MatrixXd theta_;
  double log_det_ = 0.0;
  int member_count_ = 0;
};

inline double log_likelihood(const ClusterModel& model, const Eigen::VectorXd& x) {
  return model.log_likelihood(x);
}

// Sum of absolute off-diagonal entries of the assembled matrix.
inline double offdiagonal_l1(const ToeplitzPrecision& tp) {
  const Eigen::MatrixXd theta = assemble(tp);
  double s = 0.0;
  for (Eigen::Index i = 0; i < theta.rows(); ++i)
    for (Eigen::Index j = 0; j < theta.cols(); ++j)
      if (i != j) s += std::abs(theta(i, j));
  return s;
}

}  // namespace sticc
