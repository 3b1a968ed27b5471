#pragma once
// EM driver: initialize labels, then alternate assignment (E) and one
// Toeplitz graphical lasso solve per cluster (M) until the labels repeat.
//
// Descent is enforced rather than assumed: the E-step keeps the previous
// labels when they score better (also after empty-cluster repair), and the
// M-step keeps a cluster's previous model when the fresh solve scores worse
// on that cluster's share of the objective.

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sticc/assigner.hpp"
#include "sticc/baselines.hpp"
#include "sticc/dataset.hpp"
#include "sticc/model.hpp"
#include "sticc/rng.hpp"
#include "sticc/tgl.hpp"

namespace sticc {

struct SticcConfig {
  int k = 7;
  int radius = 3;
  double beta = 3.0;
  double lam = 0.1;
  int max_em_iter = 100;
  std::uint64_t seed = 0;
  enum class Init { kmeans, random } init = Init::kmeans;
  AdmmConfig admm{};
};

struct IterationStats {
  double objective = 0.0;   // likelihood + penalty + sparsity
  double likelihood = 0.0;  // sum of negative log likelihoods
  double penalty = 0.0;     // beta * disagreeing neighbour pairs
  double sparsity = 0.0;    // lam * off-diagonal l1 over all clusters
};

struct FitResult {
  Assignment assignment;
  std::vector<ClusterModel> models;
  std::vector<IterationStats> trace;  // one entry per full EM iteration
  int iterations = 0;
  bool converged = false;
};

inline std::vector<int> initialize(const SubregionSet& subs, const SticcConfig& cfg) {
  const int n = subs.size();
  if (cfg.k < 1 || cfg.k > n)
    throw std::invalid_argument("initialize: K must be in [1, N]");
  if (cfg.init == SticcConfig::Init::kmeans) {
    // Attribute scales can differ by orders of magnitude, which turns raw
    // Euclidean distance all but one-dimensional; standardize each axis
    // before clustering. A single Lloyd run also merges nearby centroids
    // often enough to hurt, so keep the best inertia of ten seeded starts.
    const int d = static_cast<int>(subs.stacked[0].size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (const auto& v : subs.stacked) mean += v;
    mean /= n;
    Eigen::VectorXd var = Eigen::VectorXd::Zero(d);
    for (const auto& v : subs.stacked) var += (v - mean).cwiseAbs2();
    var /= n;
    const Eigen::VectorXd scale = var.cwiseSqrt().cwiseMax(1e-12);
    std::vector<Eigen::VectorXd> rows(n);
    for (int i = 0; i < n; ++i) rows[i] = (subs.stacked[i] - mean).cwiseQuotient(scale);

    auto inertia = [&](const std::vector<int>& labels) {
      std::vector<Eigen::VectorXd> cent(cfg.k, Eigen::VectorXd::Zero(d));
      std::vector<int> cnt(cfg.k, 0);
      for (int i = 0; i < n; ++i) {
        cent[labels[i]] += rows[i];
        ++cnt[labels[i]];
      }
      for (int c = 0; c < cfg.k; ++c)
        if (cnt[c] > 0) cent[c] /= static_cast<double>(cnt[c]);
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += (rows[i] - cent[labels[i]]).squaredNorm();
      return s;
    };

    std::mt19937_64 seeds(cfg.seed);
    std::vector<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < 10; ++restart) {
      std::vector<int> labels = kmeans_rows(rows, cfg.k, 300, seeds());
      const double cost = inertia(labels);
      if (cost < best_cost) {
        best_cost = cost;
        best = std::move(labels);
      }
    }
    return best;
  }

  if (n == cfg.k) {
    // Pigeonhole: the only labeling with every cluster non-empty.
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i;
    return labels;
  }
  std::mt19937_64 gen(cfg.seed);
  std::vector<int> labels(n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<bool> present(cfg.k, false);
    for (int i = 0; i < n; ++i) {
      labels[i] = uniform_index(gen, cfg.k);
      present[labels[i]] = true;
    }
    bool all = true;
    for (bool p : present) all = all && p;
    if (all) return labels;
  }
  throw std::runtime_error("initialize: could not draw K non-empty clusters");
}

// Reseed each empty cluster with the point worst explained by its current
// cluster, never draining a cluster below one member.
inline std::vector<int> repair_empty(std::vector<int> labels,
                                     const Eigen::MatrixXd& node_costs, int k) {
  const int n = static_cast<int>(labels.size());
  if (n < k) throw std::invalid_argument("repair_empty: fewer points than clusters");
  std::vector<int> counts(k, 0);
  for (int l : labels) ++counts[l];
  for (int c = 0; c < k; ++c) {
    while (counts[c] == 0) {
      int worst = -1;
      double worst_cost = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        if (counts[labels[i]] < 2) continue;
        if (node_costs(i, labels[i]) > worst_cost) {
          worst_cost = node_costs(i, labels[i]);
          worst = i;
        }
      }
      if (worst < 0) throw std::runtime_error("repair_empty: no movable point");
      --counts[labels[worst]];
      labels[worst] = c;
      ++counts[c];
    }
  }
  return labels;
}

namespace detail {

inline double cluster_term(const ClusterModel& model, const SubregionSet& subs,
                           const std::vector<int>& labels, int cluster, double lam) {
  double t = lam * offdiagonal_l1(model.precision());
  for (int i = 0; i < subs.size(); ++i)
    if (labels[i] == cluster) t -= model.log_likelihood(subs.stacked[i]);
  return t;
}

inline std::vector<ClusterModel> m_step(const SubregionSet& subs,
                                        const std::vector<int>& labels,
                                        const SticcConfig& cfg,
                                        const std::vector<ClusterModel>* previous) {
  std::vector<ClusterModel> models;
  models.reserve(cfg.k);
  for (int c = 0; c < cfg.k; ++c) {
    std::vector<Eigen::VectorXd> members;
    for (int i = 0; i < subs.size(); ++i)
      if (labels[i] == c) members.push_back(subs.stacked[i]);
    const auto stats = empirical_stats(members);
    TglProblem problem{stats.covariance, cfg.lam, static_cast<int>(members.size()),
                       subs.radius, subs.dim};
    ClusterModel candidate(stats.mean, solve(problem, cfg.admm).precision,
                           static_cast<int>(members.size()));
    if (previous &&
        cluster_term(candidate, subs, labels, c, cfg.lam) >=
            cluster_term((*previous)[c], subs, labels, c, cfg.lam)) {
      models.push_back((*previous)[c]);
    } else {
      models.push_back(std::move(candidate));
    }
  }
  return models;
}

}  // namespace detail

inline FitResult fit(const GeoDataset& ds, const SticcConfig& cfg) {
  const int n = ds.count();
  if (cfg.k < 1 || cfg.k > n)
    throw std::invalid_argument("fit: K must be in [1, N]");
  if (cfg.beta < 0 || cfg.lam < 0)
    throw std::invalid_argument("fit: beta and lam must be >= 0");
  if (cfg.max_em_iter < 1)
    throw std::invalid_argument("fit: max_em_iter must be >= 1");
  if (cfg.k > 1) {
    bool all_same = true;
    for (const auto& p : ds.points)
      all_same = all_same && p.coord == ds.points[0].coord && p.attrs == ds.points[0].attrs;
    if (all_same) throw std::runtime_error("fit: all points identical, cannot split");
  }

  const SubregionSet subs = build_subregions(ds, cfg.radius);
  std::vector<int> labels = initialize(subs, cfg);
  std::vector<ClusterModel> models = detail::m_step(subs, labels, cfg, nullptr);

  FitResult result;
  std::optional<Eigen::MatrixXd> carried_costs;
  for (int iter = 1; iter <= cfg.max_em_iter; ++iter) {
    const std::vector<int> prev = labels;
    Eigen::MatrixXd costs =
        carried_costs ? std::move(*carried_costs) : node_costs(subs, models);

    Assignment a = assign_with_costs(costs, subs.nearest_subregion, cfg.beta, &prev);
    labels = std::move(a.labels);
    std::vector<int> counts(cfg.k, 0);
    for (int l : labels) ++counts[l];
    bool has_empty = false;
    for (int c : counts) has_empty = has_empty || c == 0;
    if (has_empty) {
      std::vector<int> repaired = repair_empty(labels, costs, cfg.k);
      // Re-apply the safeguard: repair may cost more than last iteration's
      // labels, which are known to be non-empty.
      if (assignment_cost(costs, subs.nearest_subregion, prev, cfg.beta) <=
          assignment_cost(costs, subs.nearest_subregion, repaired, cfg.beta))
        labels = prev;
      else
        labels = std::move(repaired);
    }

    models = detail::m_step(subs, labels, cfg, &models);

    Eigen::MatrixXd new_costs = node_costs(subs, models);
    IterationStats stats;
    for (int i = 0; i < n; ++i) stats.likelihood += new_costs(i, labels[i]);
    stats.penalty =
        cfg.beta * disagreement_count(labels, subs.nearest_subregion);
    for (const auto& m : models)
      stats.sparsity += cfg.lam * offdiagonal_l1(m.precision());
    stats.objective = stats.likelihood + stats.penalty + stats.sparsity;
    result.trace.push_back(stats);
    result.iterations = iter;

    if (labels == prev) {
      result.converged = true;
      carried_costs = std::move(new_costs);
      break;
    }
    carried_costs = std::move(new_costs);
  }

  const Eigen::MatrixXd& final_costs = *carried_costs;
  result.assignment.labels = labels;
  for (int i = 0; i < n; ++i)
    result.assignment.objective_likelihood += final_costs(i, labels[i]);
  result.assignment.objective_penalty =
      cfg.beta * disagreement_count(labels, subs.nearest_subregion);
  result.models = std::move(models);
  return result;
}

}  // namespace sticc
