#pragma once
// E-step: label every subregion to minimize negative log likelihood plus
// the beta penalty paid whenever a subregion's label differs from its
// nearest subregion's label.
//
// The nearest-subregion pointers rarely form a clean sequence, so the
// minimum-cost-path recurrence is a heuristic on general inputs: a backward
// sweep fills FutureCostVals in index order (entries not yet computed read
// as zero), and a forward pass labels each point using the realized penalty
// against already-labeled neighbours and the lookahead table otherwise. The
// sweep runs in both index orientations and the cheaper labeling wins,
// which makes it exact whenever the pointers do form a chain. A mutual
// pointer pair (n and m pointing at each other) pays the penalty twice in
// the objective, so the planned transition weight doubles there.

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sticc/dataset.hpp"
#include "sticc/model.hpp"

namespace sticc {

struct Assignment {
  std::vector<int> labels;
  double objective_likelihood = 0.0;  // sum of chosen negative log likelihoods
  double objective_penalty = 0.0;     // beta * disagreeing neighbour pairs
};

// N x K matrix of negative log likelihoods.
inline Eigen::MatrixXd node_costs(const SubregionSet& subs,
                                  const std::vector<ClusterModel>& models) {
  if (models.empty()) throw std::invalid_argument("node_costs: no models");
  const int n = subs.size();
  const int k = static_cast<int>(models.size());
  Eigen::MatrixXd costs(n, k);
  for (int j = 0; j < k; ++j) {
    if (models[j].mean().size() != static_cast<Eigen::Index>(subs.dim) * subs.radius)
      throw std::invalid_argument("node_costs: model dimension mismatch");
    for (int i = 0; i < n; ++i) costs(i, j) = -models[j].log_likelihood(subs.stacked[i]);
  }
  return costs;
}

inline int disagreement_count(const std::vector<int>& labels,
                              const std::vector<int>& nearest) {
  int count = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != labels[nearest[i]]) ++count;
  return count;
}

// Value of the labeling under node costs + beta penalty.
inline double assignment_cost(const Eigen::MatrixXd& costs,
                              const std::vector<int>& nearest,
                              const std::vector<int>& labels, double beta) {
  double total = 0.0;
  for (int i = 0; i < costs.rows(); ++i) total += costs(i, labels[i]);
  return total + beta * disagreement_count(labels, nearest);
}

namespace detail {

// One DP pass in index order. The index-adjacent fallback term couples
// consecutive points that share no pointer edge; without it, disconnected
// pointer components would never agree on a label even as beta grows.
inline std::vector<int> sweep_labels(const Eigen::MatrixXd& costs,
                                     const std::vector<int>& nearest, double beta) {
  const int n = static_cast<int>(costs.rows());
  const int k = static_cast<int>(costs.cols());
  Eigen::MatrixXd future = Eigen::MatrixXd::Zero(n, k);
  for (int i = n - 2; i >= 0; --i) {
    const int m = nearest[i];
    const double w = beta * (nearest[m] == i ? 2.0 : 1.0);
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    int best_k = 0;
    for (int j = 0; j < k; ++j) {
      const double base = future(m, j) + costs(m, j);
      if (base < best) {
        second = best;
        best = base;
        best_k = j;
      } else if (base < second) {
        second = base;
      }
    }
    for (int j = 0; j < k; ++j) {
      const double own = future(m, j) + costs(m, j);
      const double other = (j == best_k ? second : best) + w;
      future(i, j) = std::min(own, other);
    }
  }

  std::vector<std::vector<int>> sources(n);
  for (int i = 0; i < n; ++i) sources[nearest[i]].push_back(i);

  std::vector<int> labels(n, 0);
  std::vector<double> tot(k);
  for (int i = 0; i < n; ++i) {
    const int m = nearest[i];
    for (int j = 0; j < k; ++j) {
      double v = costs(i, j);
      if (m < i)
        v += beta * (labels[m] != j);  // neighbour already labeled: realized penalty
      else
        v += future(i, j);  // neighbour still open: planned continuation
      for (int src : sources[i])
        if (src < i) v += beta * (labels[src] != j);
      if (i >= 1 && nearest[i] != i - 1 && nearest[i - 1] != i)
        v += beta * (labels[i - 1] != j);
      tot[j] = v;
    }
    labels[i] = static_cast<int>(std::min_element(tot.begin(), tot.end()) - tot.begin());
  }
  return labels;
}

}  // namespace detail

inline Assignment assign_with_costs(const Eigen::MatrixXd& costs,
                                    const std::vector<int>& nearest, double beta,
                                    const std::vector<int>* previous = nullptr) {
  const int n = static_cast<int>(costs.rows());
  const int k = static_cast<int>(costs.cols());
  if (k < 1) throw std::invalid_argument("assign: need at least one cluster");
  if (static_cast<int>(nearest.size()) != n)
    throw std::invalid_argument("assign: nearest pointer count mismatch");
  for (int i = 0; i < n; ++i)
    if (nearest[i] < 0 || nearest[i] >= n || nearest[i] == i)
      throw std::invalid_argument("assign: invalid nearest pointer");
  if (beta < 0) throw std::invalid_argument("assign: beta must be >= 0");

  std::vector<int> labels(n, 0);
  if (beta == 0.0) {
    // Decoupled case: plain per-point argmin, ties to the lower index.
    for (int i = 0; i < n; ++i) {
      int best = 0;
      for (int j = 1; j < k; ++j)
        if (costs(i, j) < costs(i, best)) best = j;
      labels[i] = best;
    }
  } else {
    labels = detail::sweep_labels(costs, nearest, beta);
    // Reversed orientation: relabel i -> n-1-i, sweep, map back.
    Eigen::MatrixXd rcosts(n, k);
    std::vector<int> rnearest(n);
    for (int i = 0; i < n; ++i) {
      rcosts.row(i) = costs.row(n - 1 - i);
      rnearest[i] = n - 1 - nearest[n - 1 - i];
    }
    const std::vector<int> rlabels = detail::sweep_labels(rcosts, rnearest, beta);
    std::vector<int> alt(n);
    for (int i = 0; i < n; ++i) alt[i] = rlabels[n - 1 - i];
    if (assignment_cost(costs, nearest, alt, beta) <
        assignment_cost(costs, nearest, labels, beta))
      labels = alt;
  }

  if (previous) {
    if (static_cast<int>(previous->size()) != n)
      throw std::invalid_argument("assign: previous labels length mismatch");
    if (assignment_cost(costs, nearest, *previous, beta) <=
        assignment_cost(costs, nearest, labels, beta))
      labels = *previous;
  }

  Assignment out;
  out.labels = std::move(labels);
  for (int i = 0; i < n; ++i) out.objective_likelihood += costs(i, out.labels[i]);
  out.objective_penalty = beta * disagreement_count(out.labels, nearest);
  return out;
}

inline Assignment assign(const SubregionSet& subs,
                         const std::vector<ClusterModel>& models, double beta,
                         const std::vector<int>* previous = nullptr) {
  return assign_with_costs(node_costs(subs, models), subs.nearest_subregion, beta,
                           previous);
}

// Full objective: likelihood + spatial penalty + lam-weighted l1 of every
// cluster's off-diagonal precision entries.
inline double total_objective(const SubregionSet& subs,
                              const std::vector<ClusterModel>& models,
                              const std::vector<int>& labels, double beta,
                              double lam) {
  const Eigen::MatrixXd costs = node_costs(subs, models);
  if (static_cast<int>(labels.size()) != subs.size())
    throw std::invalid_argument("total_objective: labels length mismatch");
  for (int l : labels)
    if (l < 0 || l >= static_cast<int>(models.size()))
      throw std::invalid_argument("total_objective: label out of range");
  double total = assignment_cost(costs, subs.nearest_subregion, labels, beta);
  for (const auto& m : models) total += lam * offdiagonal_l1(m.precision());
  return total;
}

}  // namespace sticc
