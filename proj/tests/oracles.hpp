#pragma once
// Independent reference implementations used to cross-check the library.
// Everything here favours obviousness over speed: full sorts, exhaustive
// enumeration, quadratic-or-worse loops.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "sticc/dataset.hpp"
#include "sticc/tgl.hpp"

namespace oracle {

// k nearest neighbours by full sort of (squared distance, id).
inline std::vector<std::vector<int>> knn_bruteforce(const sticc::GeoDataset& ds, int k) {
  const int n = ds.count();
  std::vector<const sticc::PointRecord*> by_id(n);
  for (const auto& p : ds.points) by_id[p.id] = &p;
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> all;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dx = by_id[i]->coord[0] - by_id[j]->coord[0];
      const double dy = by_id[i]->coord[1] - by_id[j]->coord[1];
      all.emplace_back(dx * dx + dy * dy, j);
    }
    std::sort(all.begin(), all.end());
    for (int r = 0; r < k; ++r) out[i].push_back(all[r].second);
  }
  return out;
}

// ARI by classifying every point pair as agreeing or disagreeing.
inline double ari_pairs(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  double n11 = 0, n00 = 0, n10 = 0, n01 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool sa = a[i] == a[j], sb = b[i] == b[j];
      if (sa && sb)
        ++n11;
      else if (!sa && !sb)
        ++n00;
      else if (sa)
        ++n10;
      else
        ++n01;
    }
  const double denom = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00);
  if (denom == 0) return 1.0;
  return 2.0 * (n11 * n00 - n10 * n01) / denom;
}

// Macro F1 via direct per-point counting for every permutation of pred.
inline double macro_f1_exhaustive(const std::vector<int>& truth,
                                  const std::vector<int>& pred, int k) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double best = -1.0;
  do {
    double sum = 0.0;
    for (int c = 0; c < k; ++c) {
      int tp = 0, fp = 0, fn = 0;
      for (std::size_t i = 0; i < truth.size(); ++i) {
        const int mapped = perm[pred[i]];
        if (truth[i] == c && mapped == c) ++tp;
        if (truth[i] != c && mapped == c) ++fp;
        if (truth[i] == c && mapped != c) ++fn;
      }
      const double prec = tp + fp > 0 ? double(tp) / (tp + fp) : 0.0;
      const double rec = tp + fn > 0 ? double(tp) / (tp + fn) : 0.0;
      if (prec + rec > 0) sum += 2 * prec * rec / (prec + rec);
    }
    best = std::max(best, sum / k);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Delaunay edges by checking every triangle's open circumdisk for
// emptiness (general-position input assumed).
inline std::vector<std::pair<int, int>> delaunay_bruteforce(
    const std::vector<std::array<double, 2>>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double ax = pts[i][0], ay = pts[i][1];
        const double bx = pts[j][0], by = pts[j][1];
        const double cx = pts[k][0], cy = pts[k][1];
        const double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
        if (d == 0) continue;  // collinear triple
        const double a2 = ax * ax + ay * ay;
        const double b2 = bx * bx + by * by;
        const double c2 = cx * cx + cy * cy;
        const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
        const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
        const double r2 = (ax - ux) * (ax - ux) + (ay - uy) * (ay - uy);
        bool empty = true;
        for (int m = 0; m < n && empty; ++m) {
          if (m == i || m == j || m == k) continue;
          const double d2 =
              (pts[m][0] - ux) * (pts[m][0] - ux) + (pts[m][1] - uy) * (pts[m][1] - uy);
          if (d2 < r2) empty = false;
        }
        if (empty) {
          edges.emplace_back(i, j);
          edges.emplace_back(j, k);
          edges.emplace_back(i, k);
        }
      }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// Minimum of node costs + beta * pointer disagreements over all K^N labelings.
inline double labeling_minimum(const Eigen::MatrixXd& costs,
                               const std::vector<int>& nearest, double beta) {
  const int n = static_cast<int>(costs.rows());
  const int k = static_cast<int>(costs.cols());
  std::vector<int> labels(n, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      total += costs(i, labels[i]);
      if (labels[i] != labels[nearest[i]]) total += beta;
    }
    best = std::min(best, total);
    int pos = 0;
    while (pos < n && ++labels[pos] == k) labels[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

// Covariance via E[xx^T] - mean*mean^T, a different algebraic route than
// the centered accumulation.
inline Eigen::MatrixXd covariance_moments(const std::vector<Eigen::VectorXd>& xs) {
  const auto d = xs[0].size();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);
  for (const auto& x : xs) {
    mean += x;
    second += x * x.transpose();
  }
  mean /= double(xs.size());
  second /= double(xs.size());
  return second - mean * mean.transpose();
}

// Betweenness from explicit all-pairs shortest-path counts:
// sigma_st(v) = sigma_sv * sigma_vt when the distances line up.
inline std::vector<double> betweenness_counting(int n,
                                                const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  const int inf = std::numeric_limits<int>::max() / 2;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, inf));
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (int s = 0; s < n; ++s) {
    dist[s][s] = 0;
    sigma[s][s] = 1.0;
    std::vector<int> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const int v = queue[h];
      for (int w : adj[v]) {
        if (dist[s][w] == inf) {
          dist[s][w] = dist[s][v] + 1;
          queue.push_back(w);
        }
        if (dist[s][w] == dist[s][v] + 1) sigma[s][w] += sigma[s][v];
      }
    }
  }
  std::vector<double> bc(n, 0.0);
  for (int v = 0; v < n; ++v)
    for (int s = 0; s < n; ++s)
      for (int t = s + 1; t < n; ++t) {
        if (s == v || t == v || sigma[s][t] == 0) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t])
          bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
  if (n > 2)
    for (double& v : bc) v /= (n - 1.0) * (n - 2.0) / 2.0;
  return bc;
}

// Projected-gradient descent on the solver's objective, parameterized by
// the Toeplitz class values. Slow and simple: fixed small steps with a
// positive-definiteness backtrack, per-class soft-threshold prox.
inline double tgl_pg_minimum(const sticc::TglProblem& p, int steps = 100000) {
  const int n = p.radius * p.dim;
  const auto classes = sticc::detail::toeplitz_classes(p.radius, p.dim);
  const int nc = static_cast<int>(classes.size());

  auto build = [&](const std::vector<double>& z) {
    Eigen::MatrixXd theta(n, n);
    for (int c = 0; c < nc; ++c)
      for (auto [r, col] : classes[c].entries) theta(r, col) = z[c];
    return theta;
  };
  auto objective = [&](const std::vector<double>& z) {
    const Eigen::MatrixXd theta = build(z);
    Eigen::LLT<Eigen::MatrixXd> llt(theta);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    double log_det = 0.0;
    for (int i = 0; i < n; ++i) log_det += 2.0 * std::log(llt.matrixLLT()(i, i));
    double pen = 0.0;
    for (int c = 0; c < nc; ++c)
      if (!classes[c].diagonal) pen += std::abs(z[c]);
    return -log_det + (p.S * theta).trace() + p.lam / p.member_count * pen;
  };

  std::vector<double> z(nc, 0.0);
  for (int c = 0; c < nc; ++c)
    if (classes[c].diagonal) z[c] = 1.0;  // start at identity

  double eta = 1e-3 / (1.0 + p.S.cwiseAbs().maxCoeff());
  for (int it = 0; it < steps; ++it) {
    const Eigen::MatrixXd theta = build(z);
    const Eigen::MatrixXd inv = theta.inverse();
    std::vector<double> grad(nc, 0.0);
    for (int c = 0; c < nc; ++c)
      for (auto [r, col] : classes[c].entries) grad[c] += p.S(r, col) - inv(r, col);

    double step = eta;
    for (int tries = 0; tries < 60; ++tries) {
      std::vector<double> next(nc);
      for (int c = 0; c < nc; ++c) {
        double v = z[c] - step * grad[c];
        if (!classes[c].diagonal) {
          const double t = step * p.lam / p.member_count;
          v = v > t ? v - t : (v < -t ? v + t : 0.0);
        }
        next[c] = v;
      }
      if (std::isfinite(objective(next))) {
        z = std::move(next);
        break;
      }
      step /= 2;
    }
  }
  return objective(z);
}

}  // namespace oracle
