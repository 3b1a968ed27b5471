#pragma once
// Reference clusterers: Lloyd's K-Means with k-means++ seeding, on plain
// attributes or with standardized coordinates appended (spatial variant).

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "sticc/dataset.hpp"
#include "sticc/rng.hpp"

namespace sticc {

struct KMeansConfig {
  int k = 2;
  int max_iter = 300;
  std::uint64_t seed = 0;
  double coord_weight = 0.0;  // 0 = attributes only
};

// Generic Lloyd iteration over row vectors; deterministic for a fixed seed.
inline std::vector<int> kmeans_rows(const std::vector<Eigen::VectorXd>& rows, int k,
                                    int max_iter, std::uint64_t seed) {
  const int n = static_cast<int>(rows.size());
  if (k < 1 || k > n) throw std::invalid_argument("kmeans: k must be in [1, N]");

  std::mt19937_64 gen(seed);
  std::vector<Eigen::VectorXd> centroids;
  centroids.reserve(k);
  centroids.push_back(rows[uniform_index(gen, n)]);
  std::vector<double> d2(n);
  std::vector<bool> chosen(n, false);
  while (static_cast<int>(centroids.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centroids) best = std::min(best, (rows[i] - c).squaredNorm());
      d2[i] = best;
      total += best;
    }
    int pick = -1;
    if (total > 0) {
      double target = uniform01(gen) * total;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) pick = n - 1;
    } else {
      // All mass at existing centroids (duplicate points); take the first
      // unused row to keep the call total and deterministic.
      for (int i = 0; i < n && pick < 0; ++i)
        if (!chosen[i]) pick = i;
      if (pick < 0) pick = 0;
    }
    chosen[pick] = true;
    centroids.push_back(rows[pick]);
  }

  std::vector<int> labels(n, 0), prev(n, -1);
  std::vector<int> counts(k, 0);
  for (int it = 0; it < max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (rows[i] - centroids[0]).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (rows[i] - centroids[c]).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      labels[i] = best;
    }
    counts.assign(k, 0);
    for (int l : labels) ++counts[l];
    // Empty cluster: reseed it at the point farthest from its centroid,
    // drawn from a cluster that can spare a member.
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (counts[labels[i]] < 2) continue;
        const double d = (rows[i] - centroids[c]).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far < 0) throw std::runtime_error("kmeans: cannot repair empty cluster");
      --counts[labels[far]];
      labels[far] = c;
      counts[c] = 1;
    }
    if (labels == prev) break;
    prev = labels;
    for (int c = 0; c < k; ++c) centroids[c].setZero();
    for (int i = 0; i < n; ++i) centroids[labels[i]] += rows[i];
    for (int c = 0; c < k; ++c) centroids[c] /= static_cast<double>(counts[c]);
  }
  return labels;
}

inline std::vector<int> kmeans(const GeoDataset& ds, const KMeansConfig& cfg) {
  const int n = ds.count();
  std::vector<const PointRecord*> by_id(n);
  for (const auto& p : ds.points) by_id[p.id] = &p;

  std::vector<Eigen::VectorXd> rows(n);
  if (cfg.coord_weight == 0.0) {
    for (int i = 0; i < n; ++i) rows[i] = by_id[i]->attrs;
  } else {
    // Standardize coordinates so their scale is comparable to attributes,
    // then append them weighted.
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
      mx += by_id[i]->coord[0];
      my += by_id[i]->coord[1];
    }
    mx /= n;
    my /= n;
    double vx = 0, vy = 0;
    for (int i = 0; i < n; ++i) {
      vx += (by_id[i]->coord[0] - mx) * (by_id[i]->coord[0] - mx);
      vy += (by_id[i]->coord[1] - my) * (by_id[i]->coord[1] - my);
    }
    const double sx = std::sqrt(vx / n), sy = std::sqrt(vy / n);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd r(ds.dim_attributes + 2);
      r.head(ds.dim_attributes) = by_id[i]->attrs;
      r[ds.dim_attributes] = cfg.coord_weight * (sx > 0 ? (by_id[i]->coord[0] - mx) / sx : 0.0);
      r[ds.dim_attributes + 1] = cfg.coord_weight * (sy > 0 ? (by_id[i]->coord[1] - my) / sy : 0.0);
      rows[i] = std::move(r);
    }
  }
  return kmeans_rows(rows, cfg.k, cfg.max_iter, cfg.seed);
}

}  // namespace sticc
