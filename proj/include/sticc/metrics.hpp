#pragma once
// Clustering quality metrics (ARI, permutation-matched macro-F1, join count
// ratio) and point adjacency via Delaunay triangulation or symmetrized k-NN.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sticc/dataset.hpp"

namespace sticc {

struct AdjacencyGraph {
  enum class Source { delaunay, knn_symmetrized };
  std::vector<std::pair<int, int>> edges;  // unordered pairs, first < second
  Source source = Source::delaunay;
  bool collinear_fallback = false;
  int node_count = 0;
};

struct JoinCounts {
  std::int64_t same = 0;
  std::int64_t diff = 0;
  std::int64_t total = 0;
  double ratio = 0.0;
};

struct MacroF1Result {
  double value = 0.0;
  std::vector<int> permutation;  // applied to pred labels for the best match
};

struct MetricReport {
  double ari = 0.0;
  MacroF1Result macro_f1;
  JoinCounts join;
};

// Adjusted Rand index via the pair-counting contingency formula.
inline double ari(const std::vector<int>& truth, const std::vector<int>& pred) {
  if (truth.size() != pred.size())
    throw std::invalid_argument("ari: label lengths differ");
  const std::size_t n = truth.size();
  if (n < 2) throw std::invalid_argument("ari: need at least 2 points");

  std::map<int, int> tidx, pidx;
  for (int t : truth) tidx.emplace(t, static_cast<int>(tidx.size()));
  for (int p : pred) pidx.emplace(p, static_cast<int>(pidx.size()));
  std::vector<std::vector<std::int64_t>> cont(tidx.size(),
                                              std::vector<std::int64_t>(pidx.size(), 0));
  for (std::size_t i = 0; i < n; ++i) ++cont[tidx[truth[i]]][pidx[pred[i]]];

  auto comb2 = [](std::int64_t m) { return static_cast<double>(m) * (m - 1) / 2.0; };
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  std::vector<std::int64_t> bsum(pidx.size(), 0);
  for (const auto& row : cont) {
    std::int64_t a = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      index += comb2(row[j]);
      a += row[j];
      bsum[j] += row[j];
    }
    sum_a += comb2(a);
  }
  for (std::int64_t b : bsum) sum_b += comb2(b);
  const double expected = sum_a * sum_b / comb2(static_cast<std::int64_t>(n));
  const double max_index = (sum_a + sum_b) / 2.0;
  if (max_index == expected) return 1.0;  // both partitions trivially identical
  return (index - expected) / (max_index - expected);
}

// Best macro-averaged F1 over all K! relabelings of pred.
inline MacroF1Result macro_f1(const std::vector<int>& truth,
                              const std::vector<int>& pred, int k) {
  if (truth.size() != pred.size())
    throw std::invalid_argument("macro_f1: label lengths differ");
  if (truth.empty()) throw std::invalid_argument("macro_f1: empty labels");
  if (k < 1 || k > 10)
    throw std::invalid_argument("macro_f1: K must be in [1, 10] (K! permutations)");
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] < 0 || truth[i] >= k || pred[i] < 0 || pred[i] >= k)
      throw std::invalid_argument("macro_f1: label out of range");

  std::vector<std::vector<std::int64_t>> cont(k, std::vector<std::int64_t>(k, 0));
  std::vector<std::int64_t> rowsum(k, 0), colsum(k, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++cont[truth[i]][pred[i]];
    ++rowsum[truth[i]];
    ++colsum[pred[i]];
  }

  MacroF1Result best;
  best.value = -1.0;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // perm maps original pred label -> matched label; invert for lookups.
    std::vector<int> inv(k);
    for (int p = 0; p < k; ++p) inv[perm[p]] = p;
    double sum_f1 = 0.0;
    for (int c = 0; c < k; ++c) {
      const double tp = static_cast<double>(cont[c][inv[c]]);
      const double prec = colsum[inv[c]] > 0 ? tp / colsum[inv[c]] : 0.0;
      const double rec = rowsum[c] > 0 ? tp / rowsum[c] : 0.0;
      if (prec + rec > 0) sum_f1 += 2.0 * prec * rec / (prec + rec);
    }
    const double value = sum_f1 / k;
    if (value > best.value) {
      best.value = value;
      best.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline JoinCounts join_count_ratio(const std::vector<int>& labels,
                                   const AdjacencyGraph& adj) {
  if (adj.edges.empty())
    throw std::runtime_error("join_count_ratio: adjacency has no edges");
  JoinCounts jc;
  for (auto [a, b] : adj.edges) {
    if (a < 0 || b < 0 || a >= static_cast<int>(labels.size()) ||
        b >= static_cast<int>(labels.size()))
      throw std::invalid_argument("join_count_ratio: edge id out of range");
    if (labels[a] == labels[b])
      ++jc.same;
    else
      ++jc.diff;
  }
  jc.total = jc.same + jc.diff;
  jc.ratio = static_cast<double>(jc.same) / static_cast<double>(jc.total);
  return jc;
}

namespace detail {

// Strictly-inside circumcircle test, sign-corrected for orientation.
inline bool in_circumcircle(const std::array<double, 2>& a, const std::array<double, 2>& b,
                            const std::array<double, 2>& c, const std::array<double, 2>& p) {
  const double ax = a[0] - p[0], ay = a[1] - p[1];
  const double bx = b[0] - p[0], by = b[1] - p[1];
  const double cx = c[0] - p[0], cy = c[1] - p[1];
  const double a2 = ax * ax + ay * ay;
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  double det = ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
  const double orient = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  if (orient < 0) det = -det;
  return det > 0;
}

}  // namespace detail

// Delaunay triangulation edges via incremental Bowyer-Watson insertion.
// Duplicate coordinates get a deterministic 1e-9-scale jitter; fully
// collinear inputs fall back to a path graph along the line.
inline AdjacencyGraph delaunay(const GeoDataset& ds) {
  const int n = ds.count();
  if (n < 3) throw std::invalid_argument("delaunay: need at least 3 points");

  std::vector<std::array<double, 2>> pts(n);
  for (const auto& p : ds.points) pts[p.id] = p.coord;

  AdjacencyGraph g;
  g.source = AdjacencyGraph::Source::delaunay;
  g.node_count = n;

  // Collinearity check against the first pair of distinct points.
  {
    int second = -1;
    for (int i = 1; i < n; ++i)
      if (pts[i] != pts[0]) {
        second = i;
        break;
      }
    double span = 0.0;
    for (int i = 0; i < n; ++i)
      span = std::max({span, std::abs(pts[i][0] - pts[0][0]),
                       std::abs(pts[i][1] - pts[0][1])});
    bool collinear = true;
    if (second >= 0) {
      const double dx = pts[second][0] - pts[0][0];
      const double dy = pts[second][1] - pts[0][1];
      for (int i = 0; i < n && collinear; ++i) {
        const double cross =
            dx * (pts[i][1] - pts[0][1]) - dy * (pts[i][0] - pts[0][0]);
        if (std::abs(cross) > 1e-12 * std::max(1.0, span * span)) collinear = false;
      }
    }
    if (collinear) {
      // Path graph in projection order along the line (id breaks ties).
      std::vector<std::pair<double, int>> proj(n);
      const double dx = second >= 0 ? pts[second][0] - pts[0][0] : 1.0;
      const double dy = second >= 0 ? pts[second][1] - pts[0][1] : 0.0;
      for (int i = 0; i < n; ++i)
        proj[i] = {dx * pts[i][0] + dy * pts[i][1], i};
      std::sort(proj.begin(), proj.end());
      for (int i = 0; i + 1 < n; ++i)
        g.edges.emplace_back(std::min(proj[i].second, proj[i + 1].second),
                             std::max(proj[i].second, proj[i + 1].second));
      std::sort(g.edges.begin(), g.edges.end());
      g.collinear_fallback = true;
      return g;
    }
  }

  // Deterministic spiral jitter for exact duplicates.
  {
    std::map<std::pair<double, double>, int> seen;
    for (int i = 0; i < n; ++i) {
      auto key = std::make_pair(pts[i][0], pts[i][1]);
      auto [it, fresh] = seen.emplace(key, 0);
      if (!fresh) {
        const int t = ++it->second;
        const double angle = 2.399963229728653 * t;  // golden angle
        pts[i][0] += 1e-9 * t * std::cos(angle);
        pts[i][1] += 1e-9 * t * std::sin(angle);
      }
    }
  }

  double min_x = pts[0][0], max_x = pts[0][0], min_y = pts[0][1], max_y = pts[0][1];
  for (const auto& p : pts) {
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  const double cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
  const double delta = std::max({max_x - min_x, max_y - min_y, 1.0});

  struct Tri {
    int a, b, c;
  };

  // Bowyer-Watson with a super triangle scale·delta across. Near-degenerate
  // hull slivers have circumcircles far larger than the point cloud, so the
  // super triangle must dwarf them or real triangles get destroyed.
  auto attempt = [&](double scale) {
    std::vector<std::array<double, 2>> v = pts;
    v.push_back({cx - scale * delta, cy - scale * delta / 2});
    v.push_back({cx + scale * delta, cy - scale * delta / 2});
    v.push_back({cx, cy + scale * delta});

    std::vector<Tri> tris{{n, n + 1, n + 2}};
    for (int i = 0; i < n; ++i) {
      std::vector<int> bad;
      for (int t = 0; t < static_cast<int>(tris.size()); ++t)
        if (detail::in_circumcircle(v[tris[t].a], v[tris[t].b], v[tris[t].c], v[i]))
          bad.push_back(t);

      // Boundary = edges of the bad region not shared by two bad triangles.
      std::map<std::pair<int, int>, int> edge_count;
      for (int t : bad) {
        const std::array<std::pair<int, int>, 3> es = {
            std::minmax(tris[t].a, tris[t].b), std::minmax(tris[t].b, tris[t].c),
            std::minmax(tris[t].a, tris[t].c)};
        for (auto e : es) ++edge_count[e];
      }
      for (auto it = bad.rbegin(); it != bad.rend(); ++it)
        tris.erase(tris.begin() + *it);
      for (const auto& [e, count] : edge_count)
        if (count == 1) tris.push_back({e.first, e.second, i});
    }
    std::erase_if(tris, [&](const Tri& t) { return t.a >= n || t.b >= n || t.c >= n; });
    return tris;
  };

  // A too-small super triangle leaves holes along the hull. Holes expose
  // themselves as edges bounding exactly one triangle that are not convex
  // hull edges (points strictly on both sides of their line).
  auto covers_hull = [&](const std::vector<Tri>& tris) {
    std::map<std::pair<int, int>, int> incidence;
    for (const auto& t : tris) {
      ++incidence[std::minmax(t.a, t.b)];
      ++incidence[std::minmax(t.b, t.c)];
      ++incidence[std::minmax(t.a, t.c)];
    }
    const double tol = 1e-9 * delta * delta;
    for (const auto& [e, count] : incidence) {
      if (count != 1) continue;
      const double ex = pts[e.second][0] - pts[e.first][0];
      const double ey = pts[e.second][1] - pts[e.first][1];
      double lo = 0.0, hi = 0.0;
      for (int i = 0; i < n; ++i) {
        const double cross = ex * (pts[i][1] - pts[e.first][1]) -
                             ey * (pts[i][0] - pts[e.first][0]);
        lo = std::min(lo, cross);
        hi = std::max(hi, cross);
      }
      if (lo < -tol && hi > tol) return false;
    }
    return true;
  };

  std::vector<Tri> tris;
  for (double scale : {1e6, 1e9, 1e12}) {
    tris = attempt(scale);
    if (covers_hull(tris)) break;
  }

  std::vector<std::pair<int, int>> edges;
  for (const auto& t : tris) {
    edges.push_back(std::minmax(t.a, t.b));
    edges.push_back(std::minmax(t.b, t.c));
    edges.push_back(std::minmax(t.a, t.c));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  return g;
}

// Union of directed k-NN edges, symmetrized.
inline AdjacencyGraph knn_adjacency(const GeoDataset& ds, int k) {
  const auto lists = knn(ds, k);
  AdjacencyGraph g;
  g.source = AdjacencyGraph::Source::knn_symmetrized;
  g.node_count = ds.count();
  for (int i = 0; i < static_cast<int>(lists.size()); ++i)
    for (int j : lists[i]) g.edges.push_back(std::minmax(i, j));
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

}  // namespace sticc
