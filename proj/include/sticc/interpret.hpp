#pragma once
// Interpretation: read each cluster's precision matrix as an MRF over
// (attribute, layer) nodes and rank attributes by betweenness centrality.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sticc/model.hpp"

namespace sticc {

struct MrfGraph {
  int node_count = 0;  // dim * radius; node l*dim + a is attribute a, layer l
  int dim = 0;
  int radius = 0;
  double threshold = 0.0;
  std::vector<std::pair<int, int>> edges;  // unordered pairs, first < second
};

inline MrfGraph extract_graph(const ToeplitzPrecision& tp, double threshold) {
  if (threshold < 0) throw std::invalid_argument("extract_graph: threshold must be >= 0");
  MrfGraph g;
  g.dim = tp.dim;
  g.radius = tp.radius;
  g.node_count = tp.dim * tp.radius;
  g.threshold = threshold;
  const Eigen::MatrixXd theta = assemble(tp);
  for (int i = 0; i < g.node_count; ++i)
    for (int j = i + 1; j < g.node_count; ++j)
      if (std::abs(theta(i, j)) > threshold) g.edges.emplace_back(i, j);
  return g;
}

// Normalized betweenness centrality per node (Brandes accumulation over
// unweighted shortest paths); isolated or tiny graphs yield zeros.
inline std::vector<double> betweenness_nodes(const MrfGraph& g) {
  const int n = g.node_count;
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<double> bc(n, 0.0);
  std::vector<int> dist(n), order;
  std::vector<double> sigma(n), delta(n);
  std::vector<std::vector<int>> preds(n);
  for (int s = 0; s < n; ++s) {
    order.clear();
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    std::vector<int> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      order.push_back(v);
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (int v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  if (n > 2) {
    // Halve for the undirected double count, then scale by pair count.
    const double norm = (n - 1.0) * (n - 2.0);
    for (double& v : bc) v /= norm;
  } else {
    std::fill(bc.begin(), bc.end(), 0.0);
  }
  return bc;
}

// Per-attribute centrality: average the attribute's nodes across layers.
inline std::vector<double> betweenness(const MrfGraph& g) {
  const std::vector<double> nodes = betweenness_nodes(g);
  std::vector<double> attrs(g.dim, 0.0);
  for (int a = 0; a < g.dim; ++a) {
    for (int l = 0; l < g.radius; ++l) attrs[a] += nodes[l * g.dim + a];
    attrs[a] /= g.radius;
  }
  return attrs;
}

}  // namespace sticc
