#pragma once
// Synthetic benchmark generator: rectangular regions mapped to clusters,
// with per-cluster Gaussian attribute distributions.

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sticc/dataset.hpp"
#include "sticc/rng.hpp"

namespace sticc {

struct RegionSpec {
  int id = 0;
  int cluster = 0;
  std::array<double, 4> rect{0, 0, 1, 1};  // x0, y0, x1, y1
  int point_count = 0;
  enum class Density { uniform, gradient } density = Density::uniform;
};

struct AttrSpec {
  double mean = 0.0;
  double stddev = 1.0;
};

struct ClusterAttrSpec {
  std::vector<AttrSpec> attributes;
};

struct SyntheticData {
  GeoDataset dataset;
  std::vector<int> truth;
};

// Five attributes per cluster; seven clusters. Scales differ wildly on
// purpose (means 1..1000, spreads 1..350) and neighbouring clusters overlap.
inline std::vector<ClusterAttrSpec> default_attributes() {
  const std::array<std::array<double, 7>, 5> means = {{
      {4, 5, 6, 1, 3, 7, 2},
      {1, 7, 2, 3, 6, 4, 5},
      {80, 30, 20, 100, 60, 70, 40},
      {1000, 900, 600, 700, 800, 400, 500},
      {999, 992, 1005, 1003, 999, 998, 1008},
  }};
  const std::array<double, 5> spreads = {1, 3, 20, 350, 3};
  std::vector<ClusterAttrSpec> out(7);
  for (int c = 0; c < 7; ++c) {
    out[c].attributes.resize(5);
    for (int a = 0; a < 5; ++a) out[c].attributes[a] = {means[a][c], spreads[a]};
  }
  return out;
}

// Ten rectangles over seven clusters. Three cluster repeats sit in
// non-adjacent regions (1&4, 2&10, 3&9); regions 5 and 6 touch; regions 7
// and 9 share a density while region 8 is denser.
inline std::vector<RegionSpec> default_layout() {
  using D = RegionSpec::Density;
  return {
      {1, 0, {50, 650, 300, 900}, 130, D::uniform},
      {2, 1, {350, 650, 600, 900}, 120, D::uniform},
      {3, 2, {650, 650, 950, 900}, 140, D::uniform},
      {4, 0, {50, 350, 300, 600}, 125, D::uniform},
      {5, 3, {350, 350, 600, 600}, 135, D::gradient},
      {6, 4, {600, 350, 850, 600}, 130, D::gradient},
      {7, 5, {350, 50, 600, 300}, 100, D::uniform},
      {8, 6, {50, 50, 300, 300}, 150, D::uniform},
      {9, 2, {650, 50, 950, 300}, 120, D::uniform},
      {10, 1, {870, 320, 990, 630}, 110, D::uniform},
  };
}

inline SyntheticData generate(const std::vector<RegionSpec>& regions,
                              const std::vector<ClusterAttrSpec>& attrs,
                              std::uint64_t seed) {
  if (regions.empty()) throw std::invalid_argument("generate: no regions");
  if (attrs.empty()) throw std::invalid_argument("generate: no attribute specs");
  const int dim = static_cast<int>(attrs[0].attributes.size());
  for (const auto& a : attrs) {
    if (static_cast<int>(a.attributes.size()) != dim)
      throw std::invalid_argument("generate: attribute count differs across clusters");
    for (const auto& s : a.attributes)
      if (s.stddev <= 0) throw std::invalid_argument("generate: stddev must be > 0");
  }
  for (const auto& r : regions) {
    if (r.rect[0] >= r.rect[2] || r.rect[1] >= r.rect[3])
      throw std::invalid_argument("generate: region " + std::to_string(r.id) +
                                  " has an empty rectangle");
    if (r.point_count < 1)
      throw std::invalid_argument("generate: region " + std::to_string(r.id) +
                                  " needs at least one point");
    if (r.cluster < 0 || r.cluster >= static_cast<int>(attrs.size()))
      throw std::invalid_argument("generate: region " + std::to_string(r.id) +
                                  " references an unknown cluster");
  }

  std::mt19937_64 gen(seed);
  SyntheticData out;
  out.dataset.dim_attributes = dim;
  int next_id = 0;
  for (const auto& r : regions) {
    const auto& spec = attrs[r.cluster].attributes;
    for (int i = 0; i < r.point_count; ++i) {
      PointRecord p;
      p.id = next_id++;
      double tx = uniform01(gen);
      if (r.density == RegionSpec::Density::gradient) {
        // Linear density rising along +x (3:1 across the rectangle);
        // inverse-CDF of (1+2t)/2 on [0,1].
        tx = (-1.0 + std::sqrt(1.0 + 8.0 * tx)) / 2.0;
      }
      p.coord[0] = r.rect[0] + tx * (r.rect[2] - r.rect[0]);
      p.coord[1] = r.rect[1] + uniform01(gen) * (r.rect[3] - r.rect[1]);
      p.attrs.resize(dim);
      for (int a = 0; a < dim; ++a)
        p.attrs[a] = spec[a].mean + spec[a].stddev * normal01(gen);
      out.dataset.points.push_back(std::move(p));
      out.truth.push_back(r.cluster);
    }
  }
  return out;
}

}  // namespace sticc
