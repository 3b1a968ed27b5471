#pragma once
// Point datasets: CSV loading with schema mapping, exact k-nearest
// neighbours, and stacked subregion construction.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sticc/text.hpp"

namespace sticc {

struct PointRecord {
  int id = 0;
  std::array<double, 2> coord{0.0, 0.0};
  Eigen::VectorXd attrs;

  bool operator==(const PointRecord& o) const {
    return id == o.id && coord == o.coord && attrs.size() == o.attrs.size() &&
           attrs == o.attrs;
  }
};

struct GeoDataset {
  std::vector<PointRecord> points;
  int dim_attributes = 0;

  int count() const { return static_cast<int>(points.size()); }

  bool operator==(const GeoDataset& o) const {
    return dim_attributes == o.dim_attributes && points == o.points;
  }
};

struct ColumnSpec {
  std::string id_column = "id";
  std::string x_column = "x";
  std::string y_column = "y";
  // Empty means: every remaining header column, in header order.
  std::vector<std::string> attribute_columns;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

inline int find_column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  throw SchemaError("missing column '" + name + "' in header");
}

}  // namespace detail

inline GeoDataset load_csv(const std::string& path, const ColumnSpec& spec = {}) {
  auto lines = detail::read_lines(path);
  if (lines.empty()) throw EmptyInputError("empty file: " + path);

  std::vector<std::string> header;
  for (auto f : split_csv(lines[0])) header.emplace_back(trim(f));

  const int id_col = detail::find_column(header, spec.id_column);
  const int x_col = detail::find_column(header, spec.x_column);
  const int y_col = detail::find_column(header, spec.y_column);

  std::vector<int> attr_cols;
  if (spec.attribute_columns.empty()) {
    for (int i = 0; i < static_cast<int>(header.size()); ++i)
      if (i != id_col && i != x_col && i != y_col) attr_cols.push_back(i);
  } else {
    for (const auto& name : spec.attribute_columns)
      attr_cols.push_back(detail::find_column(header, name));
  }

  GeoDataset ds;
  ds.dim_attributes = static_cast<int>(attr_cols.size());

  for (std::size_t row = 1; row < lines.size(); ++row) {
    if (trim(lines[row]).empty()) continue;
    auto fields = split_csv(lines[row]);
    auto cell = [&](int col) -> std::string_view {
      if (col >= static_cast<int>(fields.size()))
        throw ParseError("row " + std::to_string(row) + ": expected at least " +
                         std::to_string(col + 1) + " fields, got " +
                         std::to_string(fields.size()));
      return fields[col];
    };

    PointRecord rec;
    auto id = parse_int(cell(id_col));
    if (!id)
      throw ParseError("row " + std::to_string(row) + ", column '" +
                       header[id_col] + "': not an integer");
    rec.id = static_cast<int>(*id);

    auto numeric = [&](int col) {
      auto v = parse_double(cell(col));
      if (!v || !std::isfinite(*v))
        throw ParseError("row " + std::to_string(row) + ", column '" +
                         header[col] + "': not a finite number");
      return *v;
    };
    rec.coord[0] = numeric(x_col);
    rec.coord[1] = numeric(y_col);
    rec.attrs.resize(ds.dim_attributes);
    for (int a = 0; a < ds.dim_attributes; ++a) rec.attrs[a] = numeric(attr_cols[a]);
    ds.points.push_back(std::move(rec));
  }

  if (ds.points.empty()) throw EmptyInputError("no data rows in " + path);

  // Identifiers must be exactly 0..N-1 (row order is free).
  std::vector<bool> seen(ds.points.size(), false);
  for (const auto& p : ds.points) {
    if (p.id < 0 || p.id >= ds.count() || seen[p.id])
      throw ParseError("point ids must be unique integers 0.." +
                       std::to_string(ds.count() - 1) + "; offending id " +
                       std::to_string(p.id));
    seen[p.id] = true;
  }
  return ds;
}

inline void save_csv(const GeoDataset& ds, const std::string& path,
                     const std::vector<std::string>& attr_names = {}) {
  if (!attr_names.empty() &&
      static_cast<int>(attr_names.size()) != ds.dim_attributes)
    throw std::invalid_argument("attribute name count mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "id,x,y";
  for (int a = 0; a < ds.dim_attributes; ++a)
    out << ',' << (attr_names.empty() ? "a" + std::to_string(a) : attr_names[a]);
  out << '\n';
  for (const auto& p : ds.points) {
    out << p.id << ',' << format_double(p.coord[0]) << ',' << format_double(p.coord[1]);
    for (int a = 0; a < ds.dim_attributes; ++a) out << ',' << format_double(p.attrs[a]);
    out << '\n';
  }
}

// Exact k nearest neighbours by Euclidean distance on coordinates,
// ascending, self excluded, distance ties broken by lower id.
inline std::vector<std::vector<int>> knn(const GeoDataset& ds, int k) {
  const int n = ds.count();
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("knn: k must be in [1, N-1], got k=" +
                                std::to_string(k) + " with N=" + std::to_string(n));
  // Index points by id so neighbour lists refer to ids regardless of row order.
  std::vector<const PointRecord*> by_id(n);
  for (const auto& p : ds.points) by_id[p.id] = &p;

  std::vector<std::vector<int>> out(n);
  std::vector<std::pair<double, int>> cand;
  cand.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    cand.clear();
    const auto& pi = *by_id[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto& pj = *by_id[j];
      const double dx = pi.coord[0] - pj.coord[0];
      const double dy = pi.coord[1] - pj.coord[1];
      cand.emplace_back(dx * dx + dy * dy, j);
    }
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    out[i].reserve(k);
    for (int r = 0; r < k; ++r) out[i].push_back(cand[r].second);
  }
  return out;
}

// A subregion stacks a point's attributes with those of its radius-1
// nearest neighbours into one vector of length dim * radius.
struct SubregionSet {
  int radius = 1;
  int dim = 0;
  std::vector<Eigen::VectorXd> stacked;          // [n] -> dim*radius vector
  std::vector<std::vector<int>> neighbor_lists;  // [n] -> radius-1 ids, nearest first
  std::vector<int> nearest_subregion;            // [n] -> 1-NN id, always != n

  int size() const { return static_cast<int>(stacked.size()); }
};

inline SubregionSet build_subregions(const GeoDataset& ds, int radius) {
  const int n = ds.count();
  if (n < 2) throw std::invalid_argument("build_subregions: need at least 2 points");
  if (radius < 1 || radius > n)
    throw std::invalid_argument("build_subregions: radius must be in [1, N]");

  std::vector<const PointRecord*> by_id(n);
  for (const auto& p : ds.points) by_id[p.id] = &p;

  const auto lists = knn(ds, std::max(1, radius - 1));
  SubregionSet subs;
  subs.radius = radius;
  subs.dim = ds.dim_attributes;
  subs.stacked.resize(n);
  subs.neighbor_lists.resize(n);
  subs.nearest_subregion.resize(n);
  const int d = ds.dim_attributes;
  for (int i = 0; i < n; ++i) {
    subs.nearest_subregion[i] = lists[i][0];
    if (radius >= 2)
      subs.neighbor_lists[i].assign(lists[i].begin(), lists[i].begin() + (radius - 1));
    Eigen::VectorXd x(d * radius);
    x.segment(0, d) = by_id[i]->attrs;
    for (int r = 1; r < radius; ++r)
      x.segment(r * d, d) = by_id[subs.neighbor_lists[i][r - 1]]->attrs;
    subs.stacked[i] = std::move(x);
  }
  return subs;
}

}  // namespace sticc
