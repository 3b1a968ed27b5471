#pragma once
// File formats: labels/trace CSV, models and metrics JSON, layout JSON.

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sticc/dataset.hpp"
#include "sticc/em.hpp"
#include "sticc/metrics.hpp"
#include "sticc/model.hpp"
#include "sticc/synthgen.hpp"
#include "sticc/text.hpp"

namespace sticc {

inline void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "id,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

// Returns labels indexed by id; the file may list rows in any order.
inline std::vector<int> read_labels_csv(const std::string& path) {
  auto lines = detail::read_lines(path);
  if (lines.empty()) throw EmptyInputError("empty file: " + path);
  const auto header = split_csv(lines[0]);
  int id_col = -1, label_col = -1;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    if (trim(header[i]) == "id") id_col = i;
    if (trim(header[i]) == "label") label_col = i;
  }
  if (id_col < 0 || label_col < 0)
    throw SchemaError("label file needs 'id' and 'label' columns: " + path);
  std::vector<std::pair<int, int>> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (trim(lines[r]).empty()) continue;
    auto fields = split_csv(lines[r]);
    if (static_cast<int>(fields.size()) <= std::max(id_col, label_col))
      throw ParseError("row " + std::to_string(r) + ": too few fields in " + path);
    auto id = parse_int(fields[id_col]);
    auto label = parse_int(fields[label_col]);
    if (!id || !label)
      throw ParseError("row " + std::to_string(r) + ": non-integer cell in " + path);
    rows.emplace_back(static_cast<int>(*id), static_cast<int>(*label));
  }
  if (rows.empty()) throw EmptyInputError("no data rows in " + path);
  std::vector<int> labels(rows.size(), -1);
  for (auto [id, label] : rows) {
    if (id < 0 || id >= static_cast<int>(rows.size()) || labels[id] != -1)
      throw ParseError("label ids must be unique integers 0..N-1 in " + path);
    labels[id] = label;
  }
  return labels;
}

inline void write_trace_csv(const std::string& path,
                            const std::vector<IterationStats>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "iter,objective,likelihood,penalty,sparsity\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    out << (i + 1) << ',' << format_double(trace[i].objective) << ','
        << format_double(trace[i].likelihood) << ',' << format_double(trace[i].penalty)
        << ',' << format_double(trace[i].sparsity) << '\n';
}

inline nlohmann::json models_to_json(const std::vector<ClusterModel>& models) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t k = 0; k < models.size(); ++k) {
    const auto& m = models[k];
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : m.precision().blocks) {
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index i = 0; i < b.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < b.cols(); ++j) row.push_back(b(i, j));
        rows.push_back(std::move(row));
      }
      blocks.push_back(std::move(rows));
    }
    nlohmann::json mean = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.mean().size(); ++i) mean.push_back(m.mean()[i]);
    arr.push_back({{"cluster", k},
                   {"mean", std::move(mean)},
                   {"blocks", std::move(blocks)},
                   {"R", m.precision().radius},
                   {"D", m.precision().dim},
                   {"log_det", m.log_det()},
                   {"member_count", m.member_count()}});
  }
  return arr;
}

inline std::vector<ClusterModel> models_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw std::runtime_error("models JSON: expected an array");
  std::vector<ClusterModel> models;
  for (const auto& item : arr) {
    const int radius = item.at("R").get<int>();
    const int dim = item.at("D").get<int>();
    std::vector<Eigen::MatrixXd> blocks;
    for (const auto& b : item.at("blocks")) {
      Eigen::MatrixXd mat(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) mat(i, j) = b.at(i).at(j).get<double>();
      blocks.push_back(std::move(mat));
    }
    if (static_cast<int>(blocks.size()) != radius)
      throw std::runtime_error("models JSON: block count does not match R");
    const auto& mj = item.at("mean");
    Eigen::VectorXd mean(mj.size());
    for (std::size_t i = 0; i < mj.size(); ++i) mean[i] = mj.at(i).get<double>();
    models.emplace_back(std::move(mean), make_toeplitz(std::move(blocks)),
                        item.value("member_count", 0));
  }
  return models;
}

inline nlohmann::json metrics_to_json(const MetricReport& report) {
  return {{"ari", report.ari},
          {"macro_f1", report.macro_f1.value},
          {"permutation", report.macro_f1.permutation},
          {"join_count",
           {{"same", report.join.same},
            {"diff", report.join.diff},
            {"total", report.join.total},
            {"ratio", report.join.ratio}}}};
}

inline void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

inline std::vector<RegionSpec> layout_from_json(const nlohmann::json& arr) {
  if (!arr.is_array() || arr.empty())
    throw std::runtime_error("layout JSON: expected a non-empty array of regions");
  std::vector<RegionSpec> regions;
  for (const auto& item : arr) {
    RegionSpec r;
    r.id = item.at("id").get<int>();
    r.cluster = item.at("cluster").get<int>();
    const auto& rect = item.at("rect");
    if (!rect.is_array() || rect.size() != 4)
      throw std::runtime_error("layout JSON: 'rect' must be [x0,y0,x1,y1]");
    for (int i = 0; i < 4; ++i) r.rect[i] = rect.at(i).get<double>();
    r.point_count = item.at("n").get<int>();
    const std::string density = item.value("density", "uniform");
    if (density == "uniform")
      r.density = RegionSpec::Density::uniform;
    else if (density == "gradient")
      r.density = RegionSpec::Density::gradient;
    else
      throw std::runtime_error("layout JSON: unknown density '" + density + "'");
    regions.push_back(r);
  }
  return regions;
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return nlohmann::json::parse(in);  // parse_error carries byte position
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace sticc
