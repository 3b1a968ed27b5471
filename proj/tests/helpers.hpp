#pragma once
// Shared fixture builders for the test suite.

#include <Eigen/Dense>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sticc/dataset.hpp"
#include "sticc/rng.hpp"

namespace testutil {

// Symmetric PD matrix with smallest eigenvalue bounded away from zero.
inline Eigen::MatrixXd random_pd(int n, std::mt19937_64& gen, double floor = 0.5) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 2.0 * sticc::uniform01(gen) - 1.0;
  return a * a.transpose() / n + floor * Eigen::MatrixXd::Identity(n, n);
}

// Scattered points with attributes drawn around a few separated centers.
inline sticc::GeoDataset random_dataset(int n, int dim, int centers,
                                        std::mt19937_64& gen) {
  std::vector<Eigen::VectorXd> mu(centers);
  for (int c = 0; c < centers; ++c) {
    mu[c].resize(dim);
    for (int a = 0; a < dim; ++a) mu[c][a] = 10.0 * c + 3.0 * sticc::uniform01(gen);
  }
  sticc::GeoDataset ds;
  ds.dim_attributes = dim;
  for (int i = 0; i < n; ++i) {
    sticc::PointRecord p;
    p.id = i;
    p.coord[0] = 100.0 * sticc::uniform01(gen);
    p.coord[1] = 100.0 * sticc::uniform01(gen);
    const int c = sticc::uniform_index(gen, centers);
    p.attrs.resize(dim);
    for (int a = 0; a < dim; ++a) p.attrs[a] = mu[c][a] + sticc::normal01(gen);
    ds.points.push_back(std::move(p));
  }
  return ds;
}

inline std::string temp_dir(const std::string& tag) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("sticc_test_" + tag + "_" + std::to_string(++counter) + "_" +
                    std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir.string();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace testutil
