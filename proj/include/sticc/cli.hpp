#pragma once
// Command implementations behind the CLI front end. Each command validates
// inputs (exit 2), does the work, writes its outputs plus a manifest.json
// snapshot, and returns a process exit code.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "sticc/baselines.hpp"
#include "sticc/dataset.hpp"
#include "sticc/em.hpp"
#include "sticc/interpret.hpp"
#include "sticc/metrics.hpp"
#include "sticc/serialize.hpp"
#include "sticc/synthgen.hpp"
#include "sticc/version.hpp"

namespace sticc::cli {

namespace detail {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

inline void ensure_dir(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace detail

struct GenerateArgs {
  std::string layout_path;  // empty = built-in layout
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

inline int run_generate(const GenerateArgs& args) {
  detail::Timer timer;
  try {
    std::vector<RegionSpec> regions;
    if (args.layout_path.empty())
      regions = default_layout();
    else
      regions = layout_from_json(load_json_file(args.layout_path));
    const auto data = generate(regions, default_attributes(), args.seed);

    detail::ensure_dir(args.out_dir);
    const std::string points_path = detail::join_path(args.out_dir, "points.csv");
    const std::string truth_path = detail::join_path(args.out_dir, "truth.csv");
    save_csv(data.dataset, points_path, {"a", "b", "c", "d", "e"});
    write_labels_csv(truth_path, data.truth);

    write_json_file(detail::join_path(args.out_dir, "manifest.json"),
                    {{"command", "generate"},
                     {"version", kVersion},
                     {"seed", args.seed},
                     {"config",
                      {{"layout", args.layout_path.empty() ? "default" : args.layout_path},
                       {"regions", regions.size()},
                       {"points", data.dataset.count()}}},
                     {"inputs", nlohmann::json::object()},
                     {"outputs", {{"points", points_path}, {"truth", truth_path}}},
                     {"duration_seconds", timer.seconds()}});
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

struct FitArgs {
  std::string input;
  SticcConfig config{};
  std::string init = "kmeans";
  std::string out_dir = ".";
};

inline int run_fit(const FitArgs& args) {
  detail::Timer timer;
  FitResult result;
  SticcConfig cfg = args.config;
  try {
    if (args.init == "kmeans")
      cfg.init = SticcConfig::Init::kmeans;
    else if (args.init == "random")
      cfg.init = SticcConfig::Init::random;
    else
      throw std::invalid_argument("init must be 'kmeans' or 'random'");
    const GeoDataset ds = load_csv(args.input);
    result = fit(ds, cfg);

    detail::ensure_dir(args.out_dir);
    const std::string labels_path = detail::join_path(args.out_dir, "labels.csv");
    const std::string models_path = detail::join_path(args.out_dir, "models.json");
    const std::string trace_path = detail::join_path(args.out_dir, "trace.csv");
    write_labels_csv(labels_path, result.assignment.labels);
    write_json_file(models_path, models_to_json(result.models));
    write_trace_csv(trace_path, result.trace);

    write_json_file(detail::join_path(args.out_dir, "manifest.json"),
                    {{"command", "fit"},
                     {"version", kVersion},
                     {"seed", cfg.seed},
                     {"config",
                      {{"k", cfg.k},
                       {"radius", cfg.radius},
                       {"beta", cfg.beta},
                       {"lambda", cfg.lam},
                       {"max_em_iter", cfg.max_em_iter},
                       {"init", args.init},
                       {"admm",
                        {{"rho", cfg.admm.rho},
                         {"max_iter", cfg.admm.max_iter},
                         {"eps_abs", cfg.admm.eps_abs},
                         {"eps_rel", cfg.admm.eps_rel}}}}},
                     {"inputs", {{"points", args.input}}},
                     {"outputs",
                      {{"labels", labels_path},
                       {"models", models_path},
                       {"trace", trace_path}}},
                     {"result",
                      {{"iterations", result.iterations},
                       {"converged", result.converged},
                       {"objective",
                        result.trace.empty() ? 0.0 : result.trace.back().objective}}},
                     {"duration_seconds", timer.seconds()}});
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return result.converged ? 0 : 3;
}

struct EvaluateArgs {
  std::string labels_path;
  std::string truth_path;
  std::string points_path;
  std::string adjacency = "delaunay";  // or "knn"
  int adjacency_k = 6;
  std::string out_dir = ".";
};

inline int run_evaluate(const EvaluateArgs& args) {
  detail::Timer timer;
  try {
    const std::vector<int> pred = read_labels_csv(args.labels_path);
    const std::vector<int> truth = read_labels_csv(args.truth_path);
    const GeoDataset ds = load_csv(args.points_path);
    if (pred.size() != truth.size() ||
        static_cast<int>(pred.size()) != ds.count())
      throw std::invalid_argument("labels, truth, and points row counts differ");

    AdjacencyGraph adj;
    if (args.adjacency == "delaunay")
      adj = delaunay(ds);
    else if (args.adjacency == "knn")
      adj = knn_adjacency(ds, args.adjacency_k);
    else
      throw std::invalid_argument("adjacency must be 'delaunay' or 'knn'");

    int k = 1;
    for (int l : truth) k = std::max(k, l + 1);
    for (int l : pred) k = std::max(k, l + 1);

    MetricReport report;
    report.ari = ari(truth, pred);
    report.macro_f1 = macro_f1(truth, pred, k);
    report.join = join_count_ratio(pred, adj);

    detail::ensure_dir(args.out_dir);
    const std::string metrics_path = detail::join_path(args.out_dir, "metrics.json");
    write_json_file(metrics_path, metrics_to_json(report));
    write_json_file(detail::join_path(args.out_dir, "manifest.json"),
                    {{"command", "evaluate"},
                     {"version", kVersion},
                     {"config",
                      {{"adjacency", args.adjacency}, {"adjacency_k", args.adjacency_k}}},
                     {"inputs",
                      {{"labels", args.labels_path},
                       {"truth", args.truth_path},
                       {"points", args.points_path}}},
                     {"outputs", {{"metrics", metrics_path}}},
                     {"duration_seconds", timer.seconds()}});
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

struct InterpretArgs {
  std::string models_path;
  double threshold = 1e-5;
  std::string out_dir = ".";
};

inline int run_interpret(const InterpretArgs& args) {
  detail::Timer timer;
  try {
    if (args.threshold < 0) throw std::invalid_argument("threshold must be >= 0");
    const auto models = models_from_json(load_json_file(args.models_path));
    if (models.empty()) throw std::invalid_argument("models file has no models");

    detail::ensure_dir(args.out_dir);
    nlohmann::json centrality = nlohmann::json::array();
    std::vector<std::string> graph_paths;
    for (std::size_t k = 0; k < models.size(); ++k) {
      const MrfGraph g = extract_graph(models[k].precision(), args.threshold);
      const Eigen::MatrixXd theta = assemble(models[k].precision());
      const std::string graph_path = detail::join_path(
          args.out_dir, "cluster_" + std::to_string(k) + "_graph.csv");
      {
        std::ofstream out(graph_path);
        if (!out) throw std::runtime_error("cannot write file: " + graph_path);
        out << "node_u,node_v,weight\n";
        for (auto [u, v] : g.edges)
          out << u << ',' << v << ',' << format_double(theta(u, v)) << '\n';
      }
      graph_paths.push_back(graph_path);

      nlohmann::json per_attr = nlohmann::json::object();
      const auto values = betweenness(g);
      for (std::size_t a = 0; a < values.size(); ++a)
        per_attr[std::to_string(a)] = values[a];
      centrality.push_back({{"cluster", k}, {"betweenness", std::move(per_attr)}});
    }
    const std::string centrality_path =
        detail::join_path(args.out_dir, "centrality.json");
    write_json_file(centrality_path, centrality);

    write_json_file(detail::join_path(args.out_dir, "manifest.json"),
                    {{"command", "interpret"},
                     {"version", kVersion},
                     {"config", {{"threshold", args.threshold}}},
                     {"inputs", {{"models", args.models_path}}},
                     {"outputs",
                      {{"centrality", centrality_path}, {"graphs", graph_paths}}},
                     {"duration_seconds", timer.seconds()}});
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

struct BenchmarkArgs {
  int seeds = 5;
  std::uint64_t base_seed = 1;
  double lambda = 0.1;
  std::string layout_path;
  std::string out_dir = ".";
};

inline int run_benchmark(const BenchmarkArgs& args) {
  detail::Timer timer;
  try {
    if (args.seeds < 1) throw std::invalid_argument("seeds must be >= 1");
    std::vector<RegionSpec> regions;
    if (args.layout_path.empty())
      regions = default_layout();
    else
      regions = layout_from_json(load_json_file(args.layout_path));
    const auto attrs = default_attributes();
    const int k = 7;

    struct SeedData {
      GeoDataset ds;
      std::vector<int> truth;
      AdjacencyGraph adj;
    };
    std::vector<SeedData> data;
    for (int s = 0; s < args.seeds; ++s) {
      auto gen = generate(regions, attrs, args.base_seed + s);
      AdjacencyGraph adj = delaunay(gen.dataset);
      data.push_back({std::move(gen.dataset), std::move(gen.truth), std::move(adj)});
    }

    struct Row {
      std::string method;
      std::string radius, beta;  // empty for baselines
      double ari_med, f1_med, join_med;
    };
    std::vector<Row> rows;

    auto eval_labels = [&](const SeedData& sd, const std::vector<int>& labels) {
      return std::array<double, 3>{ari(sd.truth, labels),
                                   macro_f1(sd.truth, labels, k).value,
                                   join_count_ratio(labels, sd.adj).ratio};
    };
    auto sticc_row = [&](int radius, double beta) {
      std::vector<double> a, f, j;
      for (int s = 0; s < args.seeds; ++s) {
        SticcConfig cfg;
        cfg.k = k;
        cfg.radius = radius;
        cfg.beta = beta;
        cfg.lam = args.lambda;
        cfg.seed = args.base_seed + s;
        const auto m = eval_labels(data[s], fit(data[s].ds, cfg).assignment.labels);
        a.push_back(m[0]);
        f.push_back(m[1]);
        j.push_back(m[2]);
      }
      return Row{"sticc", std::to_string(radius), format_double(beta),
                 detail::median(a), detail::median(f), detail::median(j)};
    };

    int best_radius = 1;
    double best_ari = -2.0;
    for (int radius = 1; radius <= 4; ++radius) {
      Row row = sticc_row(radius, 3.0);
      if (row.ari_med > best_ari) {
        best_ari = row.ari_med;
        best_radius = radius;
      }
      rows.push_back(std::move(row));
    }
    for (double beta : {0.0, 1.0, 5.0}) rows.push_back(sticc_row(best_radius, beta));

    for (double coord_weight : {0.0, 1.0}) {
      std::vector<double> a, f, j;
      for (int s = 0; s < args.seeds; ++s) {
        KMeansConfig cfg;
        cfg.k = k;
        cfg.seed = args.base_seed + s;
        cfg.coord_weight = coord_weight;
        const auto m = eval_labels(data[s], kmeans(data[s].ds, cfg));
        a.push_back(m[0]);
        f.push_back(m[1]);
        j.push_back(m[2]);
      }
      rows.push_back(Row{coord_weight == 0.0 ? "kmeans" : "spatial_kmeans", "", "",
                         detail::median(a), detail::median(f), detail::median(j)});
    }

    detail::ensure_dir(args.out_dir);
    const std::string bench_path = detail::join_path(args.out_dir, "benchmark.csv");
    {
      std::ofstream out(bench_path);
      if (!out) throw std::runtime_error("cannot write file: " + bench_path);
      out << "method,R,beta,ari,macro_f1,join_count_ratio\n";
      for (const auto& r : rows)
        out << r.method << ',' << r.radius << ',' << r.beta << ','
            << format_double(r.ari_med) << ',' << format_double(r.f1_med) << ','
            << format_double(r.join_med) << '\n';
    }

    write_json_file(detail::join_path(args.out_dir, "manifest.json"),
                    {{"command", "benchmark"},
                     {"version", kVersion},
                     {"seed", args.base_seed},
                     {"config",
                      {{"seeds", args.seeds},
                       {"lambda", args.lambda},
                       {"layout", args.layout_path.empty() ? "default" : args.layout_path},
                       {"best_radius", best_radius}}},
                     {"inputs", nlohmann::json::object()},
                     {"outputs", {{"benchmark", bench_path}}},
                     {"duration_seconds", timer.seconds()}});
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace sticc::cli
