// Command-line front end: generate | fit | evaluate | interpret | benchmark.

#include <CLI11.hpp>

#include "sticc/cli.hpp"
#include "sticc/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spatially constrained Toeplitz-precision clustering"};
  app.set_version_flag("--version", sticc::kVersion);
  app.require_subcommand(1);

  sticc::cli::GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Generate a synthetic benchmark dataset");
  gen->add_option("--layout", gen_args.layout_path, "Region layout JSON (default: built-in)");
  gen->add_option("--seed", gen_args.seed, "Random seed");
  gen->add_option("--out", gen_args.out_dir, "Output directory");

  sticc::cli::FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Cluster a point dataset");
  fit->add_option("input", fit_args.input, "Input points CSV (id,x,y,attrs...)")->required();
  fit->add_option("--k", fit_args.config.k, "Number of clusters");
  fit->add_option("--radius", fit_args.config.radius, "Subregion radius R");
  fit->add_option("--beta", fit_args.config.beta, "Spatial consistency penalty");
  fit->add_option("--lambda", fit_args.config.lam, "Off-diagonal l1 weight");
  fit->add_option("--max-iter", fit_args.config.max_em_iter, "EM iteration cap");
  fit->add_option("--seed", fit_args.config.seed, "Random seed");
  fit->add_option("--init", fit_args.init, "Initialization: kmeans | random");
  fit->add_option("--admm-rho", fit_args.config.admm.rho, "ADMM penalty parameter");
  fit->add_option("--admm-max-iter", fit_args.config.admm.max_iter, "ADMM iteration cap");
  fit->add_option("--admm-eps-abs", fit_args.config.admm.eps_abs, "ADMM absolute tolerance");
  fit->add_option("--admm-eps-rel", fit_args.config.admm.eps_rel, "ADMM relative tolerance");
  fit->add_option("--out", fit_args.out_dir, "Output directory");

  sticc::cli::EvaluateArgs eval_args;
  auto* eval = app.add_subcommand("evaluate", "Score labels against ground truth");
  eval->add_option("--labels", eval_args.labels_path, "Predicted labels CSV")->required();
  eval->add_option("--truth", eval_args.truth_path, "Ground-truth labels CSV")->required();
  eval->add_option("--points", eval_args.points_path, "Points CSV for adjacency")->required();
  eval->add_option("--adjacency", eval_args.adjacency, "Adjacency: delaunay | knn");
  eval->add_option("--adjacency-k", eval_args.adjacency_k, "k for knn adjacency");
  eval->add_option("--out", eval_args.out_dir, "Output directory");

  sticc::cli::InterpretArgs interp_args;
  auto* interp = app.add_subcommand("interpret", "Extract MRF graphs and centrality");
  interp->add_option("--models", interp_args.models_path, "Models JSON from fit")->required();
  interp->add_option("--threshold", interp_args.threshold, "Edge magnitude threshold");
  interp->add_option("--out", interp_args.out_dir, "Output directory");

  sticc::cli::BenchmarkArgs bench_args;
  auto* bench = app.add_subcommand("benchmark", "Run the full comparison grid");
  bench->add_option("--seeds", bench_args.seeds, "Number of seeds");
  bench->add_option("--base-seed", bench_args.base_seed, "First seed");
  bench->add_option("--lambda", bench_args.lambda, "Off-diagonal l1 weight");
  bench->add_option("--layout", bench_args.layout_path, "Region layout JSON");
  bench->add_option("--out", bench_args.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help/--version exit 0; usage errors exit 2
  }

  if (gen->parsed()) return sticc::cli::run_generate(gen_args);
  if (fit->parsed()) return sticc::cli::run_fit(fit_args);
  if (eval->parsed()) return sticc::cli::run_evaluate(eval_args);
  if (interp->parsed()) return sticc::cli::run_interpret(interp_args);
  if (bench->parsed()) return sticc::cli::run_benchmark(bench_args);
  return 2;
}
