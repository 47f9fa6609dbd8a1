#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "liesys/algebra.hpp"
#include "liesys/errors.hpp"
#include "liesys/registry.hpp"
#include "liesys/scenario.hpp"

namespace {

/// Consistency, solvability and ad-representation sweep over a list of algebras.
bool check_algebras(const std::vector<liesys::AlgebraEntry>& entries, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  bool all_ok = true;
  for (const auto& e : entries) {
    const auto& sc = e.constants;
    const auto report = liesys::check_consistency(sc);
    double ad_residual = 0.0;
    for (int k = 0; k < 100; ++k) {
      liesys::Vec x(sc.dim()), y(sc.dim());
      for (int i = 0; i < sc.dim(); ++i) {
        x(i) = coef(rng);
        y(i) = coef(rng);
      }
      const liesys::Mat ax = liesys::ad_matrix(x, sc), ay = liesys::ad_matrix(y, sc);
      const liesys::Mat lhs = liesys::ad_matrix(liesys::bracket(x, y, sc), sc);
      ad_residual = std::max(ad_residual, (lhs - (ax * ay - ay * ax)).norm());
    }
    const auto series = liesys::is_solvable(sc);
    const bool ok = report.ok() && ad_residual < 1e-10;
    all_ok = all_ok && ok;
    std::cout << (ok ? "ok   " : "FAIL ") << e.key << "  dim " << sc.dim()
              << "  antisymmetry " << report.max_antisymmetry << "  jacobi " << report.max_jacobi
              << "  ad-rep " << ad_residual << "  solvable " << (series.solvable ? "yes" : "no")
              << "  derived dims (";
    for (std::size_t i = 0; i < series.dims.size(); ++i) std::cout << (i ? "," : "") << series.dims[i];
    std::cout << ")\n";
    for (const auto& v : report.violations) {
      std::cout << "     "
                << (v.kind == liesys::ConsistencyViolation::Kind::Antisymmetry ? "antisymmetry"
                                                                                : "jacobi")
                << " violation at (";
      for (std::size_t i = 0; i < v.indices.size(); ++i) std::cout << (i ? "," : "") << v.indices[i] + 1;
      std::cout << ") residual " << v.residual << '\n';
    }
  }
  return all_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie systems solver: Wei-Norman integration, reconstruction and verification"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol, fixed_step;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--tol", tol, "absolute and relative integrator tolerance");
  app.add_option("--fixed-step", fixed_step, "use fixed-step RK4 with this step");
  app.add_option("--out-dir", out_dir, "directory for trajectory files and reports");
  app.add_option("--seed", seed, "seed for randomized checks");

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("config", config_path, "scenario file")->required();

  app.add_subcommand("list-models", "print the model catalog");

  std::string algebra_file;
  auto* check = app.add_subcommand("check-algebras", "registry consistency sweep");
  check->add_option("--file", algebra_file, "additional algebra definition file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto result = liesys::run_scenario(liesys::load_scenario(config_path),
                                               {tol, fixed_step, out_dir, seed});
      for (const auto& [name, task] : result.report["tasks"].items())
        std::cout << name << ": " << task["status"].get<std::string>() << '\n';
      for (const auto& f : result.files) std::cout << "wrote " << f << '\n';
      std::cout << (result.ok ? "all thresholds met" : "threshold violated") << '\n';
      return result.ok ? 0 : 1;
    }
    if (app.got_subcommand("list-models")) {
      std::cout << liesys::list_models();
      return 0;
    }
    if (check->parsed()) {
      std::vector<liesys::AlgebraEntry> entries = liesys::builtin_algebras();
      if (!algebra_file.empty()) {
        std::ifstream in(algebra_file);
        if (!in) throw liesys::Error("cannot open '" + algebra_file + "'");
        for (auto& e : liesys::parse_algebra_definitions(in)) entries.push_back(std::move(e));
      }
      return check_algebras(entries, seed.value_or(0)) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
