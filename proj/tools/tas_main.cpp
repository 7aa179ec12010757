#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tas/bench.hpp"
#include "tas/error.hpp"

namespace {

int run(const CLI::App& app, CLI::App* bench_cmd, CLI::App* analyze_cmd,
        const tas::bench::BenchPlan& bench_plan, const std::string& bench_out,
        const tas::bench::AnalyzePlan& analyze_plan,
        const tas::bench::ModelPlan& model_plan) {
  if (app.got_subcommand(bench_cmd)) {
    tas::bench::cmd_bench(bench_plan, bench_out, std::cout);
  } else if (app.got_subcommand(analyze_cmd)) {
    tas::bench::cmd_analyze(analyze_plan, std::cout);
  } else {
    tas::bench::cmd_model(model_plan, std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tas: time-accuracy-size benchmarking for Poisson solvers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tas 1.0.0");

  // ---- bench ----------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand(
      "bench", "run a refinement ladder of Poisson solves and record it");
  std::string b_case = "test1", b_kind = "quad", b_quad = "exact",
              b_precond = "ssor", b_out;
  std::vector<std::string> b_families = {"cg"};
  std::vector<int> b_degrees = {1};
  int b_n0 = 10, b_levels = 3, b_repeats = 3;
  double b_rtol = 1e-10;
  std::int64_t b_max_iter = 0;
  bench_cmd->add_option("--case", b_case, "manufactured case id (test1..test4)")
      ->capture_default_str();
  bench_cmd->add_option("--kind", b_kind, "mesh kind: quad, tri, hex")
      ->capture_default_str();
  bench_cmd
      ->add_option("--family", b_families, "element family: cg, dg (repeatable)")
      ->capture_default_str();
  bench_cmd
      ->add_option("--degree", b_degrees, "polynomial degree (repeatable)")
      ->capture_default_str();
  bench_cmd->add_option("--n0", b_n0, "cells per axis on the coarsest level")
      ->capture_default_str();
  bench_cmd->add_option("--levels", b_levels, "number of refinement levels")
      ->capture_default_str();
  bench_cmd->add_option("--rtol", b_rtol, "solver relative tolerance")
      ->capture_default_str();
  bench_cmd
      ->add_option("--max-iter", b_max_iter, "solver iteration cap (0 = auto)")
      ->capture_default_str();
  bench_cmd
      ->add_option("--repeats", b_repeats,
                   "timed repetitions per level (median is recorded)")
      ->capture_default_str();
  bench_cmd
      ->add_option("--quad-mode", b_quad,
                   "quadrature convention: exact or fixed3")
      ->capture_default_str();
  bench_cmd
      ->add_option("--precond", b_precond,
                   "preconditioner: none, jacobi, ssor")
      ->capture_default_str();
  bench_cmd->add_option(
      "--out", b_out,
      "record file to write (.jsonl or .csv); JSON lines to stdout if omitted");

  // ---- analyze --------------------------------------------------------------
  auto* analyze_cmd = app.add_subcommand(
      "analyze", "derive accuracy/efficacy series from record files");
  std::vector<std::string> a_in;
  std::string a_out_dir, a_table = "compact";
  int a_finest_k = 0;
  std::vector<std::string> a_kinds = {"mesh_convergence"};
  analyze_cmd
      ->add_option("--in", a_in, "record files (.jsonl or .csv, repeatable)")
      ->required();
  analyze_cmd->add_option("--out-dir", a_out_dir,
                          "directory for table.txt and diagrams");
  analyze_cmd
      ->add_option("--finest-k", a_finest_k,
                   "fit slopes over the finest K levels only (0 = all; the "
                   "conventional window is 3)")
      ->capture_default_str();
  analyze_cmd
      ->add_option("--kind", a_kinds,
                   "diagram kind: mesh_convergence, static_scaling, doe, "
                   "true_static_scaling (repeatable)")
      ->capture_default_str();
  analyze_cmd->add_option("--table", a_table, "table style: compact or full")
      ->capture_default_str();

  // ---- model ----------------------------------------------------------------
  auto* model_cmd = app.add_subcommand(
      "model", "evaluate the closed-form cost model err=C h^a, T=W h^-d");
  tas::bench::ModelPlan model_plan;
  std::string m_out_dir;
  model_cmd->add_option("--C", model_plan.c, "error constant C")
      ->capture_default_str();
  model_cmd->add_option("--W", model_plan.w, "work constant W")
      ->capture_default_str();
  model_cmd->add_option("--D", model_plan.d, "dof density D")
      ->capture_default_str();
  model_cmd
      ->add_option("--alpha", model_plan.alphas,
                   "convergence order alpha (repeatable)")
      ->capture_default_str();
  model_cmd->add_option("--dim", model_plan.dims, "dimension d (repeatable)")
      ->capture_default_str();
  model_cmd->add_option("--h0", model_plan.h0, "coarsest mesh size")
      ->capture_default_str();
  model_cmd->add_option("--levels", model_plan.levels, "halving levels")
      ->capture_default_str();
  model_cmd->add_option("--out-dir", m_out_dir,
                        "directory for model_table.txt and diagrams");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    tas::bench::BenchPlan bench_plan;
    bench_plan.case_id = b_case;
    bench_plan.kind = tas::bench::cell_kind_from_string(b_kind);
    bench_plan.families.clear();
    for (const std::string& f : b_families)
      bench_plan.families.push_back(tas::bench::family_from_string(f));
    bench_plan.degrees = b_degrees;
    bench_plan.n0 = b_n0;
    bench_plan.levels = b_levels;
    bench_plan.rtol = b_rtol;
    bench_plan.max_iter = b_max_iter;
    bench_plan.repeats = b_repeats;
    bench_plan.quad_mode = tas::bench::quad_mode_from_string(b_quad);
    bench_plan.precond = tas::bench::precond_from_string(b_precond);

    tas::bench::AnalyzePlan analyze_plan;
    for (const std::string& path : a_in) analyze_plan.inputs.emplace_back(path);
    analyze_plan.out_dir = a_out_dir;
    analyze_plan.finest_k = a_finest_k;
    analyze_plan.kinds.clear();
    for (const std::string& kind : a_kinds)
      analyze_plan.kinds.push_back(tas::report::diagram_kind_from_string(kind));
    analyze_plan.table_style = [&] {
      if (a_table == "compact") return tas::report::TableStyle::compact;
      if (a_table == "full") return tas::report::TableStyle::full;
      throw tas::InvalidInputError("unknown table style '" + a_table +
                                   "' (expected compact or full)");
    }();

    model_plan.out_dir = m_out_dir;

    return run(app, bench_cmd, analyze_cmd, bench_plan, b_out, analyze_plan,
               model_plan);
  } catch (const tas::CapabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const tas::InvalidInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const tas::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const tas::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
