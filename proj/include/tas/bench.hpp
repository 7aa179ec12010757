#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tas/femcore.hpp"
#include "tas/linsolve.hpp"
#include "tas/mesh.hpp"
#include "tas/report.hpp"
#include "tas/tascore.hpp"

namespace tas::bench {

// Quadrature convention for assembly and the error integral.  `exact` picks
// the degree-adapted rules; `fixed3` forces three points per direction
// everywhere, the convention of the classic tutorial solvers that produced
// part of the bundled reference tables.
enum class QuadMode { exact, fixed3 };

QuadMode quad_mode_from_string(std::string_view name);
femcore::Family family_from_string(std::string_view name);
meshgen::CellKind cell_kind_from_string(std::string_view name);
linsolve::Preconditioner precond_from_string(std::string_view name);
std::string_view to_string(femcore::Family family);
std::string_view to_string(meshgen::CellKind kind);

// A refinement ladder over one case: every (family, degree) combination is
// run at n = n0 * 2^level for level = 0 .. levels-1.
struct BenchPlan {
  std::string case_id = "test1";
  meshgen::CellKind kind = meshgen::CellKind::quadrilateral;
  std::vector<femcore::Family> families{femcore::Family::cg};
  std::vector<int> degrees{1};
  int n0 = 10;
  int levels = 3;
  double rtol = 1e-10;
  std::int64_t max_iter = 0;  // 0 -> solver default
  int repeats = 3;
  QuadMode quad_mode = QuadMode::exact;
  linsolve::Preconditioner precond = linsolve::Preconditioner::ssor;
};

// Run the ladder and return one record per solve.
//
// Timing protocol: the measured region is assembly plus linear solve,
// including preconditioner setup, which the solver performs internally.
// Mesh and space construction and the error integral are outside it.  Each
// level is repeated `repeats` times and the median wall-clock time recorded.
// Labels follow "{CG|DG}{degree}-{quad|tri|hex}-{case}".  A non-converged
// solve still yields a record, flagged in `extra`; a solver error skips the
// record with a note to `log`.  Capability violations (unsupported
// family/degree/mesh combinations) throw CapabilityError.
std::vector<tascore::BenchmarkRecord> run_bench(const BenchPlan& plan,
                                                std::ostream* log = nullptr);

// Command layer shared by the command-line tool and the python module.  Each
// writes human-readable progress or results to `log` and throws on failure:
// InvalidInputError / FormatError / CapabilityError for unusable requests,
// other tas::Error for operational failures.

// Run a plan and write the records to `out` (.jsonl or .csv); with an empty
// `out` the records go to `log` as JSON lines instead.
void cmd_bench(const BenchPlan& plan, const std::filesystem::path& out,
               std::ostream& log);

struct AnalyzePlan {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out_dir;  // empty -> no files written
  int finest_k = 0;               // 0 -> fit over all points
  std::vector<report::DiagramKind> kinds{report::DiagramKind::mesh_convergence};
  report::TableStyle table_style = report::TableStyle::compact;
};

// Read record files, derive series, print the table to `log`, and (with an
// out_dir) write table.txt plus one SVG per requested kind.
void cmd_analyze(const AnalyzePlan& plan, std::ostream& log);

struct ModelPlan {
  double c = 10.0;
  double w = 0.1;
  double d = 4.0;
  std::vector<double> alphas{2.0, 3.0, 4.0};
  std::vector<int> dims{2};
  double h0 = 0.1;
  int levels = 10;
  std::filesystem::path out_dir;  // empty -> no files written
};

// Evaluate the closed-form cost model per (alpha, dim) pair, print the full
// table to `log`, and (with an out_dir) write model_table.txt, doe.svg and
// true_static_scaling.svg.
void cmd_model(const ModelPlan& plan, std::ostream& log);

}  // namespace tas::bench
