#include "tas/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "tas/errnorm.hpp"
#include "tas/error.hpp"
#include "tas/records.hpp"

namespace tas::bench {

using femcore::Family;
using linsolve::Preconditioner;
using meshgen::CellKind;
using tascore::BenchmarkRecord;

QuadMode quad_mode_from_string(std::string_view name) {
  if (name == "exact") return QuadMode::exact;
  if (name == "fixed3") return QuadMode::fixed3;
  throw InvalidInputError("unknown quadrature mode '" + std::string(name) +
                          "' (expected exact or fixed3)");
}

Family family_from_string(std::string_view name) {
  if (name == "cg") return Family::cg;
  if (name == "dg") return Family::dg;
  throw InvalidInputError("unknown family '" + std::string(name) +
                          "' (expected cg or dg)");
}

CellKind cell_kind_from_string(std::string_view name) {
  if (name == "quad") return CellKind::quadrilateral;
  if (name == "tri") return CellKind::triangle;
  if (name == "hex") return CellKind::hexahedron;
  throw InvalidInputError("unknown mesh kind '" + std::string(name) +
                          "' (expected quad, tri, or hex)");
}

Preconditioner precond_from_string(std::string_view name) {
  if (name == "none") return Preconditioner::none;
  if (name == "jacobi") return Preconditioner::jacobi;
  if (name == "ssor") return Preconditioner::ssor;
  throw InvalidInputError("unknown preconditioner '" + std::string(name) +
                          "' (expected none, jacobi, or ssor)");
}

std::string_view to_string(Family family) {
  return family == Family::cg ? "cg" : "dg";
}

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::triangle: return "tri";
    case CellKind::quadrilateral: return "quad";
    case CellKind::hexahedron: return "hex";
  }
  return "?";
}

namespace {

void check_plan(const BenchPlan& plan) {
  if (plan.case_id.empty()) throw InvalidInputError("bench: empty case id");
  if (plan.families.empty()) throw InvalidInputError("bench: no families");
  if (plan.degrees.empty()) throw InvalidInputError("bench: no degrees");
  if (plan.n0 < 1) throw InvalidInputError("bench: n0 must be >= 1");
  if (plan.levels < 1) throw InvalidInputError("bench: levels must be >= 1");
  if (plan.repeats < 1) throw InvalidInputError("bench: repeats must be >= 1");
  if (!(plan.rtol > 0.0) || !std::isfinite(plan.rtol))
    throw InvalidInputError("bench: rtol must be finite and > 0");
  if (plan.max_iter < 0) throw InvalidInputError("bench: max_iter must be >= 0");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string make_label(Family family, int degree, CellKind kind,
                       const std::string& case_id) {
  std::string label = family == Family::cg ? "CG" : "DG";
  label += std::to_string(degree);
  label += '-';
  label += to_string(kind);
  label += '-';
  label += case_id;
  return label;
}

}  // namespace

std::vector<BenchmarkRecord> run_bench(const BenchPlan& plan,
                                       std::ostream* log) {
  check_plan(plan);
  femcore::MmsCase mms = femcore::mms_case(plan.case_id);
  int quad_points = plan.quad_mode == QuadMode::fixed3 ? 3 : 0;

  std::vector<BenchmarkRecord> out;
  for (Family family : plan.families) {
    for (int degree : plan.degrees) {
      for (int level = 0; level < plan.levels; ++level) {
        int n = plan.n0 << level;
        auto mesh = std::make_shared<meshgen::Mesh>(
            plan.kind == CellKind::hexahedron
                ? meshgen::unit_cube(n)
                : meshgen::unit_square(n, plan.kind));
        femcore::FunctionSpace space =
            femcore::build_space(mesh, family, degree);

        std::vector<double> times;
        femcore::AssembledSystem sys;
        linsolve::SolveReport report;
        try {
          for (int rep = 0; rep < plan.repeats; ++rep) {
            auto t0 = std::chrono::steady_clock::now();
            sys = family == Family::cg
                      ? femcore::assemble_cg(space, mms, quad_points)
                      : femcore::assemble_sip_dg(space, mms, quad_points);
            report = linsolve::pcg(sys.matrix, sys.rhs, plan.precond,
                                   plan.rtol, plan.max_iter);
            auto t1 = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double>(t1 - t0).count());
          }
        } catch (const Error& e) {
          if (log)
            *log << "warning: " << make_label(family, degree, plan.kind, plan.case_id)
                 << " n=" << n << ": " << e.what() << "; level skipped\n";
          continue;
        }

        std::vector<double> u = sys.expand(report.solution);
        double err = errnorm::l2_error(space, u, mms.exact, 4, quad_points);

        BenchmarkRecord rec;
        rec.label = make_label(family, degree, plan.kind, plan.case_id);
        rec.family = std::string(to_string(family));
        rec.degree = degree;
        rec.dim = mesh->dim;
        rec.h = mesh->h();
        rec.n_dofs = space.n_dofs;
        rec.l2_error = err;
        // guard against a timer tick of zero on trivially small systems
        rec.time_seconds = std::max(median(times), 1e-9);
        rec.n_procs = 1;
        rec.extra.emplace_back("iterations", std::to_string(report.iterations));
        rec.extra.emplace_back("converged",
                               report.converged ? "true" : "false");
        rec.extra.emplace_back(
            "precond", plan.precond == Preconditioner::none     ? "\"none\""
                       : plan.precond == Preconditioner::jacobi ? "\"jacobi\""
                                                                : "\"ssor\"");
        if (plan.quad_mode == QuadMode::fixed3)
          rec.extra.emplace_back("quad_mode", "\"fixed3\"");
        out.push_back(rec);

        if (log) {
          char line[160];
          std::snprintf(line, sizeof line,
                        "%s n=%d dofs=%lld err=%.6e t=%.3fs it=%lld%s\n",
                        rec.label.c_str(), n, (long long)rec.n_dofs, err,
                        rec.time_seconds, (long long)report.iterations,
                        report.converged ? "" : " (not converged)");
          *log << line;
        }
      }
    }
  }
  return out;
}

void cmd_bench(const BenchPlan& plan, const std::filesystem::path& out,
               std::ostream& log) {
  std::vector<BenchmarkRecord> recs = run_bench(plan, &log);
  if (recs.empty()) throw Error("bench produced no records");

  records::RecordFile file;
  file.metadata.emplace_back("tool", "\"tas\"");
  file.metadata.emplace_back("case", "\"" + plan.case_id + "\"");
  file.metadata.emplace_back(
      "mesh", "\"" + std::string(to_string(plan.kind)) + "\"");
  file.records = std::move(recs);

  if (out.empty()) {
    std::ostringstream buf;
    records::write_jsonl(buf, file);
    log << buf.str();
  } else {
    records::write_records(out, file);
    log << "wrote " << file.records.size() << " record(s) to " << out.string()
        << '\n';
  }
}

void cmd_analyze(const AnalyzePlan& plan, std::ostream& log) {
  if (plan.inputs.empty())
    throw InvalidInputError("analyze: no input files given");
  if (plan.finest_k < 0)
    throw InvalidInputError("analyze: finest-k must be >= 0");

  std::vector<BenchmarkRecord> all;
  for (const std::filesystem::path& path : plan.inputs) {
    records::ReadResult result = records::read_records(path);
    for (const records::Diagnostic& d : result.diagnostics)
      log << "warning: " << path.string() << " row " << d.row << ": "
          << d.message << '\n';
    all.insert(all.end(), result.file.records.begin(),
               result.file.records.end());
  }
  if (all.empty())
    throw InvalidInputError("analyze: no valid records in the input files");

  std::vector<tascore::TasSeries> series =
      tascore::derive_series(all, plan.finest_k);
  std::string table = report::render_table(series, plan.table_style);
  log << table;

  if (!plan.out_dir.empty()) {
    std::filesystem::create_directories(plan.out_dir);
    {
      std::ofstream f(plan.out_dir / "table.txt", std::ios::binary);
      if (!f) throw Error("cannot write table.txt");
      f << table;
    }
    for (report::DiagramKind kind : plan.kinds) {
      report::DiagramSpec spec;
      spec.kind = kind;
      std::string svg = report::render_svg(series, spec);
      std::filesystem::path path =
          plan.out_dir / (std::string(report::to_string(kind)) + ".svg");
      std::ofstream f(path, std::ios::binary);
      if (!f) throw Error("cannot write " + path.string());
      f << svg;
    }
    log << "wrote table.txt and " << plan.kinds.size()
        << " diagram(s) to " << plan.out_dir.string() << '\n';
  }
}

void cmd_model(const ModelPlan& plan, std::ostream& log) {
  if (plan.alphas.empty()) throw InvalidInputError("model: no alpha values");
  if (plan.dims.empty()) throw InvalidInputError("model: no dim values");

  std::vector<tascore::TasSeries> series;
  for (int dim : plan.dims) {
    for (double alpha : plan.alphas) {
      tascore::ModelParams params{plan.c, plan.w, plan.d, alpha, dim};
      std::vector<tascore::ModelPoint> pts =
          tascore::model_curves(params, plan.h0, plan.levels);

      tascore::TasSeries s;
      char label[64];
      std::snprintf(label, sizeof label, "model-a%g-%dD", alpha, dim);
      s.key = {label, "model", std::max(1, int(std::lround(alpha))), dim, 1};
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const tascore::ModelPoint& mp = pts[i];
        tascore::SeriesPoint pt;
        pt.record_index = i;
        pt.h = mp.h;
        pt.n_dofs = std::llround(mp.n);
        pt.l2_error = mp.err;
        pt.time_seconds = mp.time_seconds;
        pt.doa = mp.doa;
        pt.dos = mp.dos;
        pt.doe = mp.doe;
        pt.rate = mp.rate;
        pt.true_rate = mp.true_rate;
        s.points.push_back(pt);
      }
      // The model's slopes are closed-form; no fit needed.
      s.convergence_slope = alpha / dim;
      s.doe_slope = (alpha - dim) / dim;
      s.fit_points = int(pts.size());
      series.push_back(std::move(s));
    }
  }

  std::string table = report::render_table(series, report::TableStyle::full);
  log << table;

  if (!plan.out_dir.empty()) {
    std::filesystem::create_directories(plan.out_dir);
    {
      std::ofstream f(plan.out_dir / "model_table.txt", std::ios::binary);
      if (!f) throw Error("cannot write model_table.txt");
      f << table;
    }
    for (report::DiagramKind kind : {report::DiagramKind::doe,
                                     report::DiagramKind::true_static_scaling}) {
      report::DiagramSpec spec;
      spec.kind = kind;
      std::string svg = report::render_svg(series, spec);
      std::filesystem::path path =
          plan.out_dir / (std::string(report::to_string(kind)) + ".svg");
      std::ofstream f(path, std::ios::binary);
      if (!f) throw Error("cannot write " + path.string());
      f << svg;
    }
    log << "wrote model_table.txt and 2 diagram(s) to "
        << plan.out_dir.string() << '\n';
  }
}

}  // namespace tas::bench
