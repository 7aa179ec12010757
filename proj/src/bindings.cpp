#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "tas/bench.hpp"
#include "tas/errnorm.hpp"
#include "tas/error.hpp"
#include "tas/records.hpp"
#include "tas/report.hpp"
#include "tas/tascore.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "time-accuracy-size benchmarking toolkit";
  m.attr("__version__") = "1.0.0";

  // Exception hierarchy; derived translators are registered after the base so
  // they match first.
  auto base = py::register_exception<tas::Error>(m, "TasError");
  py::register_exception<tas::CapabilityError>(m, "CapabilityError", base);
  py::register_exception<tas::OutOfDomainError>(m, "OutOfDomainError", base);
  py::register_exception<tas::NotSpdError>(m, "NotSpdError", base);
  py::register_exception<tas::FormatError>(m, "FormatError", base);
  py::register_exception<tas::InvalidInputError>(m, "InvalidInputError", base);

  // ---- core record and series types -----------------------------------------
  py::class_<tas::tascore::BenchmarkRecord>(m, "BenchmarkRecord")
      .def(py::init<>())
      .def_readwrite("label", &tas::tascore::BenchmarkRecord::label)
      .def_readwrite("family", &tas::tascore::BenchmarkRecord::family)
      .def_readwrite("degree", &tas::tascore::BenchmarkRecord::degree)
      .def_readwrite("dim", &tas::tascore::BenchmarkRecord::dim)
      .def_readwrite("h", &tas::tascore::BenchmarkRecord::h)
      .def_readwrite("n_dofs", &tas::tascore::BenchmarkRecord::n_dofs)
      .def_readwrite("l2_error", &tas::tascore::BenchmarkRecord::l2_error)
      .def_readwrite("time_seconds", &tas::tascore::BenchmarkRecord::time_seconds)
      .def_readwrite("n_procs", &tas::tascore::BenchmarkRecord::n_procs)
      .def_readwrite("extra", &tas::tascore::BenchmarkRecord::extra)
      .def("__repr__", [](const tas::tascore::BenchmarkRecord& r) {
        std::ostringstream s;
        s << "BenchmarkRecord(label='" << r.label << "', h=" << r.h
          << ", n_dofs=" << r.n_dofs << ", l2_error=" << r.l2_error << ")";
        return s.str();
      });

  py::class_<tas::tascore::SeriesKey>(m, "SeriesKey")
      .def_readonly("label", &tas::tascore::SeriesKey::label)
      .def_readonly("family", &tas::tascore::SeriesKey::family)
      .def_readonly("degree", &tas::tascore::SeriesKey::degree)
      .def_readonly("dim", &tas::tascore::SeriesKey::dim)
      .def_readonly("n_procs", &tas::tascore::SeriesKey::n_procs);

  py::class_<tas::tascore::SeriesPoint>(m, "SeriesPoint")
      .def_readonly("record_index", &tas::tascore::SeriesPoint::record_index)
      .def_readonly("h", &tas::tascore::SeriesPoint::h)
      .def_readonly("n_dofs", &tas::tascore::SeriesPoint::n_dofs)
      .def_readonly("l2_error", &tas::tascore::SeriesPoint::l2_error)
      .def_readonly("time_seconds", &tas::tascore::SeriesPoint::time_seconds)
      .def_readonly("doa", &tas::tascore::SeriesPoint::doa)
      .def_readonly("dos", &tas::tascore::SeriesPoint::dos)
      .def_readonly("doe", &tas::tascore::SeriesPoint::doe)
      .def_readonly("rate", &tas::tascore::SeriesPoint::rate)
      .def_readonly("true_rate", &tas::tascore::SeriesPoint::true_rate);

  py::class_<tas::tascore::ExcludedPoint>(m, "ExcludedPoint")
      .def_readonly("record_index", &tas::tascore::ExcludedPoint::record_index)
      .def_readonly("reason", &tas::tascore::ExcludedPoint::reason);

  py::class_<tas::tascore::TasSeries>(m, "TasSeries")
      .def_readonly("key", &tas::tascore::TasSeries::key)
      .def_readonly("points", &tas::tascore::TasSeries::points)
      .def_readonly("excluded", &tas::tascore::TasSeries::excluded)
      .def_readonly("convergence_slope",
                    &tas::tascore::TasSeries::convergence_slope)
      .def_readonly("doe_slope", &tas::tascore::TasSeries::doe_slope)
      .def_readonly("fit_points", &tas::tascore::TasSeries::fit_points);

  // ---- digit measures --------------------------------------------------------
  m.def("doa", &tas::errnorm::doa, py::arg("err"),
        "digits of accuracy: -log10(err)");
  m.def("dos", &tas::errnorm::dos, py::arg("n_dofs"),
        "digits of size: log10(n_dofs)");
  m.def("doe", &tas::tascore::doe, py::arg("err"), py::arg("time_seconds"),
        "digits of efficacy: -log10(err * time)");
  m.def("rate", &tas::tascore::rate, py::arg("n_dofs"), py::arg("time_seconds"),
        "static scaling: dofs per second");
  m.def("true_rate", &tas::tascore::true_rate, py::arg("err"),
        py::arg("n_dofs"), py::arg("time_seconds"),
        "true static scaling: (doa/dos) * (dofs per second)");
  m.def("derive_series", &tas::tascore::derive_series, py::arg("records"),
        py::arg("finest_k") = 0,
        "group records into refinement series and fit slopes");

  // ---- cost model -------------------------------------------------------------
  py::class_<tas::tascore::ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def(py::init([](double c, double w, double d, double alpha, int dim) {
             return tas::tascore::ModelParams{c, w, d, alpha, dim};
           }),
           py::arg("c") = 10.0, py::arg("w") = 0.1, py::arg("d") = 4.0,
           py::arg("alpha") = 2.0, py::arg("dim") = 2)
      .def_readwrite("c", &tas::tascore::ModelParams::c)
      .def_readwrite("w", &tas::tascore::ModelParams::w)
      .def_readwrite("d", &tas::tascore::ModelParams::d)
      .def_readwrite("alpha", &tas::tascore::ModelParams::alpha)
      .def_readwrite("dim", &tas::tascore::ModelParams::dim);

  py::class_<tas::tascore::ModelPoint>(m, "ModelPoint")
      .def_readonly("h", &tas::tascore::ModelPoint::h)
      .def_readonly("err", &tas::tascore::ModelPoint::err)
      .def_readonly("time_seconds", &tas::tascore::ModelPoint::time_seconds)
      .def_readonly("n", &tas::tascore::ModelPoint::n)
      .def_readonly("doa", &tas::tascore::ModelPoint::doa)
      .def_readonly("dos", &tas::tascore::ModelPoint::dos)
      .def_readonly("doe", &tas::tascore::ModelPoint::doe)
      .def_readonly("rate", &tas::tascore::ModelPoint::rate)
      .def_readonly("true_rate", &tas::tascore::ModelPoint::true_rate);

  m.def("model_curves", &tas::tascore::model_curves, py::arg("params"),
        py::arg("h0"), py::arg("levels"),
        "evaluate err=C h^alpha, time=W h^-dim, n=D h^-dim on a halving ladder");
  m.def("doe_slope_prediction", &tas::tascore::doe_slope_prediction,
        py::arg("params"), "slope of model doe against log10(h): dim - alpha");
  m.def("true_static_scaling_point", &tas::tascore::true_static_scaling_point,
        py::arg("params"), py::arg("h"),
        "model true static scaling at mesh size h");

  // ---- record files ------------------------------------------------------------
  py::class_<tas::records::RecordFile>(m, "RecordFile")
      .def(py::init<>())
      .def_readwrite("metadata", &tas::records::RecordFile::metadata)
      .def_readwrite("records", &tas::records::RecordFile::records);

  py::class_<tas::records::Diagnostic>(m, "Diagnostic")
      .def_readonly("row", &tas::records::Diagnostic::row)
      .def_readonly("message", &tas::records::Diagnostic::message);

  py::class_<tas::records::ReadResult>(m, "ReadResult")
      .def_readonly("file", &tas::records::ReadResult::file)
      .def_readonly("diagnostics", &tas::records::ReadResult::diagnostics);

  m.def("write_records",
        py::overload_cast<const std::filesystem::path&,
                          const tas::records::RecordFile&>(
            &tas::records::write_records),
        py::arg("path"), py::arg("file"),
        "write a record file (.jsonl or .csv by extension)");
  m.def("read_records",
        py::overload_cast<const std::filesystem::path&>(
            &tas::records::read_records),
        py::arg("path"), "read a record file (.jsonl or .csv by extension)");
  m.def("validate_record", [](const tas::tascore::BenchmarkRecord& r) {
    return tas::records::validate(r);
  }, py::arg("record"), "return the first field problem, or None");

  // ---- report -------------------------------------------------------------------
  py::enum_<tas::report::DiagramKind>(m, "DiagramKind")
      .value("mesh_convergence", tas::report::DiagramKind::mesh_convergence)
      .value("static_scaling", tas::report::DiagramKind::static_scaling)
      .value("doe", tas::report::DiagramKind::doe)
      .value("true_static_scaling",
             tas::report::DiagramKind::true_static_scaling);

  py::enum_<tas::report::TableStyle>(m, "TableStyle")
      .value("compact", tas::report::TableStyle::compact)
      .value("full", tas::report::TableStyle::full);

  m.def("render_table", &tas::report::render_table, py::arg("series"),
        py::arg("style") = tas::report::TableStyle::compact,
        "plain-text accuracy table, one block per series");
  m.def(
      "render_svg",
      [](const std::vector<tas::tascore::TasSeries>& series,
         tas::report::DiagramKind kind, const std::string& title) {
        return tas::report::render_svg(series, {kind, title});
      },
      py::arg("series"),
      py::arg("kind") = tas::report::DiagramKind::mesh_convergence,
      py::arg("title") = std::string(),
      "deterministic SVG diagram of the series collection");

  // ---- bench ----------------------------------------------------------------------
  py::enum_<tas::femcore::Family>(m, "Family")
      .value("cg", tas::femcore::Family::cg)
      .value("dg", tas::femcore::Family::dg);

  py::enum_<tas::meshgen::CellKind>(m, "CellKind")
      .value("triangle", tas::meshgen::CellKind::triangle)
      .value("quadrilateral", tas::meshgen::CellKind::quadrilateral)
      .value("hexahedron", tas::meshgen::CellKind::hexahedron);

  py::enum_<tas::linsolve::Preconditioner>(m, "Preconditioner")
      .value("none", tas::linsolve::Preconditioner::none)
      .value("jacobi", tas::linsolve::Preconditioner::jacobi)
      .value("ssor", tas::linsolve::Preconditioner::ssor);

  py::enum_<tas::bench::QuadMode>(m, "QuadMode")
      .value("exact", tas::bench::QuadMode::exact)
      .value("fixed3", tas::bench::QuadMode::fixed3);

  py::class_<tas::bench::BenchPlan>(m, "BenchPlan")
      .def(py::init<>())
      .def_readwrite("case_id", &tas::bench::BenchPlan::case_id)
      .def_readwrite("kind", &tas::bench::BenchPlan::kind)
      .def_readwrite("families", &tas::bench::BenchPlan::families)
      .def_readwrite("degrees", &tas::bench::BenchPlan::degrees)
      .def_readwrite("n0", &tas::bench::BenchPlan::n0)
      .def_readwrite("levels", &tas::bench::BenchPlan::levels)
      .def_readwrite("rtol", &tas::bench::BenchPlan::rtol)
      .def_readwrite("max_iter", &tas::bench::BenchPlan::max_iter)
      .def_readwrite("repeats", &tas::bench::BenchPlan::repeats)
      .def_readwrite("quad_mode", &tas::bench::BenchPlan::quad_mode)
      .def_readwrite("precond", &tas::bench::BenchPlan::precond);

  m.def(
      "run_bench",
      [](const tas::bench::BenchPlan& plan) {
        return tas::bench::run_bench(plan, nullptr);
      },
      py::arg("plan"),
      "run the Poisson refinement ladder and return one record per solve");
}
