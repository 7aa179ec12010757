#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tas/tascore.hpp"

namespace tas::report {

// The four standard views of a series collection.  Axis choices:
//
//   mesh_convergence     doa vs dos, both linear
//   static_scaling       dofs/s vs time, both logarithmic
//   doe                  doe (linear) vs time (logarithmic)
//   true_static_scaling  true dofs/s vs time, both logarithmic
enum class DiagramKind {
  mesh_convergence,
  static_scaling,
  doe,
  true_static_scaling,
};

DiagramKind diagram_kind_from_string(std::string_view name);
std::string_view to_string(DiagramKind kind);

enum class TableStyle { compact, full };

struct DiagramSpec {
  DiagramKind kind = DiagramKind::mesh_convergence;
  std::string title;  // empty -> a default per kind
};

// Plain-text accuracy table, one block per series.  The compact style prints
// h, dofs, dos, doa and the doa/dos ratio; the full style adds time, dofs/s,
// doe and the true rate.  Undefined entries print as '-'.  Output is
// deterministic for identical input.
std::string render_table(const std::vector<tascore::TasSeries>& series,
                         TableStyle style = TableStyle::compact);

// Self-contained SVG diagram of the series collection: fixed 720x480 canvas,
// one polyline with circle markers per series, legend sorted by series key,
// 1-2-5 tick ladder on linear axes and decade ticks on logarithmic ones.
// Identical input yields byte-identical output.  Points with undefined
// coordinates are dropped from the curve; if any series carries exclusions a
// footnote with the total count is added.
std::string render_svg(const std::vector<tascore::TasSeries>& series,
                       const DiagramSpec& spec);

}  // namespace tas::report
