#include "tas/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <iterator>
#include <limits>
#include <numeric>
#include <sstream>

#include "tas/error.hpp"

namespace tas::report {

using tascore::SeriesPoint;
using tascore::TasSeries;

namespace {

std::string fmt(const char* format, ...) {
  char buf[128];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// Fixed-width cell; non-finite values render as a dash.
std::string cell(double v, int width, const char* format) {
  if (!std::isfinite(v)) {
    std::string s(std::size_t(width), ' ');
    s.back() = '-';
    return s;
  }
  char spec[16];
  std::snprintf(spec, sizeof spec, "%%%d%s", width, format);
  return fmt(spec, v);
}

}  // namespace

DiagramKind diagram_kind_from_string(std::string_view name) {
  if (name == "mesh_convergence") return DiagramKind::mesh_convergence;
  if (name == "static_scaling") return DiagramKind::static_scaling;
  if (name == "doe") return DiagramKind::doe;
  if (name == "true_static_scaling") return DiagramKind::true_static_scaling;
  throw InvalidInputError("unknown diagram kind '" + std::string(name) +
                          "' (expected mesh_convergence, static_scaling, doe, "
                          "or true_static_scaling)");
}

std::string_view to_string(DiagramKind kind) {
  switch (kind) {
    case DiagramKind::mesh_convergence: return "mesh_convergence";
    case DiagramKind::static_scaling: return "static_scaling";
    case DiagramKind::doe: return "doe";
    case DiagramKind::true_static_scaling: return "true_static_scaling";
  }
  return "?";
}

std::string render_table(const std::vector<TasSeries>& series,
                         TableStyle style) {
  std::ostringstream out;
  bool full = style == TableStyle::full;
  for (const TasSeries& s : series) {
    out << "# " << s.key.label << "  [" << s.key.family << " p" << s.key.degree
        << " " << s.key.dim << "D procs=" << s.key.n_procs << "]\n";
    out << "          h       dofs     DoS     DoA  DoA/DoS";
    if (full) out << "     time[s]      dofs/s      DoE  true dofs/s";
    out << '\n';
    for (const SeriesPoint& p : s.points) {
      out << fmt("%11.3e", p.h) << fmt("%11lld", (long long)p.n_dofs)
          << cell(p.dos, 8, ".2f") << cell(p.doa, 8, ".2f")
          << cell(p.dos != 0.0 ? p.doa / p.dos
                               : std::numeric_limits<double>::quiet_NaN(),
                  9, ".2f");
      if (full)
        out << cell(p.time_seconds, 12, ".3e") << cell(p.rate, 12, ".3e")
            << cell(p.doe, 9, ".2f") << cell(p.true_rate, 13, ".3e");
      out << '\n';
    }
    out << "  fit over " << s.fit_points << " point(s): convergence slope ";
    if (s.convergence_slope)
      out << fmt("%.4f", *s.convergence_slope);
    else
      out << "n/a";
    out << ", doe slope ";
    if (s.doe_slope)
      out << fmt("%.4f", *s.doe_slope);
    else
      out << "n/a";
    out << '\n';
    for (const tascore::ExcludedPoint& e : s.excluded)
      out << "  ! record " << e.record_index << ": " << e.reason << '\n';
    out << '\n';
  }
  return out.str();
}

// ---- SVG --------------------------------------------------------------------

namespace {

constexpr double canvas_w = 720.0, canvas_h = 480.0;
constexpr double plot_l = 72.0, plot_r = 704.0, plot_t = 44.0, plot_b = 424.0;

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int palette_size = int(std::size(palette));

struct AxisChoice {
  bool x_log = false, y_log = false;
  const char* x_label = "";
  const char* y_label = "";
  const char* default_title = "";
};

AxisChoice axis_choice(DiagramKind kind) {
  switch (kind) {
    case DiagramKind::mesh_convergence:
      return {false, false, "digits of size", "digits of accuracy",
              "Accuracy vs size"};
    case DiagramKind::static_scaling:
      return {true, true, "time [s]", "dofs per second", "Static scaling"};
    case DiagramKind::doe:
      return {true, false, "time [s]", "digits of efficacy",
              "Efficacy vs time"};
    case DiagramKind::true_static_scaling:
      return {true, true, "time [s]", "true dofs per second",
              "True static scaling"};
  }
  return {};
}

// Coordinates of one series after axis transforms; only finite points kept.
struct Curve {
  std::string label;
  std::vector<std::pair<double, double>> pts;
};

double transform(double v, bool log_axis) {
  if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
  if (!log_axis) return v;
  if (v <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::log10(v);
}

std::pair<double, double> point_of(const SeriesPoint& p, DiagramKind kind) {
  switch (kind) {
    case DiagramKind::mesh_convergence: return {p.dos, p.doa};
    case DiagramKind::static_scaling: return {p.time_seconds, p.rate};
    case DiagramKind::doe: return {p.time_seconds, p.doe};
    case DiagramKind::true_static_scaling: return {p.time_seconds, p.true_rate};
  }
  return {0.0, 0.0};
}

double nice_step(double target) {
  if (target <= 0.0) return 1.0;
  double k = std::floor(std::log10(target));
  double base = target / std::pow(10.0, k);
  double nice = base < 1.5 ? 1.0 : base < 3.5 ? 2.0 : base < 7.5 ? 5.0 : 10.0;
  return nice * std::pow(10.0, k);
}

std::vector<double> build_ticks(double lo, double hi, bool log_axis) {
  std::vector<double> ticks;
  if (log_axis) {
    // one tick per decade, thinned when the span is wide
    int first = int(std::ceil(lo - 1e-9));
    int last = int(std::floor(hi + 1e-9));
    if (last - first >= 1) {
      int step = 1 + (last - first) / 7;
      for (int t = first; t <= last; t += step) ticks.push_back(double(t));
      return ticks;
    }
    // the span is inside one decade: fall back to the linear ladder below
  }
  double step = nice_step((hi - lo) / 5.0);
  double start = std::ceil(lo / step - 1e-9) * step;
  for (double t = start; t <= hi + step * 1e-9; t += step)
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return ticks;
}

std::string tick_label(double t, bool log_axis) {
  if (log_axis) return fmt("%g", std::pow(10.0, t));
  return fmt("%g", t);
}

std::string escape_xml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<TasSeries>& series,
                       const DiagramSpec& spec) {
  AxisChoice ax = axis_choice(spec.kind);

  // Deterministic series order: sort indices by key.
  std::vector<std::size_t> order(series.size());
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return series[a].key < series[b].key;
  });

  std::vector<Curve> curves;
  std::size_t excluded_total = 0;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool any = false;
  for (std::size_t idx : order) {
    const TasSeries& s = series[idx];
    excluded_total += s.excluded.size();
    Curve c;
    c.label = s.key.label;
    for (const SeriesPoint& p : s.points) {
      auto [rx, ry] = point_of(p, spec.kind);
      double x = transform(rx, ax.x_log);
      double y = transform(ry, ax.y_log);
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!any) {
        xmin = xmax = x;
        ymin = ymax = y;
        any = true;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
      c.pts.emplace_back(x, y);
    }
    curves.push_back(std::move(c));
  }
  if (!any) {
    xmin = ymin = 0.0;
    xmax = ymax = 1.0;
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  auto sx = [&](double x) {
    return plot_l + (x - xmin) / (xmax - xmin) * (plot_r - plot_l);
  };
  auto sy = [&](double y) {
    return plot_b - (y - ymin) / (ymax - ymin) * (plot_b - plot_t);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
         "height=\"480\" viewBox=\"0 0 720 480\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"720\" height=\"480\" fill=\"#ffffff\"/>\n";

  std::string title =
      spec.title.empty() ? std::string(ax.default_title) : spec.title;
  svg << "<text x=\"360\" y=\"26\" text-anchor=\"middle\" font-family=\"DejaVu "
         "Sans, Helvetica, sans-serif\" font-size=\"16\" fill=\"#000000\">"
      << escape_xml(title) << "</text>\n";

  // grid and ticks
  for (double t : build_ticks(xmin, xmax, ax.x_log)) {
    double x = sx(t);
    svg << fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
               "stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n",
               x, plot_t, x, plot_b);
    svg << fmt("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
               "font-family=\"DejaVu Sans, Helvetica, sans-serif\" "
               "font-size=\"11\" fill=\"#000000\">",
               x, plot_b + 16.0)
        << escape_xml(tick_label(t, ax.x_log)) << "</text>\n";
  }
  for (double t : build_ticks(ymin, ymax, ax.y_log)) {
    double y = sy(t);
    svg << fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
               "stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n",
               plot_l, y, plot_r, y);
    svg << fmt("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\" "
               "font-family=\"DejaVu Sans, Helvetica, sans-serif\" "
               "font-size=\"11\" fill=\"#000000\">",
               plot_l - 6.0, y + 4.0)
        << escape_xml(tick_label(t, ax.y_log)) << "</text>\n";
  }
  svg << fmt("<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
             "fill=\"none\" stroke=\"#808080\" stroke-width=\"1\"/>\n",
             plot_l, plot_t, plot_r - plot_l, plot_b - plot_t);

  // axis labels
  svg << fmt("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
             "font-family=\"DejaVu Sans, Helvetica, sans-serif\" "
             "font-size=\"12\" fill=\"#000000\">",
             (plot_l + plot_r) / 2.0, 462.0)
      << escape_xml(ax.x_label) << "</text>\n";
  svg << fmt("<text x=\"18\" y=\"%.2f\" text-anchor=\"middle\" "
             "font-family=\"DejaVu Sans, Helvetica, sans-serif\" "
             "font-size=\"12\" fill=\"#000000\" transform=\"rotate(-90 18 "
             "%.2f)\">",
             (plot_t + plot_b) / 2.0, (plot_t + plot_b) / 2.0)
      << escape_xml(ax.y_label) << "</text>\n";

  // curves
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const Curve& c = curves[i];
    const char* color = palette[i % palette_size];
    if (c.pts.size() >= 2) {
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < c.pts.size(); ++k) {
        if (k) svg << ' ';
        svg << fmt("%.2f,%.2f", sx(c.pts[k].first), sy(c.pts[k].second));
      }
      svg << "\"/>\n";
    }
    for (const auto& [x, y] : c.pts)
      svg << fmt("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n",
                 sx(x), sy(y), color);
  }

  // legend
  for (std::size_t i = 0; i < curves.size(); ++i) {
    double y = plot_t + 14.0 + double(i) * 16.0;
    const char* color = palette[i % palette_size];
    svg << fmt("<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
               "stroke=\"%s\" stroke-width=\"2\"/>\n",
               plot_l + 10.0, y - 4.0, plot_l + 28.0, y - 4.0, color);
    svg << fmt("<text x=\"%.2f\" y=\"%.2f\" font-family=\"DejaVu Sans, "
               "Helvetica, sans-serif\" font-size=\"11\" fill=\"#000000\">",
               plot_l + 34.0, y)
        << escape_xml(curves[i].label) << "</text>\n";
  }

  if (excluded_total > 0) {
    svg << "<text x=\"8\" y=\"476\" font-family=\"DejaVu Sans, Helvetica, "
           "sans-serif\" font-size=\"10\" fill=\"#666666\">"
        << excluded_total
        << " record(s) excluded from fits; see the table diagnostics"
        << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tas::report
