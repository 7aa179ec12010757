#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tas::tascore {

// One benchmark observation: a labelled solve at one mesh resolution.
// `extra` carries implementation-defined annotations (solver iterations,
// convergence flags, ...) as key -> raw JSON value text; readers and writers
// round-trip it verbatim and the analysis below ignores it.
struct BenchmarkRecord {
  std::string label;
  std::string family;  // "cg", "dg", or a free-form scheme name
  int degree = 1;
  int dim = 2;
  double h = 0.0;
  std::int64_t n_dofs = 0;
  double l2_error = 0.0;
  double time_seconds = 0.0;
  int n_procs = 1;
  std::vector<std::pair<std::string, std::string>> extra;
};

// Digit measures.  Each throws OutOfDomainError outside its domain.
//
//   doa       = -log10(err)            digits of accuracy
//   dos       = log10(n)               digits of size (errnorm::dos mirrors it)
//   doe       = -log10(err * t)        digits of efficacy
//   rate      = n / t                  static scaling (dofs per second)
//   true_rate = (doa/dos) * (n/t)      true static scaling
//
// doe is evaluated as -(log10 err + log10 t), which is the same number but
// immune to overflow of the product.
double doe(double err, double time_seconds);
double rate(std::int64_t n_dofs, double time_seconds);
double true_rate(double err, std::int64_t n_dofs, double time_seconds);

// Records that could not contribute to a series, with the index into the
// input record vector and a human-readable reason.  Also used for partial
// exclusions, where a point stays on the curve but some derived quantity is
// undefined (reported as NaN in the point).
struct ExcludedPoint {
  std::size_t record_index = 0;
  std::string reason;
};

// One record's derived quantities.  Fields whose defining expression leaves
// the domain (for instance doa of a non-positive error) are NaN, and the
// owning series carries a matching ExcludedPoint annotation.
struct SeriesPoint {
  std::size_t record_index = 0;
  double h = 0.0;
  std::int64_t n_dofs = 0;
  double l2_error = 0.0;
  double time_seconds = 0.0;
  double doa = 0.0;
  double dos = 0.0;
  double doe = 0.0;
  double rate = 0.0;
  double true_rate = 0.0;
};

// Grouping key for a refinement series: records agreeing on all five fields
// are levels of the same experiment.
struct SeriesKey {
  std::string label;
  std::string family;
  int degree = 1;
  int dim = 2;
  int n_procs = 1;

  friend bool operator==(const SeriesKey&, const SeriesKey&) = default;
  friend auto operator<=>(const SeriesKey&, const SeriesKey&) = default;
};

// A refinement series with its fitted slopes.
//
//   convergence_slope: least-squares slope of doa against dos
//   doe_slope:         least-squares slope of doe against log10(time)
//
// Fits use every usable point by default; when derive_series is given
// finest_k > 0 they use only the finest k levels (smallest h).  A fit needs
// at least two usable points with distinct abscissae, otherwise the slope is
// nullopt.  fit_points is the number of points that entered the fits.
struct TasSeries {
  SeriesKey key;
  std::vector<SeriesPoint> points;  // sorted coarse to fine (h descending)
  std::vector<ExcludedPoint> excluded;
  std::optional<double> convergence_slope;
  std::optional<double> doe_slope;
  int fit_points = 0;
};

// Window used by convention when a caller opts into finest-k fitting without
// naming k.
inline constexpr int default_finest_k = 3;

// Group records into series, derive per-point digit measures, and fit slopes.
// finest_k = 0 (the default) fits over all usable points; finest_k > 0
// restricts both fits to the finest k levels.  Series are returned sorted by
// key; points within a series are sorted coarse to fine.
std::vector<TasSeries> derive_series(const std::vector<BenchmarkRecord>& records,
                                     int finest_k = 0);

// Closed-form cost model: err = C h^alpha, time = W h^-dim, n = D h^-dim.
struct ModelParams {
  double c = 10.0;
  double w = 0.1;
  double d = 4.0;
  double alpha = 2.0;
  int dim = 2;
};

struct ModelPoint {
  double h = 0.0;
  double err = 0.0;
  double time_seconds = 0.0;
  double n = 0.0;  // model dof count, not rounded
  double doa = 0.0;
  double dos = 0.0;
  double doe = 0.0;
  double rate = 0.0;
  double true_rate = 0.0;
};

// Evaluate the model on the ladder h0, h0/2, ..., h0/2^(levels-1).
// Throws InvalidInputError for non-positive coefficients, h0, or levels.
std::vector<ModelPoint> model_curves(const ModelParams& params, double h0,
                                     int levels);

// Slope of the model's doe against log10(h):
//   doe = (dim - alpha) log10 h - log10(C W)
// so the prediction is dim - alpha.  Positive alpha - dim means efficacy
// grows under refinement.
double doe_slope_prediction(const ModelParams& params);

// The model's true static scaling (doa/dos)*(n/time) at mesh size h.  Its
// h -> 0 limit is (alpha/dim)*(D/W).
double true_static_scaling_point(const ModelParams& params, double h);

}  // namespace tas::tascore
