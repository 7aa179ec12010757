#include "tas/tascore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "tas/error.hpp"

namespace tas::tascore {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// Least-squares slope of y against x over points where both are finite.
// Returns nullopt with fewer than two usable points or a degenerate abscissa.
std::optional<double> fit_slope(const std::vector<double>& x,
                                const std::vector<double>& y, int* used) {
  double sx = 0.0, sy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    sx += x[i];
    sy += y[i];
    ++n;
  }
  if (used) *used = n;
  if (n < 2) return std::nullopt;
  double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace

double doe(double err, double time_seconds) {
  if (!positive_finite(err))
    throw OutOfDomainError("doe: error must be finite and positive, got " +
                           std::to_string(err));
  if (!positive_finite(time_seconds))
    throw OutOfDomainError("doe: time must be finite and positive, got " +
                           std::to_string(time_seconds));
  return -(std::log10(err) + std::log10(time_seconds));
}

double rate(std::int64_t n_dofs, double time_seconds) {
  if (n_dofs < 1)
    throw OutOfDomainError("rate: dof count must be >= 1, got " +
                           std::to_string(n_dofs));
  if (!positive_finite(time_seconds))
    throw OutOfDomainError("rate: time must be finite and positive, got " +
                           std::to_string(time_seconds));
  return double(n_dofs) / time_seconds;
}

double true_rate(double err, std::int64_t n_dofs, double time_seconds) {
  double r = rate(n_dofs, time_seconds);
  if (!positive_finite(err))
    throw OutOfDomainError("true_rate: error must be finite and positive, got " +
                           std::to_string(err));
  if (n_dofs == 1)
    throw OutOfDomainError("true_rate: undefined at n_dofs == 1 (dos is zero)");
  return (-std::log10(err) / std::log10(double(n_dofs))) * r;
}

std::vector<TasSeries> derive_series(const std::vector<BenchmarkRecord>& records,
                                     int finest_k) {
  if (finest_k < 0)
    throw InvalidInputError("derive_series: finest_k must be >= 0, got " +
                            std::to_string(finest_k));

  std::map<SeriesKey, TasSeries> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const BenchmarkRecord& r = records[i];
    SeriesKey key{r.label, r.family, r.degree, r.dim, r.n_procs};
    TasSeries& series = groups.try_emplace(key, TasSeries{}).first->second;
    series.key = key;

    // A point needs a resolvable position on the size/time axes; anything
    // else cannot be placed on a curve at all.
    std::string reason;
    if (!positive_finite(r.h))
      reason = "h not in (0, inf)";
    else if (r.n_dofs < 1)
      reason = "n_dofs < 1";
    else if (!positive_finite(r.time_seconds))
      reason = "time_seconds not in (0, inf)";
    if (!reason.empty()) {
      series.excluded.push_back({i, reason + "; record skipped"});
      continue;
    }

    SeriesPoint pt;
    pt.record_index = i;
    pt.h = r.h;
    pt.n_dofs = r.n_dofs;
    pt.l2_error = r.l2_error;
    pt.time_seconds = r.time_seconds;
    pt.dos = std::log10(double(r.n_dofs));
    pt.rate = double(r.n_dofs) / r.time_seconds;
    if (positive_finite(r.l2_error)) {
      pt.doa = -std::log10(r.l2_error);
      pt.doe = pt.doa - std::log10(r.time_seconds);
      if (r.n_dofs > 1) {
        pt.true_rate = (pt.doa / pt.dos) * pt.rate;
      } else {
        pt.true_rate = nan_value;
        series.excluded.push_back({i, "n_dofs == 1; true_rate undefined"});
      }
    } else {
      pt.doa = pt.doe = pt.true_rate = nan_value;
      series.excluded.push_back(
          {i, "l2_error not in (0, inf); doa, doe, true_rate undefined"});
    }
    series.points.push_back(pt);
  }

  std::vector<TasSeries> out;
  out.reserve(groups.size());
  for (auto& [key, series] : groups) {
    std::stable_sort(series.points.begin(), series.points.end(),
                     [](const SeriesPoint& a, const SeriesPoint& b) {
                       return a.h > b.h;
                     });

    // Fit window: all points, or the finest k levels.
    std::size_t first = 0;
    if (finest_k > 0 && series.points.size() > std::size_t(finest_k))
      first = series.points.size() - std::size_t(finest_k);
    std::vector<double> xs, ys, xt, yt;
    for (std::size_t j = first; j < series.points.size(); ++j) {
      const SeriesPoint& pt = series.points[j];
      xs.push_back(pt.dos);
      ys.push_back(pt.doa);
      xt.push_back(std::log10(pt.time_seconds));
      yt.push_back(pt.doe);
    }
    series.convergence_slope = fit_slope(xs, ys, &series.fit_points);
    series.doe_slope = fit_slope(xt, yt, nullptr);
    out.push_back(std::move(series));
  }
  return out;
}

namespace {

void check_model(const ModelParams& p) {
  if (!positive_finite(p.c) || !positive_finite(p.w) || !positive_finite(p.d))
    throw InvalidInputError("model: C, W, D must be finite and positive");
  if (!std::isfinite(p.alpha))
    throw InvalidInputError("model: alpha must be finite");
  if (p.dim < 1)
    throw InvalidInputError("model: dim must be >= 1, got " +
                            std::to_string(p.dim));
}

}  // namespace

std::vector<ModelPoint> model_curves(const ModelParams& params, double h0,
                                     int levels) {
  check_model(params);
  if (!positive_finite(h0))
    throw InvalidInputError("model: h0 must be finite and positive");
  if (levels < 1)
    throw InvalidInputError("model: levels must be >= 1, got " +
                            std::to_string(levels));

  std::vector<ModelPoint> out;
  out.reserve(std::size_t(levels));
  double lc = std::log10(params.c), lw = std::log10(params.w),
         ld = std::log10(params.d);
  for (int l = 0; l < levels; ++l) {
    double h = h0 / std::pow(2.0, l);
    double lh = std::log10(h);
    ModelPoint pt;
    pt.h = h;
    pt.err = params.c * std::pow(h, params.alpha);
    pt.time_seconds = params.w * std::pow(h, -double(params.dim));
    pt.n = params.d * std::pow(h, -double(params.dim));
    // Evaluate the digit measures in log form so extreme ladders stay finite.
    pt.doa = -(lc + params.alpha * lh);
    pt.dos = ld - params.dim * lh;
    pt.doe = (params.dim - params.alpha) * lh - (lc + lw);
    pt.rate = params.d / params.w;
    pt.true_rate = pt.dos == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                 : (pt.doa / pt.dos) * pt.rate;
    out.push_back(pt);
  }
  return out;
}

double doe_slope_prediction(const ModelParams& params) {
  check_model(params);
  return double(params.dim) - params.alpha;
}

double true_static_scaling_point(const ModelParams& params, double h) {
  check_model(params);
  if (!positive_finite(h))
    throw InvalidInputError("model: h must be finite and positive");
  double lh = std::log10(h);
  double doa = -(std::log10(params.c) + params.alpha * lh);
  double dos = std::log10(params.d) - params.dim * lh;
  if (dos == 0.0)
    throw OutOfDomainError("true_static_scaling_point: dos is zero at h = " +
                           std::to_string(h));
  return (doa / dos) * (params.d / params.w);
}

}  // namespace tas::tascore
