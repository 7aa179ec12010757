#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tas/error.hpp"
#include "tas/tascore.hpp"

using namespace tas;
using tascore::BenchmarkRecord;

namespace {

BenchmarkRecord rec(std::string label, double h, std::int64_t n, double err,
                    double t, int degree = 1) {
  BenchmarkRecord r;
  r.label = std::move(label);
  r.family = "cg";
  r.degree = degree;
  r.dim = 2;
  r.h = h;
  r.n_dofs = n;
  r.l2_error = err;
  r.time_seconds = t;
  return r;
}

// err = C h^alpha, t = W h^-d, n = D h^-d on h = h0 / 2^level.
std::vector<BenchmarkRecord> model_ladder(double c, double w, double d,
                                          double alpha, int dim, int levels) {
  std::vector<BenchmarkRecord> out;
  for (int level = 0; level < levels; ++level) {
    double h = 0.1 / double(1 << level);
    out.push_back(rec("model", h, std::llround(d * std::pow(h, -dim)),
                      c * std::pow(h, alpha), w * std::pow(h, -dim)));
  }
  return out;
}

}  // namespace

TEST_SUITE("tascore") {

TEST_CASE("digit measures at hand-checkable points") {
  CHECK(tascore::doe(1e-3, 10.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tascore::rate(1000, 2.0) == doctest::Approx(500.0).epsilon(1e-14));
  CHECK(tascore::true_rate(1e-4, 10000, 2.0) ==
        doctest::Approx(5000.0).epsilon(1e-14));

  // the log-sum form survives products that would overflow
  CHECK(tascore::doe(1e200, 1e200) == doctest::Approx(-400.0).epsilon(1e-14));

  // composition identity doe = doa - dos + log10(rate)
  double err = 3.7e-5, t = 0.42;
  std::int64_t n = 9281;
  CHECK(tascore::doe(err, t) ==
        doctest::Approx(-std::log10(err) - std::log10(double(n)) +
                        std::log10(tascore::rate(n, t)))
            .epsilon(1e-13));
}

TEST_CASE("digit measure domains") {
  CHECK_THROWS_AS(tascore::doe(0.0, 1.0), OutOfDomainError);
  CHECK_THROWS_AS(tascore::doe(1e-3, 0.0), OutOfDomainError);
  CHECK_THROWS_AS(tascore::doe(1e-3, -2.0), OutOfDomainError);
  CHECK_THROWS_AS(tascore::rate(0, 1.0), OutOfDomainError);
  CHECK_THROWS_AS(tascore::rate(100, 0.0), OutOfDomainError);
  CHECK_THROWS_AS(tascore::true_rate(1e-3, 1, 1.0), OutOfDomainError);
  CHECK_THROWS_AS(tascore::true_rate(-1e-3, 100, 1.0), OutOfDomainError);
}

TEST_CASE("a published six-level CG1 ladder fits to slope ~1.026") {
  std::vector<std::int64_t> dofs = {121, 441, 1681, 6561, 25921, 103041};
  std::vector<double> doa = {1.71, 2.31, 2.92, 3.52, 4.12, 4.72};
  std::vector<BenchmarkRecord> records;
  for (std::size_t i = 0; i < dofs.size(); ++i)
    records.push_back(rec("cg1", 0.1 / double(1 << i), dofs[i],
                          std::pow(10.0, -doa[i]), 0.1 * double(i + 1)));

  auto series = tascore::derive_series(records);
  REQUIRE(series.size() == 1);
  REQUIRE(series[0].convergence_slope.has_value());
  CHECK(series[0].fit_points == 6);
  CHECK(*series[0].convergence_slope == doctest::Approx(1.0256).epsilon(1e-3));
  CHECK(std::abs(*series[0].convergence_slope - 1.027) <= 0.002);
}

TEST_CASE("grouping and ordering") {
  std::vector<BenchmarkRecord> records;
  records.push_back(rec("b", 0.05, 400, 1e-3, 2.0));
  records.push_back(rec("a", 0.1, 100, 1e-2, 1.0, 2));
  records.push_back(rec("b", 0.1, 100, 4e-3, 0.5));
  records.push_back(rec("a", 0.05, 400, 2.5e-3, 4.0, 2));

  auto series = tascore::derive_series(records);
  REQUIRE(series.size() == 2);
  CHECK(series[0].key.label == "a");
  CHECK(series[0].key.degree == 2);
  CHECK(series[1].key.label == "b");
  for (const auto& s : series) {
    REQUIRE(s.points.size() == 2);
    CHECK(s.points[0].h > s.points[1].h);  // coarse first
    CHECK(s.points[0].record_index < records.size());
  }
  // degree differences split series even under one label
  records[2].degree = 3;
  CHECK(tascore::derive_series(records).size() == 3);
}

TEST_CASE("unusable records are skipped or partially excluded") {
  std::vector<BenchmarkRecord> records;
  records.push_back(rec("s", 0.1, 100, 1e-2, 1.0));
  records.push_back(rec("s", 0.05, 400, 2.5e-3, 0.0));   // t = 0: whole record
  records.push_back(rec("s", 0.025, 1600, -1.0, 16.0));  // err < 0: partial
  records.push_back(rec("s", 0.0125, 1, 1.5e-4, 64.0));  // n = 1: partial

  auto series = tascore::derive_series(records);
  REQUIRE(series.size() == 1);
  const auto& s = series[0];
  CHECK(s.points.size() == 3);
  REQUIRE(s.excluded.size() == 3);

  CHECK(s.excluded[0].record_index == 1);
  CHECK(s.excluded[0].reason.find("time_seconds") != std::string::npos);
  CHECK(s.excluded[0].reason.find("record skipped") != std::string::npos);

  const auto& bad_err = s.points[1];
  CHECK(bad_err.record_index == 2);
  CHECK(std::isnan(bad_err.doa));
  CHECK(std::isnan(bad_err.doe));
  CHECK(std::isnan(bad_err.true_rate));
  CHECK(bad_err.dos == doctest::Approx(std::log10(1600.0)));
  CHECK(bad_err.rate == doctest::Approx(100.0));

  const auto& unit_n = s.points[2];
  CHECK(unit_n.record_index == 3);
  CHECK(std::isnan(unit_n.true_rate));
  CHECK_FALSE(std::isnan(unit_n.doa));
  CHECK(unit_n.dos == doctest::Approx(0.0));

  // only the two fully-derived points can enter the fit
  CHECK(s.fit_points == 2);
}

TEST_CASE("finest-k windows ignore corrupt coarse levels") {
  std::vector<BenchmarkRecord> records;
  // exact slope-one ladder on the three finest levels; coarsest point is junk
  records.push_back(rec("w", 0.2, 25, 1e-9, 0.1));
  records.push_back(rec("w", 0.1, 100, 1e-2, 1.0));
  records.push_back(rec("w", 0.05, 400, 2.5e-3, 4.0));
  records.push_back(rec("w", 0.025, 1600, 6.25e-4, 16.0));

  auto all = tascore::derive_series(records);
  auto windowed = tascore::derive_series(records, tascore::default_finest_k);
  REQUIRE(all[0].convergence_slope.has_value());
  REQUIRE(windowed[0].convergence_slope.has_value());
  CHECK(windowed[0].fit_points == 3);
  CHECK(*windowed[0].convergence_slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(*all[0].convergence_slope - 1.0) > 0.5);
}

TEST_CASE("slopes cannot be fit from degenerate data") {
  std::vector<BenchmarkRecord> one = {rec("x", 0.1, 100, 1e-2, 1.0)};
  auto series = tascore::derive_series(one);
  CHECK_FALSE(series[0].convergence_slope.has_value());
  CHECK_FALSE(series[0].doe_slope.has_value());

  // two points with identical dofs: zero abscissa variance
  std::vector<BenchmarkRecord> flat = {rec("x", 0.1, 100, 1e-2, 1.0),
                                       rec("x", 0.05, 100, 5e-3, 2.0)};
  CHECK_FALSE(tascore::derive_series(flat)[0].convergence_slope.has_value());
}

TEST_CASE("synthetic cost-model records reproduce the analytic slopes") {
  auto records = model_ladder(1.0, 0.1, 4.0, 3.0, 2, 6);
  auto series = tascore::derive_series(records);
  REQUIRE(series.size() == 1);
  REQUIRE(series[0].convergence_slope.has_value());
  REQUIRE(series[0].doe_slope.has_value());
  // doa against dos goes as alpha/dim, doe against log10(t) as (alpha-dim)/dim
  CHECK(*series[0].convergence_slope == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(*series[0].doe_slope == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("uniform time rescaling shifts doe and nothing else") {
  auto records = model_ladder(1.0, 0.1, 4.0, 3.0, 2, 5);
  auto scaled = records;
  for (auto& r : scaled) r.time_seconds *= 1000.0;

  auto base = tascore::derive_series(records);
  auto moved = tascore::derive_series(scaled);
  REQUIRE(base[0].points.size() == moved[0].points.size());
  for (std::size_t i = 0; i < base[0].points.size(); ++i) {
    CHECK(moved[0].points[i].doe ==
          doctest::Approx(base[0].points[i].doe - 3.0).epsilon(1e-12));
    CHECK(moved[0].points[i].doa == base[0].points[i].doa);
    CHECK(moved[0].points[i].dos == base[0].points[i].dos);
  }
  CHECK(*moved[0].convergence_slope ==
        doctest::Approx(*base[0].convergence_slope).epsilon(1e-12));
  CHECK(*moved[0].doe_slope ==
        doctest::Approx(*base[0].doe_slope).epsilon(1e-12));
}

TEST_CASE("cost model: balanced exponents give constant efficacy") {
  tascore::ModelParams p;  // C=10, W=0.1, alpha=2, dim=2: C*W = 1
  auto curve = tascore::model_curves(p, 0.1, 10);
  REQUIRE(curve.size() == 10);
  CHECK(curve[0].h == doctest::Approx(0.1));
  CHECK(curve[0].n == doctest::Approx(400.0));
  CHECK(curve[0].time_seconds == doctest::Approx(10.0));
  CHECK(curve[0].rate == doctest::Approx(40.0).epsilon(1e-14));
  CHECK(curve[0].doa == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& pt : curve) CHECK(std::abs(pt.doe) <= 1e-12);
  CHECK(tascore::doe_slope_prediction(p) == doctest::Approx(0.0));
}

TEST_CASE("cost model: unbalanced exponents give the predicted doe slope") {
  tascore::ModelParams p;
  p.alpha = 3.0;
  auto curve = tascore::model_curves(p, 0.1, 8);
  CHECK(tascore::doe_slope_prediction(p) == doctest::Approx(-1.0));
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    double dh = std::log10(curve[i + 1].h) - std::log10(curve[i].h);
    double dd = curve[i + 1].doe - curve[i].doe;
    CHECK(dd / dh == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("cost model: true static scaling approaches (alpha/dim) D/W") {
  tascore::ModelParams p;
  p.c = 1.0;
  p.d = 1.0;
  p.w = 2.5e-6;
  // alpha = dim makes doa/dos -> 1 exactly when C = D = 1
  double v = tascore::true_static_scaling_point(p, 1e-12);
  CHECK(std::abs(v - 4e5) / 4e5 < 0.005);
  CHECK(v == doctest::Approx(4e5).epsilon(1e-12));

  // at h = 1 the model has n = 1, so the ratio doa/dos is undefined
  CHECK_THROWS_AS(tascore::true_static_scaling_point(p, 1.0), OutOfDomainError);
}

TEST_CASE("cost model input validation") {
  tascore::ModelParams p;
  CHECK_THROWS_AS(tascore::model_curves(p, 0.1, 0), InvalidInputError);
  CHECK_THROWS_AS(tascore::model_curves(p, 0.0, 5), InvalidInputError);
  p.c = -1.0;
  CHECK_THROWS_AS(tascore::model_curves(p, 0.1, 5), InvalidInputError);
}

}  // TEST_SUITE
