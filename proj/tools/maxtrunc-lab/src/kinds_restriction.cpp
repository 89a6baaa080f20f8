#include <algorithm>
#include <cmath>
#include <numbers>

#include "internal.hpp"
#include "maxtrunc/parallel.hpp"
#include "maxtrunc/restriction.hpp"

namespace maxtrunc::lab {

namespace {

using grid::GridSignal;
using grid::GridSpec;

GridSignal gaussian2(const GridSpec& x) {
  std::vector<cdouble> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = x.coordinate(0, x.index(i, 0)), b = x.coordinate(1, x.index(i, 1));
    v[i] = std::exp(-std::numbers::pi * (a * a + b * b));
  }
  return GridSignal(x, std::move(v));
}

std::vector<double> strictly_decreasing(const json& prm, const std::string& name) {
  const auto v = numbers(prm, name, 3);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || (i > 0 && !(v[i] < v[i - 1]))) {
      throw ConfigError("parameter '" + name + "' must be positive and decrease strictly");
    }
  }
  return v;
}

}  // namespace

void run_restriction_max(Context& ctx) {
  const auto& prm = ctx.params;
  const std::size_t n = count(prm, "points", 4, 256);
  const double h = positive(prm, "spacing");
  const std::size_t samples = count(prm, "samples", 2, 100000);
  const long kmin = integer(prm, "dilation_min", -30, 30);
  const long kmax = integer(prm, "dilation_max", -30, 30);
  if (kmax < kmin) throw ConfigError("parameter 'dilation_max' must be at least 'dilation_min'");
  const std::size_t signals = count(prm, "signals", 1, 10000);
  const double p = number(prm, "p", 1.0, 1e6);
  const double q = number(prm, "q", 1.0, 1e6);
  const bool refine = flag(prm, "refine");
  const double band = positive(prm, "band");

  const auto coarse = GridSpec::centered(2, n, h);
  const auto fine = GridSpec::centered(2, 2 * n, h / 2);
  const auto surf = restr::SampledSurface::parabola(samples);
  const auto dg = restr::DilationGrid::dyadic(2, static_cast<int>(kmin), static_cast<int>(kmax));
  const restr::MollifierSpec chi;
  mpz::FieldOptions opts;
  opts.threads = ctx.threads;

  CsvTable table{"restriction_max", {"signal", "p", "q", "grid", "tuples", "ratio", "ratio_fine", "band_factor"}, {}};
  double widest = 1.0;
  for (std::size_t s = 0; s < signals; ++s) {
    const std::uint64_t signal_seed = item_rng(ctx.seed, s)();
    const auto fc = mpz::smooth_random_signal(coarse, signal_seed);
    const auto field = restr::maximal_restriction_field(fc, surf, chi, dg, opts);
    const double a = restr::restriction_ratio(field, surf, fc, p, q);
    std::string fine_cell, factor_cell;
    if (refine) {
      const auto ff = mpz::smooth_random_signal(fine, signal_seed);
      const double b = restr::restriction_ratio(restr::maximal_restriction_field(ff, surf, chi, dg, opts), surf, ff, p, q);
      const double factor = std::max(a, b) / std::min(a, b);
      widest = std::max(widest, factor);
      fine_cell = num(b);
      factor_cell = num(factor);
      ctx.report.check("signal " + std::to_string(s) + ": ratio max / min under refinement < band", factor, "<", band);
    }
    table.add({num(s), num(p), num(q), num(n) + "x" + num(n), num(dg.tuple_count()), num(a), fine_cell, factor_cell});
    if (s == 0) {
      ctx.report.plots.push_back({"restriction_field", line_plot("maximal mollified restriction, signal 0", "u",
                                                                 "field", {{"signal 0", surf.parameters, field}},
                                                                 false, false)});
    }
  }
  ctx.report.results = {{"signals", signals}, {"tuples", dg.tuple_count()}, {"max_band_factor", widest}};
  ctx.report.tables.push_back(std::move(table));
}

void run_lebesgue_profile(Context& ctx) {
  const auto& prm = ctx.params;
  const auto xi = numbers(prm, "point", 2);
  if (xi.size() != 2) throw ConfigError("parameter 'point' needs 2 entries");
  const std::size_t n = count(prm, "points", 4, 1024);
  const double h = positive(prm, "spacing");
  const auto iso = strictly_decreasing(prm, "isotropic_steps");
  const auto aniso = strictly_decreasing(prm, "anisotropic_steps");
  const std::size_t resolution = count(prm, "resolution", 2, 1000);
  const double min_order = number(prm, "min_order", 0.0, 10.0);

  const auto f = gaussian2(GridSpec::centered(2, n, h));
  CsvTable table{"lebesgue_profile", {"path", "step", "r1", "r2", "max_r", "deviation", "local_order"}, {}};
  std::vector<Series> plot;
  json orders = json::object();
  for (const auto& [label, steps] : {std::pair{std::string("isotropic"), iso}, std::pair{std::string("anisotropic"), aniso}}) {
    std::vector<std::vector<double>> path;
    std::vector<double> max_r;
    for (double t : steps) {
      path.push_back({t, label == "isotropic" ? t : t * t});
      max_r.push_back(std::max(path.back()[0], path.back()[1]));
    }
    const auto dev = restr::lebesgue_point_profile(f, xi, path, resolution);
    for (std::size_t i = 0; i < dev.size(); ++i) {
      const std::string local =
          i == 0 ? "" : num(std::log(dev[i - 1] / dev[i]) / std::log(max_r[i - 1] / max_r[i]));
      table.add({label, num(i), num(path[i][0]), num(path[i][1]), num(max_r[i]), num(dev[i]), local});
    }
    const double order = loglog_slope(max_r, dev);
    orders[label] = order;
    ctx.report.check(label + " path: fitted order in max r_j >= min_order", order, ">=", min_order);
    plot.push_back({label, max_r, dev});
  }
  ctx.report.results = {{"fitted_order", orders}};
  ctx.report.plots.push_back({"lebesgue_profile", line_plot("ellipsoid-average deviation", "max r_j", "deviation", plot,
                                                            true, true)});
  ctx.report.tables.push_back(std::move(table));
}

void run_quadrant_identity(Context& ctx) {
  const auto& prm = ctx.params;
  const std::size_t draws = count(prm, "draws", 1, 100000);
  const std::size_t max_d = count(prm, "max_dimension", 1, 3);
  const double rmin = positive(prm, "radius_min");
  const double rmax = positive(prm, "radius_max");
  const double xmax = positive(prm, "coordinate_max");
  const double tol = positive(prm, "tolerance");
  if (rmax < rmin) throw ConfigError("parameter 'radius_max' must be at least 'radius_min'");
  if (xmax < 0.05) throw ConfigError("parameter 'coordinate_max' must be at least 0.05");

  std::vector<std::vector<double>> rs(draws), xs(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    auto rng = item_rng(ctx.seed, i);
    std::uniform_real_distribution<double> lr(std::log(rmin), std::log(rmax));
    std::uniform_real_distribution<double> ax(0.05, xmax);
    std::bernoulli_distribution sign;
    const std::size_t d = 1 + i % max_d;
    for (std::size_t j = 0; j < d; ++j) {
      rs[i].push_back(std::exp(lr(rng)));
      const double v = ax(rng);
      xs[i].push_back(sign(rng) ? v : -v);
    }
  }
  std::vector<double> residual(draws);
  const restr::MollifierSpec chi;
  parallel_for(draws, ctx.threads, [&](std::size_t i) { residual[i] = restr::quadrant_identity_check(chi, rs[i], xs[i]); });

  std::vector<std::string> cols{"draw", "dimension"};
  for (std::size_t j = 0; j < max_d; ++j) cols.push_back("r" + num(j + 1));
  for (std::size_t j = 0; j < max_d; ++j) cols.push_back("x" + num(j + 1));
  cols.push_back("residual");
  CsvTable table{"quadrant_identity", cols, {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    std::vector<std::string> row{num(i), num(rs[i].size())};
    for (std::size_t j = 0; j < max_d; ++j) row.push_back(j < rs[i].size() ? num(rs[i][j]) : "");
    for (std::size_t j = 0; j < max_d; ++j) row.push_back(j < xs[i].size() ? num(xs[i][j]) : "");
    row.push_back(num(residual[i]));
    table.add(std::move(row));
    worst = std::max(worst, residual[i]);
    ctx.report.check("draw " + std::to_string(i) + ": quadrant identity residual < tolerance", residual[i], "<", tol);
  }
  ctx.report.results = {{"draws", draws}, {"max_residual", worst}};
  ctx.report.tables.push_back(std::move(table));
}

}  // namespace maxtrunc::lab
