#include <algorithm>
#include <cmath>
#include <numbers>

#include "internal.hpp"
#include "maxtrunc/mpz_max.hpp"

namespace maxtrunc::lab {

namespace {

using grid::GridSignal;
using grid::GridSpec;

GridSignal gaussian(const GridSpec& x) {
  std::vector<cdouble> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r2 = 0.0;
    for (std::size_t j = 0; j < x.dimension(); ++j) {
      const double c = x.coordinate(j, x.index(i, j));
      r2 += c * c;
    }
    v[i] = std::exp(-std::numbers::pi * r2);
  }
  return GridSignal(x, std::move(v));
}

// Max over tuples of |sum_{x in box} f(x) e^{-2 pi i x.xi} h1 h2|, summed term by term.
std::vector<double> brute_force_field(const GridSignal& f, const mpz::RGrid& rg, const GridSpec& xi) {
  const auto& x = f.spec;
  const double cell = x.cell_volume();
  std::vector<double> best(xi.size(), 0.0);
  for (std::size_t t = 0; t < rg.tuple_count(); ++t) {
    const auto r = rg.tuple(t);
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < x.size(); ++i) {
      bool in = true;
      for (std::size_t j = 0; j < 2; ++j) {
        in = in && std::abs(x.coordinate(j, x.index(i, j))) <= r[j] + 1e-12 * std::max(1.0, r[j]);
      }
      if (in) inside.push_back(i);
    }
    for (std::size_t k = 0; k < xi.size(); ++k) {
      const double e1 = xi.coordinate(0, xi.index(k, 0));
      const double e2 = xi.coordinate(1, xi.index(k, 1));
      cdouble s = 0.0;
      for (std::size_t i : inside) {
        const double phase = -2.0 * std::numbers::pi *
                             (x.coordinate(0, x.index(i, 0)) * e1 + x.coordinate(1, x.index(i, 1)) * e2);
        s += f.values[i] * cdouble(std::cos(phase), std::sin(phase));
      }
      best[k] = std::max(best[k], std::abs(s * cell));
    }
  }
  return best;
}

}  // namespace

void run_mpz_max(Context& ctx) {
  const auto& prm = ctx.params;
  const std::size_t n = count(prm, "points", 4, 256);
  const double h = positive(prm, "spacing");
  const std::size_t radii = count(prm, "radii_per_axis", 1, 32);
  const std::size_t signals = count(prm, "signals", 1, 10000);
  const double p = number(prm, "p", 1.0, 2.0);
  if (p >= 2.0) throw ConfigError("parameter 'p' must be below 2");
  const bool brute = flag(prm, "brute_force");
  const bool refine = flag(prm, "refine");
  const double refine_tol = positive(prm, "refine_tolerance");
  const bool draw = flag(prm, "heatmap");

  const auto x = GridSpec::centered(2, n, h);
  const auto x_fine = GridSpec::centered(2, 2 * n, h / 2);
  const auto xi = GridSpec::centered(2, n, 1.0 / (static_cast<double>(n) * h));
  const auto rg = mpz::RGrid::dyadic(x, radii);
  const auto rg_fine = mpz::RGrid::dyadic(x_fine, radii);
  mpz::FieldOptions opts;
  opts.threads = ctx.threads;

  CsvTable table{"mpz_max",
                 {"signal", "p", "grid", "tuples", "ratio", "ratio_fine", "relative_change", "brute_force_max_diff"},
                 {}};
  const std::string grid_label = num(n) + "x" + num(n);
  double worst_change = 0.0, worst_diff = 0.0;
  for (std::size_t s = 0; s < signals; ++s) {
    const std::uint64_t signal_seed = item_rng(ctx.seed, s)();
    const auto f = mpz::smooth_random_signal(x, signal_seed);
    const auto field = mpz::mpz_maximal_field(f, rg, xi, opts);
    const double fp = grid::grid_lp_norm(f.values, x, p);
    const double ratio = grid::grid_lp_norm(field.values, xi, p / (p - 1.0)) / fp;
    const std::string tag = "signal " + std::to_string(s);

    std::string fine_cell = "", change_cell = "", diff_cell = "";
    if (refine) {
      const auto ff = mpz::smooth_random_signal(x_fine, signal_seed);
      const double fine = mpz::mpz_ratio(ff, Exponent(p), rg_fine, xi, opts);
      const double change = std::abs(fine - ratio) / ratio;
      worst_change = std::max(worst_change, change);
      fine_cell = num(fine);
      change_cell = num(change);
      ctx.report.check(tag + ": relative ratio change under refinement < tolerance", change, "<", refine_tol);
    }
    if (brute) {
      const auto oracle = brute_force_field(f, rg, xi);
      double diff = 0.0, scale = 0.0;
      for (std::size_t k = 0; k < oracle.size(); ++k) {
        diff = std::max(diff, std::abs(oracle[k] - field.values[k]));
        scale = std::max(scale, oracle[k]);
      }
      worst_diff = std::max(worst_diff, diff);
      diff_cell = num(diff);
      ctx.report.check(tag + ": |field - direct sums| <= 1e-10 max(1, max field)", diff, "<=",
                       1e-10 * std::max(1.0, scale));
    }
    table.add({num(s), num(p), grid_label, num(rg.tuple_count()), num(ratio), fine_cell, change_cell, diff_cell});

    if (draw && s == 0) {
      ctx.report.plots.push_back({"mpz_field", heatmap("maximal partial transform, signal 0", n, n, field.values,
                                                       xi.coordinate(0, 0), xi.coordinate(0, n - 1),
                                                       xi.coordinate(1, 0), xi.coordinate(1, n - 1))});
    }
  }
  ctx.report.results = {{"signals", signals},
                        {"tuples", rg.tuple_count()},
                        {"max_relative_change", refine ? json(worst_change) : json(nullptr)},
                        {"max_brute_force_diff", brute ? json(worst_diff) : json(nullptr)}};
  ctx.report.tables.push_back(std::move(table));
}

void run_mpz_converge(Context& ctx) {
  const auto& prm = ctx.params;
  const std::size_t n = count(prm, "points", 4, 1024);
  const double h = positive(prm, "spacing");
  const auto freq = numbers(prm, "frequency", 2);
  if (freq.size() != 2) throw ConfigError("parameter 'frequency' needs 2 entries");
  const auto kind = choice(prm, "signal", {"gaussian", "random"});
  const auto shape = choice(prm, "path", {"anisotropic", "isotropic"});
  const auto steps = numbers(prm, "steps", 1);
  const double tol = positive(prm, "tolerance");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0) || (i > 0 && steps[i] < steps[i - 1])) {
      throw ConfigError("parameter 'steps' must be positive and non-decreasing");
    }
  }

  const auto x = GridSpec::centered(2, n, h);
  const auto f = kind == "gaussian" ? gaussian(x) : mpz::smooth_random_signal(x, item_rng(ctx.seed, 0)());
  std::vector<std::vector<double>> path;
  for (double t : steps) path.push_back({t, shape == "anisotropic" ? t * t : t});
  const auto err = mpz::convergence_profile(f, freq, path);

  CsvTable table{"mpz_converge", {"step", "t", "r1", "r2", "error"}, {}};
  for (std::size_t i = 0; i < err.size(); ++i) {
    table.add({num(i), num(steps[i]), num(path[i][0]), num(path[i][1]), num(err[i])});
  }
  ctx.report.check("final pointwise error < tolerance", err.back(), "<", tol);
  ctx.report.results = {{"final_error", err.back()}, {"initial_error", err.front()}};
  ctx.report.plots.push_back({"mpz_converge", line_plot("partial transform error along the path", "t", "error",
                                                        {{shape, steps, err}}, false, true)});
  ctx.report.tables.push_back(std::move(table));
}

}  // namespace maxtrunc::lab
