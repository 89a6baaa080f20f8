#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "internal.hpp"
#include "maxtrunc/oscillatory.hpp"
#include "maxtrunc/parallel.hpp"

namespace maxtrunc::lab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

cdouble product_phase_brute_force(double lambda, double c1, double c2) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const std::size_t panels = static_cast<std::size_t>(std::ceil(40.0 * std::max(1.0, lambda / 3.0)));
  std::vector<double> t, w;
  for (std::size_t k = 0; k < panels; ++k) {
    const double a = static_cast<double>(k) / static_cast<double>(panels);
    const double half = 0.5 / static_cast<double>(panels);
    for (std::size_t i = 0; i < rule::abscissa().size(); ++i) {
      for (double s : {-1.0, 1.0}) {
        t.push_back(a + half + s * half * rule::abscissa()[i]);
        w.push_back(half * rule::weights()[i]);
      }
    }
  }
  // Sum over the four sign patterns of the odd-odd integrand.
  const double theta = kTwoPi * lambda, alpha = kTwoPi * lambda * c1, beta = kTwoPi * lambda * c2;
  cdouble total = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    cdouble row = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double x = t[i], y = t[j];
      const cdouble plus = std::polar(2.0, theta * x * y) * std::cos(alpha * x + beta * y);
      const cdouble minus = std::polar(2.0, -theta * x * y) * std::cos(alpha * x - beta * y);
      row += (plus - minus) / (x * y) * w[j];
    }
    total += row * w[i];
  }
  return total;
}

void run_oscint(Context& ctx) {
  const auto& prm = ctx.params;
  const auto lambdas = numbers(prm, "lambdas", 3);
  const double slope_tol = positive(prm, "slope_tolerance");
  const double brute_lambda = number(prm, "brute_lambda", 1e-3, 50.0);
  const auto shifts = pairs(prm, "brute_shifts", 0);
  const double brute_tol = positive(prm, "brute_tolerance");
  const std::size_t draws = count(prm, "draws", 0, 100000);
  const auto draw_lambdas = numbers(prm, "draw_lambdas", 3);
  const double min_shift = positive(prm, "min_shift");
  const double max_shift = positive(prm, "max_shift");
  const double fraction = positive(prm, "bounded_fraction");
  if (max_shift < min_shift) throw ConfigError("parameter 'max_shift' must be at least 'min_shift'");
  for (const auto* list : {&lambdas, &draw_lambdas}) {
    for (std::size_t i = 0; i < list->size(); ++i) {
      if (!((*list)[i] > 0.0) || (i > 0 && !((*list)[i] > (*list)[i - 1]))) {
        throw ConfigError("frequency lists must be positive and increase strictly");
      }
    }
  }
  osc::QuadratureConfig qcfg;
  qcfg.target_abs_tol = positive(prm, "quadrature_tolerance");
  qcfg.max_subdivisions = count(prm, "max_subdivisions", 0, std::size_t{1} << 30);

  CsvTable sweep{"oscint", {"lambda", "magnitude"}, {}};
  std::vector<std::pair<double, double>> fit_pairs;
  std::vector<double> mags;
  for (double l : lambdas) {
    const double m = std::abs(osc::pv_product_phase(l, 0.0, 0.0, qcfg).value);
    sweep.add({num(l), num(m)});
    fit_pairs.emplace_back(l, m);
    mags.push_back(m);
  }
  const auto fit = osc::log_growth_fit(fit_pairs);
  const double rel = std::abs(fit.slope - kTwoPi) / kTwoPi;
  ctx.report.check("|slope - 2 pi| / 2 pi < tolerance", rel, "<", slope_tol);
  ctx.report.tables.push_back(std::move(sweep));
  ctx.report.plots.push_back({"oscint", line_plot("centered product phase", "lambda", "magnitude",
                                                  {{"|p.v. integral|", lambdas, mags}}, true, false)});

  CsvTable brute{"oscint_brute_force", {"lambda", "c1", "c2", "reduced_re", "reduced_im", "brute_re", "brute_im", "abs_diff"}, {}};
  for (const auto& [c1, c2] : shifts) {
    const cdouble a = osc::pv_product_phase(brute_lambda, c1, c2, qcfg).value;
    const cdouble b = product_phase_brute_force(brute_lambda, c1, c2);
    const double diff = std::abs(a - b);
    brute.add({num(brute_lambda), num(c1), num(c2), num(a.real()), num(a.imag()), num(b.real()), num(b.imag()), num(diff)});
    ctx.report.check("shift (" + num(c1) + ", " + num(c2) + "): |reduction - 2-d brute force| <= tolerance", diff, "<=",
                     brute_tol);
  }
  if (!shifts.empty()) ctx.report.tables.push_back(std::move(brute));

  std::vector<std::array<double, 2>> shift(draws);
  std::vector<std::vector<double>> values(draws);
  std::vector<double> slopes(draws);
  for (std::size_t d = 0; d < draws; ++d) {
    auto rng = item_rng(ctx.seed, d);
    std::uniform_real_distribution<double> c(-max_shift, max_shift);
    do {
      shift[d] = {c(rng), c(rng)};
    } while (std::max(std::abs(shift[d][0]), std::abs(shift[d][1])) < min_shift);
  }
  parallel_for(draws, ctx.threads, [&](std::size_t d) {
    std::vector<std::pair<double, double>> pp;
    for (double l : draw_lambdas) {
      const double m = std::abs(osc::pv_product_phase(l, shift[d][0], shift[d][1], qcfg).value);
      values[d].push_back(m);
      pp.emplace_back(l, m);
    }
    slopes[d] = osc::log_growth_fit(pp).slope;
  });
  std::vector<std::string> cols{"draw", "c1", "c2", "slope"};
  for (double l : draw_lambdas) cols.push_back("magnitude_" + num(l));
  CsvTable shifted{"oscint_shifted", cols, {}};
  double worst = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    std::vector<std::string> row{num(d), num(shift[d][0]), num(shift[d][1]), num(slopes[d])};
    for (double m : values[d]) row.push_back(num(m));
    shifted.add(std::move(row));
    worst = std::max(worst, std::abs(slopes[d]));
    ctx.report.check("draw " + std::to_string(d) + ": |log slope| < fraction * 2 pi", std::abs(slopes[d]), "<",
                     fraction * kTwoPi);
  }
  if (draws > 0) ctx.report.tables.push_back(std::move(shifted));

  ctx.report.results = {{"slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"relative_slope_error", rel},
                        {"max_shifted_abs_slope", worst},
                        {"draws", draws}};
}

}  // namespace maxtrunc::lab
