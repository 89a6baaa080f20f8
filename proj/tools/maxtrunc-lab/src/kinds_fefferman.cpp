#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "internal.hpp"
#include "maxtrunc/fefferman.hpp"

namespace maxtrunc::lab {

namespace {

constexpr double kPi = std::numbers::pi;

fef::Point read_point(const json& prm) {
  const auto v = numbers(prm, "point", 2);
  if (v.size() != 2) throw ConfigError("parameter 'point' needs 2 entries");
  for (double c : v) {
    if (c < 2.0 / 3.0 || c > 1.0) throw ConfigError("parameter 'point' must lie in [2/3, 1]^2");
  }
  return {v[0], v[1]};
}

std::vector<double> read_rates(const json& prm, const std::string& name, std::size_t min_len) {
  const auto v = numbers(prm, name, min_len);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 1.0) || (i > 0 && !(v[i] > v[i - 1]))) {
      throw ConfigError("parameter '" + name + "' must exceed 1 and increase strictly");
    }
  }
  return v;
}

// sin(2 pi R t) / (pi t), the kernel of the partial Fourier integral over [-R, R].
double dirichlet(double big_r, double t) {
  const double a = 2.0 * kPi * big_r * t;
  if (std::abs(a) < 1e-4) return 2.0 * big_r * (1.0 - a * a / 6.0);
  return std::sin(a) / (kPi * t);
}

// Tensor Gauss-Legendre nodes on [-2, 2] with `panels` equal panels.
std::pair<std::vector<double>, std::vector<double>> panel_nodes(std::size_t panels) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto& abs = rule::abscissa();
  const auto& wts = rule::weights();
  std::vector<double> nodes, weights;
  const double width = 4.0 / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = -2.0 + (static_cast<double>(k) + 0.5) * width;
    for (std::size_t i = 0; i < abs.size(); ++i) {
      nodes.push_back(mid - 0.5 * width * abs[i]);
      weights.push_back(0.5 * width * wts[i]);
      nodes.push_back(mid + 0.5 * width * abs[i]);
      weights.push_back(0.5 * width * wts[i]);
    }
  }
  return {nodes, weights};
}

}  // namespace

/// Direct convolution of the chirp pulse with the product Dirichlet kernel.
cdouble dirichlet_convolution(double lambda, double big_r1, double big_r2, double x1, double x2) {
  const double rate = std::max({1.0, lambda, big_r1, big_r2});
  const auto [y, w] = panel_nodes(static_cast<std::size_t>(std::ceil(64.0 * rate)));
  std::vector<double> d2(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) d2[j] = dirichlet(big_r2, x2 - y[j]) * w[j];
  cdouble total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    cdouble inner = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double phase = 2.0 * kPi * lambda * y[i] * y[j];
      inner += cdouble(std::cos(phase), std::sin(phase)) * d2[j];
    }
    total += inner * dirichlet(big_r1, x1 - y[i]) * w[i];
  }
  return total;
}

void run_fefferman_growth(Context& ctx) {
  const auto& prm = ctx.params;
  const auto pt = read_point(prm);
  const auto lambdas = read_rates(prm, "lambdas", 3);
  const double band = positive(prm, "band");
  const auto oracle_lambdas = numbers(prm, "oracle_lambdas", 0);
  for (double l : oracle_lambdas) {
    if (!(l > 0.0) || l > 4.0) throw ConfigError("parameter 'oracle_lambdas' must lie in (0, 4]");
  }
  const double oracle_tol = positive(prm, "oracle_tolerance");
  const auto series = numbers(prm, "series_terms", 0);
  for (double n : series) {
    if (n != 1.0 && n != 2.0 && n != 3.0) throw ConfigError("parameter 'series_terms' entries must be 1, 2 or 3");
  }

  const fef::QuadratureConfig qcfg;
  const auto rows = fef::growth_table({pt}, lambdas, qcfg, ctx.threads);
  CsvTable table{"fefferman_growth", {"point_x1", "point_x2", "lambda", "magnitude", "magnitude_over_log_lambda"}, {}};
  std::vector<std::pair<double, double>> fit_pairs;
  std::vector<double> ratios;
  for (const auto& r : rows) {
    table.add({num(r.x1), num(r.x2), num(r.lambda), num(r.magnitude), num(r.magnitude_over_log_lambda)});
    fit_pairs.emplace_back(r.lambda, r.magnitude);
    ratios.push_back(r.magnitude_over_log_lambda);
    ctx.report.check("lambda " + num(r.lambda) + ": |S| / ln(lambda) > 0", r.magnitude_over_log_lambda, ">", 0.0);
  }
  const std::size_t half = ratios.size() / 2;
  const auto [lo, hi] = std::minmax_element(ratios.begin() + static_cast<std::ptrdiff_t>(half), ratios.end());
  ctx.report.check("upper half: max / min of |S| / ln(lambda) < band", *hi / *lo, "<", band);
  const auto fit = osc::log_growth_fit(fit_pairs);
  ctx.report.tables.push_back(std::move(table));

  CsvTable oracle{"fefferman_oracle",
                  {"lambda", "r1", "r2", "s_partial_re", "s_partial_im", "oracle_re", "oracle_im", "abs_diff"},
                  {}};
  double worst = 0.0;
  for (double l : oracle_lambdas) {
    const double r1 = l * pt.x2, r2 = l * pt.x1;
    const cdouble s = fef::s_partial(l, r1, r2, pt.x1, pt.x2, qcfg).value;
    const cdouble o = dirichlet_convolution(l, r1, r2, pt.x1, pt.x2);
    const double diff = std::abs(s - o);
    worst = std::max(worst, diff);
    oracle.add({num(l), num(r1), num(r2), num(s.real()), num(s.imag()), num(o.real()), num(o.imag()), num(diff)});
    ctx.report.check("lambda " + num(l) + ": |s_partial - Dirichlet convolution| <= tolerance", diff, "<=", oracle_tol);
  }
  if (!oracle_lambdas.empty()) ctx.report.tables.push_back(std::move(oracle));

  json series_json = json::array();
  if (!series.empty()) {
    CsvTable st{"fefferman_series", {"n", "k", "a", "lambda", "magnitude", "weighted", "method"}, {}};
    for (double nd : series) {
      const auto b = fef::series_lower_bound(static_cast<std::size_t>(nd), pt, qcfg);
      for (const auto& t : b.terms) {
        st.add({num(b.n), num(t.k), num(t.a), num(t.lambda), num(t.magnitude), num(t.weighted), fef::to_string(t.method)});
      }
      series_json.push_back({{"n", b.n}, {"dominant", b.dominant}, {"lower_sum", b.lower_sum},
                             {"upper_sum", b.upper_sum}, {"lower", b.lower}, {"growth_constant", b.growth_constant},
                             {"lower_constant", b.lower_constant}, {"upper_constant", b.upper_constant}});
    }
    ctx.report.tables.push_back(std::move(st));
  }

  std::vector<double> mags;
  for (const auto& r : rows) mags.push_back(r.magnitude);
  ctx.report.plots.push_back({"fefferman_growth", line_plot("|S f| at the matched rate", "lambda", "|S f|",
                                                            {{"magnitude", lambdas, mags}}, true, false)});
  ctx.report.results = {{"growth_slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"fit_residual", fit.residual},
                        {"upper_half_band", *hi / *lo},
                        {"max_oracle_diff", worst},
                        {"series", series_json}};
}

void run_fefferman_flatness(Context& ctx) {
  const auto& prm = ctx.params;
  const auto pt = read_point(prm);
  const double lambda = number(prm, "lambda", 1.0, 1e6);
  const auto mult = numbers(prm, "multipliers", 3);
  for (std::size_t i = 0; i < mult.size(); ++i) {
    if (mult[i] < 3.0 || (i > 0 && !(mult[i] > mult[i - 1]))) {
      throw ConfigError("parameter 'multipliers' must be >= 3 and increase strictly");
    }
  }
  const double separation = positive(prm, "separation");
  const fef::QuadratureConfig qcfg;

  double growth_slope = 0.0;
  if (prm.at("growth_slope").is_null()) {
    const auto lambdas = read_rates(prm, "growth_lambdas", 3);
    std::vector<std::pair<double, double>> pairs;
    for (const auto& r : fef::growth_table({pt}, lambdas, qcfg, ctx.threads)) pairs.emplace_back(r.lambda, r.magnitude);
    growth_slope = osc::log_growth_fit(pairs).slope;
  } else {
    growth_slope = positive(prm, "growth_slope");
  }

  const auto flat = fef::flatness_table({pt}, lambda, mult, qcfg, ctx.threads);
  CsvTable table{"fefferman_flatness",
                 {"point_x1", "point_x2", "multiplier", "lambda", "magnitude", "magnitude_over_log_lambda"},
                 {}};
  for (std::size_t i = 0; i < flat.rows.size(); ++i) {
    const auto& r = flat.rows[i];
    table.add({num(r.x1), num(r.x2), num(mult[i]), num(r.lambda), num(r.magnitude), num(r.magnitude_over_log_lambda)});
  }
  const double slope = flat.fits.at(0)->slope;
  ctx.report.check("|flatness slope| < separation * growth slope", std::abs(slope), "<", separation * growth_slope);
  ctx.report.results = {{"flatness_slope", slope}, {"growth_slope", growth_slope}, {"base_lambda", lambda}};
  ctx.report.tables.push_back(std::move(table));
}

}  // namespace maxtrunc::lab
