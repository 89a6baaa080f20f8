#include "maxtrunc/fefferman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "maxtrunc/errors.hpp"
#include "maxtrunc/parallel.hpp"

namespace maxtrunc::fef {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const cdouble kTwoI(0.0, 2.0);

struct Interval {
  double lo;
  double hi;
};

struct AxisSplit {
  bool has_core = false;
  double rho = 0.0;
  std::vector<Interval> outer;
};

AxisSplit split_axis(double x) {
  const double lo = x - 2.0;
  const double hi = x + 2.0;
  if (lo == 0.0 || hi == 0.0) {
    throw InvalidArgument("evaluation point lies on a support edge (|x_j| = 2)");
  }
  AxisSplit s;
  if (lo < 0.0 && hi > 0.0) {
    s.has_core = true;
    s.rho = std::min({1.0, -lo, hi});
    if (lo < -s.rho) s.outer.push_back({lo, -s.rho});
    if (hi > s.rho) s.outer.push_back({s.rho, hi});
  } else {
    s.outer.push_back({lo, hi});
  }
  return s;
}

cdouble unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

// int_a^b e^{i w v} / v dv for an interval not containing 0.
cdouble reciprocal_phase_integral(double w, Interval iv) {
  const auto hi = osc::sine_cosine_integrals(w * iv.hi);
  const auto lo = osc::sine_cosine_integrals(w * iv.lo);
  return {std::log(iv.hi / iv.lo) - hi.cin + lo.cin, hi.si - lo.si};
}

void accumulate(PVResult& total, const PVResult& part) {
  total.value += part.value;
  total.abs_error_estimate += part.abs_error_estimate;
  total.evaluations += part.evaluations;
}

double max_abs(Interval iv) { return std::max(std::abs(iv.lo), std::abs(iv.hi)); }

}  // namespace

cdouble eval_f_lambda(double lambda, double x1, double x2) {
  if (std::abs(x1) > 2.0 || std::abs(x2) > 2.0) return 0.0;
  return unit_phase(kTwoPi * lambda * x1 * x2);
}

double young_bound(double big_r1, double big_r2) { return 8.0 * std::sqrt(big_r1 * big_r2); }

PVResult t_quadrant(double lambda, double r1, double r2, double x1, double x2,
                    const QuadratureConfig& cfg) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be >= 0");
  if (!std::isfinite(r1) || !std::isfinite(r2) || !std::isfinite(x1) || !std::isfinite(x2)) {
    throw InvalidArgument("quadrant operator arguments must be finite");
  }
  const AxisSplit ax1 = split_axis(x1);
  const AxisSplit ax2 = split_axis(x2);
  const double b1 = r1 - lambda * x2;
  const double b2 = r2 - lambda * x1;

  PVResult total{0.0, 0.0, 0};

  if (ax1.has_core && ax2.has_core) {
    if (lambda > 0.0) {
      const double scaled = lambda * ax1.rho * ax2.rho;
      accumulate(total, osc::pv_product_phase(scaled, b1 / (lambda * ax2.rho),
                                              b2 / (lambda * ax1.rho), cfg));
    } else {
      const cdouble first = kTwoI * osc::sine_integral(kTwoPi * b1 * ax1.rho);
      const cdouble second = kTwoI * osc::sine_integral(kTwoPi * b2 * ax2.rho);
      accumulate(total, PVResult{first * second, 0.0, 2});
    }
  }

  if (ax1.has_core) {
    const double rho = ax1.rho;
    for (const Interval& iv : ax2.outer) {
      auto h = [=](double v) {
        return kTwoI * osc::sine_integral(kTwoPi * rho * (lambda * v + b1)) *
               unit_phase(kTwoPi * b2 * v) / v;
      };
      accumulate(total, osc::integrate_panels(h, iv.lo, iv.hi,
                                              kTwoPi * (rho * lambda + std::abs(b2)), cfg));
    }
  }

  if (ax2.has_core) {
    const double rho = ax2.rho;
    for (const Interval& iv : ax1.outer) {
      auto h = [=](double u) {
        return kTwoI * osc::sine_integral(kTwoPi * rho * (lambda * u + b2)) *
               unit_phase(kTwoPi * b1 * u) / u;
      };
      accumulate(total, osc::integrate_panels(h, iv.lo, iv.hi,
                                              kTwoPi * (rho * lambda + std::abs(b1)), cfg));
    }
  }

  for (const Interval& iu : ax1.outer) {
    for (const Interval& iv : ax2.outer) {
      auto h = [=](double u) {
        return unit_phase(kTwoPi * b1 * u) / u *
               reciprocal_phase_integral(kTwoPi * (lambda * u + b2), iv);
      };
      accumulate(total, osc::integrate_panels(h, iu.lo, iu.hi,
                                              kTwoPi * (lambda * max_abs(iv) + std::abs(b1)), cfg));
    }
  }

  const cdouble prefactor = -unit_phase(kTwoPi * lambda * x1 * x2) / (4.0 * std::numbers::pi * std::numbers::pi);
  total.value *= prefactor;
  total.abs_error_estimate *= std::abs(prefactor);
  return total;
}

PVResult s_partial(double lambda, double big_r1, double big_r2, double x1, double x2,
                   const QuadratureConfig& cfg) {
  if (!(big_r1 > 0.0) || !(big_r2 > 0.0)) throw InvalidArgument("radii must be positive");
  PVResult total{0.0, 0.0, 0};
  for (int e1 : {1, -1}) {
    for (int e2 : {1, -1}) {
      PVResult t = t_quadrant(lambda, e1 * big_r1, e2 * big_r2, x1, x2, cfg);
      t.value *= static_cast<double>(e1 * e2);
      accumulate(total, t);
    }
  }
  return total;
}

namespace {

void check_admissible_point(const Point& p) {
  const double lo = 2.0 / 3.0;
  if (!(p.x1 >= lo && p.x1 <= 1.0 && p.x2 >= lo && p.x2 <= 1.0)) {
    throw InvalidArgument("points must lie in [2/3, 1]^2");
  }
}

TableRow row_for(const Point& p, double lam_signal, double lam_radius, const QuadratureConfig& cfg) {
  const double mag =
      std::abs(s_partial(lam_signal, lam_radius * p.x2, lam_radius * p.x1, p.x1, p.x2, cfg).value);
  return TableRow{p.x1, p.x2, lam_radius, mag, mag / std::log(lam_radius)};
}

}  // namespace

std::vector<TableRow> growth_table(const std::vector<Point>& points,
                                   const std::vector<double>& lambdas,
                                   const QuadratureConfig& cfg, std::size_t threads) {
  for (const Point& p : points) check_admissible_point(p);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 1.0) || !std::isfinite(lambdas[i])) {
      throw InvalidArgument("growth lambdas must be finite and exceed 1");
    }
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw InvalidArgument("growth lambdas must increase strictly");
    }
  }
  std::vector<TableRow> rows(points.size() * lambdas.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double lam = lambdas[i % lambdas.size()];
    rows[i] = row_for(points[i / lambdas.size()], lam, lam, cfg);
  });
  return rows;
}

FlatnessTable flatness_table(const std::vector<Point>& points, double lambda,
                             const std::vector<double>& multipliers,
                             const QuadratureConfig& cfg, std::size_t threads) {
  for (const Point& p : points) check_admissible_point(p);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
  for (std::size_t i = 0; i < multipliers.size(); ++i) {
    if (!(multipliers[i] >= 3.0) || !std::isfinite(multipliers[i])) {
      throw InvalidArgument("multipliers must be at least 3");
    }
    if (i > 0 && !(multipliers[i] > multipliers[i - 1])) {
      throw InvalidArgument("multipliers must increase strictly");
    }
  }
  FlatnessTable table;
  table.rows.resize(points.size() * multipliers.size());
  parallel_for(table.rows.size(), threads, [&](std::size_t i) {
    const double m = multipliers[i % multipliers.size()];
    table.rows[i] = row_for(points[i / multipliers.size()], lambda, m * lambda, cfg);
  });
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    if (multipliers.size() < 3) {
      table.fits.emplace_back();
      continue;
    }
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t j = 0; j < multipliers.size(); ++j) {
      const TableRow& r = table.rows[pi * multipliers.size() + j];
      pairs.emplace_back(r.lambda, r.magnitude);
    }
    table.fits.emplace_back(osc::log_growth_fit(pairs));
  }
  return table;
}

bool CounterexampleSequences::any_flagged() const {
  for (const auto& t : terms) {
    if (t.exponent_overflow || t.a_underflow || t.lambda_exponent_overflow || t.lambda_overflow) {
      return true;
    }
  }
  return false;
}

CounterexampleSequences counterexample_sequences(std::size_t count) {
  if (count == 0) throw InvalidArgument("sequence length must be at least 1");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // a_k = 2^{-e_k}: e_1 = 0 and e_{k+1} = k / a_k = k 2^{e_k}.
  std::vector<double> e(count + 1);
  e[0] = 0.0;
  for (std::size_t k = 1; k <= count; ++k) {
    const double prev = e[k - 1];
    e[k] = (std::isinf(prev) || prev > 1023.0) ? kInf : static_cast<double>(k) * std::ldexp(1.0, static_cast<int>(prev));
  }
  CounterexampleSequences seq;
  for (std::size_t k = 1; k <= count; ++k) {
    SequenceTerm t;
    t.k = k;
    t.exponent = e[k - 1];
    t.exponent_overflow = std::isinf(t.exponent);
    t.a_underflow = t.exponent_overflow || t.exponent > 1074.0;
    t.a = t.a_underflow ? 0.0 : std::ldexp(1.0, -static_cast<int>(t.exponent));
    t.lambda_exponent = e[k];
    t.lambda_exponent_overflow = std::isinf(t.lambda_exponent);
    t.lambda_overflow = t.lambda_exponent_overflow || t.lambda_exponent > 1023.0;
    t.lambda = t.lambda_overflow ? kInf : std::ldexp(1.0, static_cast<int>(t.lambda_exponent));
    seq.terms.push_back(t);
  }
  return seq;
}

std::string to_string(TermMethod m) {
  switch (m) {
    case TermMethod::quadrature: return "quadrature";
    case TermMethod::young_bound: return "young_bound";
    case TermMethod::inversion_limit: return "inversion_limit";
    case TermMethod::leading_log: return "leading_log";
  }
  return "unknown";
}

SeriesBound series_lower_bound(std::size_t n, Point point, const QuadratureConfig& cfg,
                               double reach) {
  constexpr std::size_t kTerms = 5;
  if (n == 0) throw InvalidArgument("series index starts at 1");
  const auto seq = counterexample_sequences(kTerms);
  if (n > kTerms || seq.terms[n - 1].lambda_overflow) {
    throw InvalidArgument("lambda_n is not representable for this n");
  }
  if (n > 3) throw InvalidArgument("only n <= 3 is reachable");
  const SequenceTerm& nth = seq.terms[n - 1];
  const double r1 = nth.lambda * point.x2;
  const double r2 = nth.lambda * point.x1;
  const bool full = nth.lambda <= reach;

  SeriesBound out;
  out.n = n;
  out.point = point;
  for (const SequenceTerm& t : seq.terms) {
    SeriesTerm term;
    term.k = t.k;
    term.a = t.a;
    term.lambda = t.lambda;
    term.a_underflow = t.a_underflow;
    if (t.k == n) {
      if (full) {
        term.magnitude = std::abs(s_partial(t.lambda, r1, r2, point.x1, point.x2, cfg).value);
        term.method = TermMethod::quadrature;
      } else {
        const double g = osc::log_growth_integral(kTwoPi * t.lambda, cfg).value.real();
        term.magnitude = g / (std::numbers::pi * std::numbers::pi);
        term.method = TermMethod::leading_log;
      }
    } else if (t.k < n) {
      if (full) {
        term.magnitude = std::abs(s_partial(t.lambda, r1, r2, point.x1, point.x2, cfg).value);
        term.method = TermMethod::quadrature;
      } else {
        term.magnitude = std::abs(eval_f_lambda(t.lambda, point.x1, point.x2));
        term.method = TermMethod::inversion_limit;
      }
    } else if (!t.lambda_overflow && t.lambda <= reach && full) {
      term.magnitude = std::abs(s_partial(t.lambda, r1, r2, point.x1, point.x2, cfg).value);
      term.method = TermMethod::quadrature;
    } else {
      term.magnitude = young_bound(r1, r2);
      term.method = TermMethod::young_bound;
    }
    term.weighted = term.a * term.magnitude;
    if (t.k == n) {
      out.dominant = term.weighted;
      out.growth_constant = term.magnitude / std::log(nth.lambda);
    } else if (t.k < n) {
      out.lower_sum += term.weighted;
      out.lower_constant = std::max(out.lower_constant, term.magnitude);
    } else {
      out.upper_sum += term.weighted;
      out.upper_constant = std::max(out.upper_constant, term.magnitude / nth.lambda);
    }
    out.terms.push_back(term);
  }
  out.lower = out.dominant - out.lower_sum - out.upper_sum;
  return out;
}

}  // namespace maxtrunc::fef
