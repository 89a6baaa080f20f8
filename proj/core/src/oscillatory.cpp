#include "maxtrunc/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maxtrunc/errors.hpp"

namespace maxtrunc::osc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSwitch = 1e-4;
constexpr double kDirectLimit = kTwoPi * 2e5;

PVResult direct_log_growth(double upper, const QuadratureConfig& cfg) {
  return integrate_panels([](double u) { return cdouble(sine_integral(u) / u, 0.0); }, 0.0, upper,
                          1.0, cfg);
}

}  // namespace

PVResult pv_odd_singular(const ComplexFunction& h, const QuadratureConfig& cfg, double omega) {
  const double cut = kSwitch / std::max(1.0, std::abs(omega));
  const cdouble frozen = (h(cut) - h(-cut)) / cut;
  if (!std::isfinite(frozen.real()) || !std::isfinite(frozen.imag())) {
    throw NumericalError("integrand is not finite near the singularity");
  }
  auto quotient = [&](double y) -> cdouble {
    if (y < cut) return frozen;
    return (h(y) - h(-y)) / y;
  };
  PVResult r = integrate_panels(quotient, 0.0, 1.0, omega, cfg);
  r.evaluations *= 2;
  return r;
}

PVResult log_growth_integral(double upper, const QuadratureConfig& cfg) {
  if (!(upper >= 0.0) || std::isinf(upper)) {
    throw InvalidArgument("log growth integral needs a finite nonnegative bound");
  }
  if (upper <= kDirectLimit) return direct_log_growth(upper, cfg);
  static const PVResult anchor = direct_log_growth(kDirectLimit, QuadratureConfig{});
  PVResult r = anchor;
  r.value += std::numbers::pi / 2.0 * std::log(upper / kDirectLimit);
  r.abs_error_estimate += 1.0 / (kDirectLimit * kDirectLimit);
  return r;
}

PVResult pv_product_phase(double lambda, double c1, double c2, const QuadratureConfig& cfg) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
  if (!std::isfinite(c1) || !std::isfinite(c2)) throw InvalidArgument("shifts must be finite");
  if (c1 == 0.0 && c2 == 0.0) {
    PVResult g = log_growth_integral(kTwoPi * lambda, cfg);
    g.value = cdouble(0.0, 4.0) * g.value;
    g.abs_error_estimate *= 4.0;
    return g;
  }
  const double rate = kTwoPi * lambda;
  auto h = [=](double y) {
    const double phase = rate * c2 * y;
    return cdouble(0.0, 2.0 * sine_integral(rate * (y + c1))) * cdouble(std::cos(phase), std::sin(phase));
  };
  return pv_odd_singular(h, cfg, rate * (1.0 + std::abs(c2)));
}

GrowthFit log_growth_fit(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) throw InvalidArgument("log growth fit needs at least 3 points");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!(pairs[i].first > 0.0) || !std::isfinite(pairs[i].first)) {
      throw InvalidArgument("lambda values must be positive and finite");
    }
    if (!std::isfinite(pairs[i].second)) throw InvalidArgument("magnitudes must be finite");
    if (i > 0 && !(pairs[i].first > pairs[i - 1].first)) {
      throw InvalidArgument("lambda values must be strictly increasing");
    }
  }
  const double n = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [l, m] : pairs) {
    mx += std::log(l);
    my += m;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [l, m] : pairs) {
    const double dx = std::log(l) - mx;
    sxx += dx * dx;
    sxy += dx * (m - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("lambda values are degenerate");
  GrowthFit fit{sxy / sxx, 0.0, 0.0};
  fit.intercept = my - fit.slope * mx;
  for (const auto& [l, m] : pairs) {
    fit.residual = std::max(fit.residual, std::abs(m - (fit.slope * std::log(l) + fit.intercept)));
  }
  return fit;
}

}  // namespace maxtrunc::osc
