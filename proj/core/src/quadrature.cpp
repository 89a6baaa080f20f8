#include "maxtrunc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "maxtrunc/errors.hpp"

namespace maxtrunc::osc {

namespace {

constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kKronrod[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGauss[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kMaxInitialPanels = 50'000'000;

struct Panel {
  double a;
  double b;
  cdouble value;
  double error;
};

cdouble sample(const ComplexFunction& h, double x) {
  const cdouble v = h(x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw NumericalError("integrand is not finite at x = " + std::to_string(x));
  }
  return v;
}

Panel kronrod(const ComplexFunction& h, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const cdouble fc = sample(h, c);
  cdouble k = fc * kKronrod[7];
  cdouble g = fc * kGauss[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = r * kNodes[j];
    const cdouble s = sample(h, c - dx) + sample(h, c + dx);
    k += s * kKronrod[j];
    if (j % 2 == 1) g += s * kGauss[j / 2];
  }
  k *= r;
  g *= r;
  return Panel{a, b, k, std::abs(k - g)};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(target_abs_tol > 0.0)) throw InvalidArgument("target_abs_tol must be positive");
  if (!(oscillation_resolution >= 8.0)) {
    throw InvalidArgument("oscillation_resolution must be at least 8");
  }
}

PVResult integrate_panels(const ComplexFunction& h, double a, double b, double omega,
                          const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !(a <= b)) {
    throw InvalidArgument("integration bounds must be finite and ordered");
  }
  if (a == b) return PVResult{0.0, 0.0, 1};
  std::size_t initial = 1;
  if (omega > 0.0) {
    const double n = std::ceil((b - a) * std::abs(omega) * cfg.oscillation_resolution /
                               (2.0 * std::numbers::pi));
    if (!(n <= static_cast<double>(kMaxInitialPanels))) {
      throw BudgetExceeded("oscillation requires more than " + std::to_string(kMaxInitialPanels) +
                           " panels");
    }
    initial = std::max<std::size_t>(1, static_cast<std::size_t>(n));
  }

  std::vector<Panel> panels;
  panels.reserve(initial);
  double total_error = 0.0;
  const double width = (b - a) / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = i + 1 == initial ? b : a + width * static_cast<double>(i + 1);
    panels.push_back(kronrod(h, lo, hi));
    total_error += panels.back().error;
  }

  auto worse = [&panels](std::size_t l, std::size_t r) {
    if (panels[l].error != panels[r].error) return panels[l].error < panels[r].error;
    return l > r;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
  if (total_error > cfg.target_abs_tol) {
    for (std::size_t i = 0; i < panels.size(); ++i) queue.push(i);
  }
  std::size_t splits = 0;
  while (total_error > cfg.target_abs_tol) {
    if (splits >= cfg.max_subdivisions || queue.empty()) break;
    const std::size_t i = queue.top();
    queue.pop();
    const Panel old = panels[i];
    const double mid = 0.5 * (old.a + old.b);
    if (!(mid > old.a && mid < old.b)) break;
    panels[i] = kronrod(h, old.a, mid);
    panels.push_back(kronrod(h, mid, old.b));
    total_error += panels[i].error + panels.back().error - old.error;
    queue.push(i);
    queue.push(panels.size() - 1);
    ++splits;
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  PVResult result;
  double err = 0.0;
  for (const Panel& p : panels) {
    result.value += p.value;
    err += p.error;
  }
  result.abs_error_estimate = err;
  result.evaluations = panels.size() * 15;
  if (err > cfg.target_abs_tol) {
    throw NonConvergence("quadrature error estimate " + std::to_string(err) +
                             " exceeds tolerance after " + std::to_string(splits) + " bisections",
                         result.value.real(), result.value.imag(), err);
  }
  return result;
}

}  // namespace maxtrunc::osc
