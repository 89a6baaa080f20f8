#include "maxtrunc/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maxtrunc/errors.hpp"
#include "maxtrunc/parallel.hpp"

namespace maxtrunc::restr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Rule {
  std::array<double, 15> nodes;
  std::array<double, 15> weights;
};

// 15-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_15.
const Rule& gauss_legendre_15() {
  static const Rule rule = [] {
    Rule r{};
    constexpr int n = 15;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= n; ++k) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double step = p0 / dp;
        z -= step;
        if (std::abs(step) < 1e-16) break;
      }
      r.nodes[i] = z;
      r.weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return r;
  }();
  return rule;
}

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

void require_gaussian(const MollifierSpec& chi) {
  if (chi.kind != MollifierSpec::Kind::gaussian) throw InvalidArgument("unsupported mollifier kind");
}

// Nodes and weights of a panelled rule on [a, b].
void panel_rule(double a, double b, std::size_t panels, std::vector<double>& nodes,
                std::vector<double>& weights) {
  const Rule& g = gauss_legendre_15();
  nodes.clear();
  weights.clear();
  const double w = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = a + (static_cast<double>(p) + 0.5) * w;
    for (int i = 0; i < 15; ++i) {
      nodes.push_back(c + 0.5 * w * g.nodes[i]);
      weights.push_back(0.5 * w * g.weights[i]);
    }
  }
}

}  // namespace

SampledSurface SampledSurface::parabola(std::size_t samples, double u_min, double u_max) {
  if (samples < 2 || !(u_max > u_min)) throw InvalidArgument("parabola needs >= 2 samples on a proper interval");
  SampledSurface s;
  const double du = (u_max - u_min) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = u_min + du * static_cast<double>(i);
    s.parameters.push_back(u);
    s.points.push_back({u, u * u});
    s.weights.push_back(i == 0 || i + 1 == samples ? 0.5 * du : du);
  }
  return s;
}

double mollifier(const MollifierSpec& chi, std::span<const double> x) {
  require_gaussian(chi);
  return std::exp(-kPi * squared_norm(x));
}

double mollifier_inverse_ft(const MollifierSpec& chi, std::span<const double> t) {
  return mollifier(chi, t);
}

double mollifier_mixed_derivative(const MollifierSpec& chi, std::span<const double> t) {
  double v = mollifier_inverse_ft(chi, t);
  for (double tj : t) v *= -kTwoPi * tj;
  return v;
}

double dilate_mollifier(const MollifierSpec& chi, std::span<const double> r, std::span<const double> x) {
  if (r.size() != x.size()) throw InvalidArgument("dilation and point differ in dimension");
  std::vector<double> scaled(x.size());
  double volume = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(r[j] > 0.0)) throw InvalidArgument("dilation radii must be positive");
    scaled[j] = x[j] / r[j];
    volume *= r[j];
  }
  return mollifier(chi, scaled) / volume;
}

double quadrant_identity_check(const MollifierSpec& chi, std::span<const double> r,
                               std::span<const double> x) {
  const std::size_t d = x.size();
  if (d == 0 || d > 3 || r.size() != d) throw InvalidArgument("identity check supports 1 <= d <= 3");
  std::vector<double> scaled(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (!(r[j] > 0.0)) throw InvalidArgument("dilation radii must be positive");
    if (x[j] == 0.0 || !std::isfinite(x[j])) throw InvalidArgument("point must lie off the coordinate axes");
    scaled[j] = r[j] * x[j];
  }
  const double lhs = mollifier_inverse_ft(chi, scaled);

  constexpr double kTail = 6.0;  // e^{-pi 36} is far below double resolution
  constexpr std::size_t kPanels = 12;
  double rhs = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    std::vector<int> eps(d);
    bool contains = true;
    int positives = 0;
    for (std::size_t j = 0; j < d; ++j) {
      eps[j] = (mask >> j) & 1 ? 1 : -1;
      positives += eps[j] == 1;
      contains = contains && ((x[j] > 0.0) == (eps[j] == 1));
    }
    if (!contains) continue;
    std::vector<std::vector<double>> nodes(d), weights(d);
    for (std::size_t j = 0; j < d; ++j) {
      const double a = r[j] * std::abs(x[j]);
      panel_rule(a, a + kTail, kPanels, nodes[j], weights[j]);
      for (double& t : nodes[j]) t *= eps[j];
    }
    const std::size_t per_axis = nodes[0].size();
    std::size_t total = 1;
    for (std::size_t j = 0; j < d; ++j) total *= per_axis;
    double integral = 0.0;
    std::vector<double> t(d);
    for (std::size_t s = 0; s < total; ++s) {
      std::size_t rest = s;
      double w = 1.0;
      for (std::size_t j = d; j-- > 0;) {
        const std::size_t i = rest % per_axis;
        rest /= per_axis;
        t[j] = nodes[j][i];
        w *= weights[j][i];
      }
      integral += w * mollifier_mixed_derivative(chi, t);
    }
    rhs += (positives % 2 == 0 ? 1.0 : -1.0) * integral;
  }
  return std::abs(lhs - rhs);
}

DilationGrid::DilationGrid(std::vector<std::vector<double>> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) throw InvalidArgument("dilation grid needs at least one axis");
  for (const auto& axis : radii_) {
    if (axis.empty()) throw InvalidArgument("dilation grid axes must be nonempty");
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (!(axis[i] > 0.0) || !std::isfinite(axis[i])) throw InvalidArgument("dilation radii must be positive");
      if (i > 0 && !(axis[i] > axis[i - 1])) throw InvalidArgument("dilation radii must increase strictly");
    }
  }
}

DilationGrid DilationGrid::dyadic(std::size_t d, int k_min, int k_max) {
  if (k_max < k_min) throw InvalidArgument("empty dyadic range");
  std::vector<double> axis;
  for (int k = k_min; k <= k_max; ++k) axis.push_back(std::ldexp(1.0, k));
  return DilationGrid(std::vector<std::vector<double>>(d, axis));
}

std::size_t DilationGrid::tuple_count() const noexcept {
  std::size_t n = 1;
  for (const auto& a : radii_) n *= a.size();
  return n;
}

std::vector<double> maximal_restriction_field(const GridSignal& f, const SampledSurface& surface,
                                              const MollifierSpec& chi, const DilationGrid& dg,
                                              const mpz::FieldOptions& options) {
  require_gaussian(chi);
  const GridSpec& x = f.spec;
  if (x.dimension() != 2 || dg.dimension() != 2) throw InvalidArgument("restriction field needs d = 2");
  const std::size_t points = surface.points.size();
  if (dg.tuple_count() > options.budget / std::max<std::size_t>(points, 1)) {
    throw BudgetExceeded("dilation tuples times surface points exceed the budget");
  }
  const std::size_t n1 = x.shape()[0];
  const std::size_t n2 = x.shape()[1];
  // Separable factors of chi-check(r x) for the Gaussian.
  std::array<std::vector<std::vector<double>>, 2> damp;
  for (std::size_t j = 0; j < 2; ++j) {
    for (double r : dg.axis(j)) {
      std::vector<double> w(x.shape()[j]);
      for (std::size_t n = 0; n < w.size(); ++n) {
        const double t = r * x.coordinate(j, n);
        w[n] = std::exp(-kPi * t * t);
      }
      damp[j].push_back(std::move(w));
    }
  }
  const double cell = x.cell_volume();
  std::vector<double> field(points);
  parallel_for(points, options.threads, [&](std::size_t s) {
    const auto& xi = surface.points[s];
    std::vector<cdouble> phase1(n1), phase2(n2), partial(n1);
    for (std::size_t n = 0; n < n1; ++n) phase1[n] = std::polar(1.0, -kTwoPi * x.coordinate(0, n) * xi[0]);
    for (std::size_t n = 0; n < n2; ++n) phase2[n] = std::polar(1.0, -kTwoPi * x.coordinate(1, n) * xi[1]);
    double best = 0.0;
    for (const auto& w2 : damp[1]) {
      for (std::size_t i1 = 0; i1 < n1; ++i1) {
        cdouble acc = 0.0;
        const cdouble* row = &f.values[i1 * n2];
        for (std::size_t i2 = 0; i2 < n2; ++i2) acc += row[i2] * (w2[i2] * phase2[i2]);
        partial[i1] = acc;
      }
      for (const auto& w1 : damp[0]) {
        cdouble acc = 0.0;
        for (std::size_t i1 = 0; i1 < n1; ++i1) acc += partial[i1] * (w1[i1] * phase1[i1]);
        best = std::max(best, std::abs(acc) * cell);
      }
    }
    field[s] = best;
  });
  return field;
}

double restriction_ratio(std::span<const double> field, const SampledSurface& surface,
                         const GridSignal& f, double p, double q) {
  if (field.size() != surface.weights.size()) throw InvalidArgument("field does not match the surface");
  double acc = 0.0;
  for (std::size_t s = 0; s < field.size(); ++s) acc += std::pow(field[s], q) * surface.weights[s];
  const double denominator = grid::grid_lp_norm(f.values, f.spec, p);
  if (!(denominator > 0.0)) throw InvalidArgument("signal has zero L^p norm");
  return std::pow(acc, 1.0 / q) / denominator;
}

cdouble ellipsoid_average(const GridSignal& fhat, std::span<const double> xi, std::span<const double> r) {
  const GridSpec& g = fhat.spec;
  const std::size_t d = g.dimension();
  if (xi.size() != d || r.size() != d) throw InvalidArgument("ellipsoid has the wrong dimension");
  double volume = 1.0;
  std::vector<std::size_t> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (!(r[j] > 0.0)) throw InvalidArgument("semi-axes must be positive");
    volume *= 2.0 * r[j] / g.spacing()[j];
    const double first = g.coordinate(j, 0);
    const double last = g.coordinate(j, g.shape()[j] - 1);
    const double slack = 1e-9 * g.spacing()[j];
    if (xi[j] - r[j] < first - slack || xi[j] + r[j] > last + slack) {
      throw InvalidArgument("ellipsoid leaves the sampled grid");
    }
    lo[j] = static_cast<std::size_t>(std::max(0.0, std::floor((xi[j] - r[j] - first) / g.spacing()[j])));
    hi[j] = std::min(g.shape()[j] - 1,
                     static_cast<std::size_t>(std::ceil((xi[j] + r[j] - first) / g.spacing()[j])));
  }
  if (volume < 1.0) throw InvalidArgument("ellipsoid is smaller than one grid cell");

  cdouble sum = 0.0;
  std::size_t count = 0;
  std::vector<std::size_t> idx = lo;
  while (true) {
    double q = 0.0;
    std::size_t flat = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const double u = (g.coordinate(j, idx[j]) - xi[j]) / r[j];
      q += u * u;
      flat += idx[j] * g.stride(j);
    }
    if (q <= 1.0 + 1e-12) {
      sum += fhat.values[flat];
      ++count;
    }
    std::size_t j = d;
    while (j-- > 0) {
      if (++idx[j] <= hi[j]) break;
      idx[j] = lo[j];
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  if (count == 0) throw InvalidArgument("ellipsoid contains no grid node");
  return sum / static_cast<double>(count);
}

std::vector<double> lebesgue_point_profile(const GridSignal& f, std::span<const double> xi,
                                           const std::vector<std::vector<double>>& path,
                                           std::size_t resolution) {
  const std::size_t d = f.spec.dimension();
  if (xi.size() != d) throw InvalidArgument("point has the wrong dimension");
  if (path.empty() || resolution == 0) throw InvalidArgument("profile needs a path and a resolution");
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i].size() != d) throw InvalidArgument("path tuple has the wrong dimension");
    for (std::size_t j = 0; j < d; ++j) {
      if (!(path[i][j] > 0.0)) throw InvalidArgument("path radii must be positive");
      if (i > 0 && !(path[i][j] < path[i - 1][j])) throw InvalidArgument("path must shrink in every coordinate");
    }
  }
  const cdouble center = grid::fourier_at(f, xi);
  std::vector<double> out;
  for (const auto& r : path) {
    std::vector<std::size_t> shape(d, 2 * resolution + 1);
    std::vector<double> spacing(d), origin(d);
    for (std::size_t j = 0; j < d; ++j) {
      spacing[j] = r[j] / static_cast<double>(resolution);
      origin[j] = xi[j] - r[j];
    }
    GridSignal window = grid::grid_fourier(f, GridSpec(shape, spacing, origin));
    for (auto& v : window.values) v = std::abs(v - center);
    out.push_back(ellipsoid_average(window, xi, r).real());
  }
  return out;
}

}  // namespace maxtrunc::restr
