#include "maxtrunc/mpz_max.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "maxtrunc/errors.hpp"
#include "maxtrunc/parallel.hpp"

namespace maxtrunc::mpz {

RGrid::RGrid(std::vector<std::vector<double>> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) throw InvalidArgument("radius grid needs at least one axis");
  for (const auto& axis : radii_) {
    if (axis.empty()) throw InvalidArgument("radius grid axes must be nonempty");
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (!(axis[i] > 0.0) || !std::isfinite(axis[i])) throw InvalidArgument("radii must be positive");
      if (i > 0 && !(axis[i] > axis[i - 1])) throw InvalidArgument("radii must increase strictly");
    }
  }
}

RGrid RGrid::dyadic(const GridSpec& x, std::size_t count) {
  if (count == 0) throw InvalidArgument("dyadic radius grid needs a positive count");
  std::vector<std::vector<double>> radii(x.dimension());
  for (std::size_t j = 0; j < x.dimension(); ++j) {
    const double extent = x.extent(j);
    for (std::size_t k = 0; k < count; ++k) {
      radii[j].push_back(std::ldexp(extent, -static_cast<int>(count - 1 - k)));
    }
  }
  return RGrid(std::move(radii));
}

std::size_t RGrid::tuple_count() const noexcept {
  std::size_t n = 1;
  for (const auto& a : radii_) n *= a.size();
  return n;
}

std::vector<double> RGrid::tuple(std::size_t t) const {
  std::vector<double> r(radii_.size());
  for (std::size_t j = radii_.size(); j-- > 0;) {
    r[j] = radii_[j][t % radii_[j].size()];
    t /= radii_[j].size();
  }
  return r;
}

GridSignal truncate(const GridSignal& f, std::span<const double> radii) {
  const GridSpec& x = f.spec;
  if (radii.size() != x.dimension()) throw InvalidArgument("radius tuple has the wrong dimension");
  std::vector<std::vector<char>> inside(x.dimension());
  for (std::size_t j = 0; j < x.dimension(); ++j) {
    if (!(radii[j] > 0.0)) throw InvalidArgument("radii must be positive");
    const double limit = radii[j] + 1e-12 * std::max(1.0, radii[j]);
    inside[j].resize(x.shape()[j]);
    for (std::size_t n = 0; n < x.shape()[j]; ++n) inside[j][n] = std::abs(x.coordinate(j, n)) <= limit;
  }
  std::vector<grid::cdouble> v(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) {
    bool in = true;
    for (std::size_t j = 0; j < x.dimension() && in; ++j) in = inside[j][x.index(s, j)];
    if (in) v[s] = f.values[s];
  }
  return GridSignal(x, std::move(v));
}

GridSignal partial_ft(const GridSignal& f, std::span<const double> radii, const GridSpec& xi) {
  return grid::grid_fourier(truncate(f, radii), xi);
}

GridField mpz_maximal_field(const GridSignal& f, const RGrid& rg, const GridSpec& xi,
                            const FieldOptions& options) {
  if (rg.dimension() != f.spec.dimension()) throw InvalidArgument("radius grid has the wrong dimension");
  const std::size_t tuples = rg.tuple_count();
  if (tuples > options.budget / std::max<std::size_t>(xi.size(), 1)) {
    throw BudgetExceeded("tuple count times frequency grid size exceeds the budget");
  }
  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, tuples);
  std::vector<std::vector<double>> partial(workers, std::vector<double>(xi.size(), 0.0));
  parallel_for(workers, workers, [&](std::size_t w) {
    auto& best = partial[w];
    for (std::size_t t = w; t < tuples; t += workers) {
      const GridSignal ft = partial_ft(f, rg.tuple(t), xi);
      for (std::size_t s = 0; s < best.size(); ++s) best[s] = std::max(best[s], std::abs(ft.values[s]));
    }
  });
  std::vector<double> field = std::move(partial[0]);
  for (std::size_t w = 1; w < workers; ++w) {
    for (std::size_t s = 0; s < field.size(); ++s) field[s] = std::max(field[s], partial[w][s]);
  }
  return GridField(xi, std::move(field));
}

double mpz_ratio(const GridSignal& f, Exponent p, const RGrid& rg, const GridSpec& xi,
                 const FieldOptions& options) {
  if (!(p.value() < 2.0)) throw InvalidArgument("mpz ratio requires 1 <= p < 2");
  const double denominator = grid::grid_lp_norm(f.values, f.spec, p.value());
  if (!(denominator > 0.0)) throw InvalidArgument("signal has zero L^p norm");
  const GridField field = mpz_maximal_field(f, rg, xi, options);
  return grid::grid_lp_norm(field.values, xi, holder_conjugate(p).value()) / denominator;
}

std::vector<double> convergence_profile(const GridSignal& f, std::span<const double> xi,
                                        const std::vector<std::vector<double>>& path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i].size() != f.spec.dimension()) throw InvalidArgument("path tuple has the wrong dimension");
    for (std::size_t j = 0; i > 0 && j < path[i].size(); ++j) {
      if (path[i][j] < path[i - 1][j]) throw InvalidArgument("radius path must be non-decreasing");
    }
  }
  const grid::cdouble full = grid::fourier_at(f, xi);
  std::vector<double> errors;
  errors.reserve(path.size());
  for (const auto& r : path) errors.push_back(std::abs(grid::fourier_at(truncate(f, r), xi) - full));
  return errors;
}

GridSignal smooth_random_signal(const GridSpec& x, std::uint64_t seed, std::size_t modes,
                                double width, double band) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(-band, band);
  const std::size_t d = x.dimension();
  std::vector<grid::cdouble> coeff(modes);
  std::vector<std::vector<double>> freq(modes, std::vector<double>(d));
  for (std::size_t m = 0; m < modes; ++m) {
    const double re = normal(rng);
    const double im = normal(rng);
    coeff[m] = {re, im};
    for (std::size_t j = 0; j < d; ++j) freq[m][j] = uniform(rng);
  }
  std::vector<grid::cdouble> v(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) {
    double r2 = 0.0;
    grid::cdouble sum = 0.0;
    for (std::size_t m = 0; m < modes; ++m) {
      double phase = 0.0;
      for (std::size_t j = 0; j < d; ++j) phase += freq[m][j] * x.coordinate(j, x.index(s, j));
      sum += coeff[m] * std::polar(1.0, 2.0 * std::numbers::pi * phase);
    }
    for (std::size_t j = 0; j < d; ++j) r2 += std::pow(x.coordinate(j, x.index(s, j)), 2);
    v[s] = std::exp(-std::numbers::pi * r2 / (width * width)) * sum;
  }
  return GridSignal(x, std::move(v));
}

}  // namespace maxtrunc::mpz
