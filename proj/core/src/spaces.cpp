#include "maxtrunc/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maxtrunc/errors.hpp"

namespace maxtrunc {

namespace {

double abs_pow(cdouble z, double p) {
  if (p == 1.0) return std::abs(z);
  if (p == 2.0) return std::norm(z);
  return std::pow(std::abs(z), p);
}

}  // namespace

Exponent::Exponent(double value) : value_(value) {
  if (!(value >= 1.0)) {
    throw InvalidArgument("exponent must lie in [1, inf], got " + std::to_string(value));
  }
}

Exponent Exponent::infinity() noexcept {
  return Exponent(std::numeric_limits<double>::infinity(), Unchecked{});
}

bool Exponent::is_infinite() const noexcept { return std::isinf(value_); }

double Exponent::reciprocal() const noexcept { return is_infinite() ? 0.0 : 1.0 / value_; }

Exponent holder_conjugate(Exponent p) noexcept {
  if (p.is_infinite()) return Exponent(1.0);
  if (p.value() == 1.0) return Exponent::infinity();
  return Exponent(p.value() / (p.value() - 1.0));
}

WeightedSpace::WeightedSpace(std::vector<double> weights) {
  if (weights.empty()) throw InvalidArgument("weighted space needs at least one atom");
  bool any_positive = false;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidArgument("weights must be finite and nonnegative");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw InvalidArgument("at least one weight must be positive");
  weights_ = std::make_shared<const std::vector<double>>(std::move(weights));
}

WeightedSpace WeightedSpace::uniform(std::size_t n, double weight) {
  return WeightedSpace(std::vector<double>(n, weight));
}

bool WeightedSpace::same_as(const WeightedSpace& other) const noexcept {
  return weights_ == other.weights_ || *weights_ == *other.weights_;
}

Signal::Signal(WeightedSpace space, std::vector<cdouble> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw InvalidArgument("signal length does not match its space");
  }
}

Signal Signal::zeros(WeightedSpace space) {
  const std::size_t n = space.size();
  return Signal(std::move(space), std::vector<cdouble>(n));
}

Kernel::Kernel(WeightedSpace domain, WeightedSpace codomain, std::vector<cdouble> entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
  if (entries_.size() != domain_.size() * codomain_.size()) {
    throw InvalidArgument("kernel entry count must equal rows * cols");
  }
  for (const cdouble& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("kernel entries must be finite");
    }
  }
}

Kernel Kernel::identity(const WeightedSpace& space) {
  const std::size_t n = space.size();
  std::vector<cdouble> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return Kernel(space, space, std::move(e));
}

Kernel Kernel::zero(WeightedSpace domain, WeightedSpace codomain) {
  const std::size_t n = domain.size() * codomain.size();
  return Kernel(std::move(domain), std::move(codomain), std::vector<cdouble>(n));
}

Kernel Kernel::scaled(cdouble alpha) const {
  std::vector<cdouble> e(entries_);
  for (auto& z : e) z *= alpha;
  return Kernel(domain_, codomain_, std::move(e));
}

Signal apply_kernel(const Kernel& k, const Signal& f) {
  if (f.size() != k.cols() || !f.space().same_as(k.domain())) {
    throw InvalidArgument("signal does not live on the kernel domain");
  }
  const auto nu = k.domain().weights();
  std::vector<cdouble> out(k.rows());
  for (std::size_t x = 0; x < k.rows(); ++x) {
    const auto row = k.row(x);
    cdouble acc = 0.0;
    for (std::size_t y = 0; y < row.size(); ++y) acc += row[y] * f[y] * nu[y];
    out[x] = acc;
  }
  return Signal(k.codomain(), std::move(out));
}

double lp_mass(std::span<const cdouble> values, std::span<const double> weights, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (weights[i] > 0.0) acc += abs_pow(values[i], p) * weights[i];
  }
  return acc;
}

double lp_norm(std::span<const cdouble> values, std::span<const double> weights, Exponent p) {
  if (values.size() != weights.size()) throw InvalidArgument("values and weights differ in length");
  if (p.is_infinite()) {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (weights[i] > 0.0) m = std::max(m, std::abs(values[i]));
    }
    return m;
  }
  const double mass = lp_mass(values, weights, p.value());
  if (p.value() == 1.0) return mass;
  if (p.value() == 2.0) return std::sqrt(mass);
  return std::pow(mass, 1.0 / p.value());
}

double lp_norm(const Signal& f, Exponent p) { return lp_norm(f.values(), f.space().weights(), p); }

}  // namespace maxtrunc
