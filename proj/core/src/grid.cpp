#include "maxtrunc/grid.hpp"

#include <algorithm>
#include <cmath>

#include "maxtrunc/errors.hpp"

namespace maxtrunc::grid {

GridSpec::GridSpec(std::vector<std::size_t> shape, std::vector<double> spacing,
                   std::vector<double> origin)
    : shape_(std::move(shape)), spacing_(std::move(spacing)), origin_(std::move(origin)) {
  if (shape_.empty()) throw InvalidArgument("grid needs at least one axis");
  if (spacing_.size() != shape_.size() || origin_.size() != shape_.size()) {
    throw InvalidArgument("grid shape, spacing and origin differ in dimension");
  }
  strides_.assign(shape_.size(), 1);
  size_ = 1;
  for (std::size_t j = shape_.size(); j-- > 0;) {
    if (shape_[j] == 0) throw InvalidArgument("grid axes need at least one point");
    if (!(spacing_[j] > 0.0) || !std::isfinite(spacing_[j])) {
      throw InvalidArgument("grid spacing must be positive and finite");
    }
    if (!std::isfinite(origin_[j])) throw InvalidArgument("grid origin must be finite");
    strides_[j] = size_;
    size_ *= shape_[j];
  }
}

GridSpec GridSpec::centered(std::size_t d, std::size_t n, double h) {
  const double start = -static_cast<double>(n / 2) * h;
  return GridSpec(std::vector<std::size_t>(d, n), std::vector<double>(d, h),
                  std::vector<double>(d, start));
}

double GridSpec::cell_volume() const noexcept {
  double v = 1.0;
  for (double h : spacing_) v *= h;
  return v;
}

double GridSpec::extent(std::size_t axis) const {
  return std::max(std::abs(coordinate(axis, 0)), std::abs(coordinate(axis, shape_[axis] - 1)));
}

GridSignal::GridSignal(GridSpec s, std::vector<cdouble> v) : spec(std::move(s)), values(std::move(v)) {
  if (values.size() != spec.size()) throw InvalidArgument("grid signal size does not match its grid");
}

GridSignal GridSignal::zeros(GridSpec s) {
  const std::size_t n = s.size();
  return GridSignal(std::move(s), std::vector<cdouble>(n));
}

GridField::GridField(GridSpec s, std::vector<double> v) : spec(std::move(s)), values(std::move(v)) {
  if (values.size() != spec.size()) throw InvalidArgument("grid field size does not match its grid");
}

namespace {

template <class T>
double norm_impl(std::span<const T> values, const GridSpec& spec, double p) {
  if (values.size() != spec.size()) throw InvalidArgument("values do not match the grid");
  if (!(p >= 1.0)) throw InvalidArgument("exponent must be at least 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const T& v : values) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
  }
  double acc = 0.0;
  for (const T& v : values) acc += std::pow(static_cast<double>(std::abs(v)), p);
  return std::pow(acc * spec.cell_volume(), 1.0 / p);
}

}  // namespace

double grid_lp_norm(std::span<const cdouble> values, const GridSpec& spec, double p) {
  return norm_impl(values, spec, p);
}

double grid_lp_norm(std::span<const double> values, const GridSpec& spec, double p) {
  return norm_impl(values, spec, p);
}

}  // namespace maxtrunc::grid
