#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace maxtrunc::grid {

using cdouble = std::complex<double>;

/// Uniform d-dimensional grid: node (i_1, ..., i_d) sits at origin_j + i_j spacing_j.
/// Flat indices are row-major with the last axis fastest.
class GridSpec {
 public:
  GridSpec(std::vector<std::size_t> shape, std::vector<double> spacing, std::vector<double> origin);

  /// n points per axis with spacing h, symmetric about 0 when n is odd and
  /// starting at -(n/2) h when n is even.
  static GridSpec centered(std::size_t d, std::size_t n, double h);

  std::size_t dimension() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return size_; }
  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  const std::vector<double>& spacing() const noexcept { return spacing_; }
  const std::vector<double>& origin() const noexcept { return origin_; }

  double coordinate(std::size_t axis, std::size_t index) const {
    return origin_[axis] + static_cast<double>(index) * spacing_[axis];
  }
  /// Axis index of the flat index.
  std::size_t index(std::size_t flat, std::size_t axis) const {
    return (flat / strides_[axis]) % shape_[axis];
  }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  /// Product of spacings.
  double cell_volume() const noexcept;
  /// Largest |coordinate| along an axis.
  double extent(std::size_t axis) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> spacing_;
  std::vector<double> origin_;
  std::vector<std::size_t> strides_;
  std::size_t size_;
};

/// Complex samples on a grid.
struct GridSignal {
  GridSignal(GridSpec spec, std::vector<cdouble> values);
  static GridSignal zeros(GridSpec spec);

  GridSpec spec;
  std::vector<cdouble> values;
};

/// Real samples on a grid.
struct GridField {
  GridField(GridSpec spec, std::vector<double> values);

  GridSpec spec;
  std::vector<double> values;
};

/// Quadrature L^p norm of samples (weights = cell volume).
double grid_lp_norm(std::span<const cdouble> values, const GridSpec& spec, double p);
double grid_lp_norm(std::span<const double> values, const GridSpec& spec, double p);

}  // namespace maxtrunc::grid
