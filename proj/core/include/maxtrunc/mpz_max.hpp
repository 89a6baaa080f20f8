#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxtrunc/fourier.hpp"
#include "maxtrunc/grid.hpp"
#include "maxtrunc/spaces.hpp"

namespace maxtrunc::mpz {

using grid::GridField;
using grid::GridSignal;
using grid::GridSpec;

/// Per-axis truncation radii, positive and strictly increasing.
class RGrid {
 public:
  explicit RGrid(std::vector<std::vector<double>> radii);

  /// `count` radii per axis: extent_j * 2^{-(count-1)}, ..., extent_j.
  static RGrid dyadic(const GridSpec& x, std::size_t count);

  std::size_t dimension() const noexcept { return radii_.size(); }
  const std::vector<double>& axis(std::size_t j) const { return radii_[j]; }
  std::size_t tuple_count() const noexcept;
  /// Radii of the t-th tuple in row-major order (last axis fastest).
  std::vector<double> tuple(std::size_t t) const;

 private:
  std::vector<std::vector<double>> radii_;
};

struct FieldOptions {
  /// Largest allowed tuple count * frequency grid size.
  std::size_t budget = std::size_t{1} << 28;
  std::size_t threads = 1;
};

/// f times the indicator of the closed box prod_j [-R_j, R_j]. Samples within
/// 1e-12 max(1, R_j) of the boundary count as inside.
GridSignal truncate(const GridSignal& f, std::span<const double> radii);

/// grid_fourier(truncate(f, R), xi).
GridSignal partial_ft(const GridSignal& f, std::span<const double> radii, const GridSpec& xi);

/// Pointwise max over all tuples of rg of |partial_ft(f, R, xi)|.
/// Throws BudgetExceeded when tuple_count * xi.size() exceeds the budget.
GridField mpz_maximal_field(const GridSignal& f, const RGrid& rg, const GridSpec& xi,
                            const FieldOptions& options = {});

/// ||maximal field||_{L^{p'}(xi grid)} / ||f||_{L^p(x grid)} for 1 <= p < 2.
double mpz_ratio(const GridSignal& f, Exponent p, const RGrid& rg, const GridSpec& xi,
                 const FieldOptions& options = {});

/// |partial_ft(f, R_k) - full transform| at one frequency along a path of
/// radius tuples, each coordinate non-decreasing.
std::vector<double> convergence_profile(const GridSignal& f, std::span<const double> xi,
                                        const std::vector<std::vector<double>>& path);

/// Smooth test signal e^{-pi |x|^2 / w^2} sum_m c_m e^{2 pi i k_m . x}, with
/// complex normal c_m and k_m uniform in [-band, band]^d.
GridSignal smooth_random_signal(const GridSpec& x, std::uint64_t seed, std::size_t modes = 4,
                                double width = 1.5, double band = 1.0);

}  // namespace maxtrunc::mpz
