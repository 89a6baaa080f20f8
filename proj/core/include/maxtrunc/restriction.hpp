#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "maxtrunc/fourier.hpp"
#include "maxtrunc/grid.hpp"
#include "maxtrunc/mpz_max.hpp"

namespace maxtrunc::restr {

using grid::cdouble;
using grid::GridSignal;
using grid::GridSpec;

/// Points (u, u^2) of a parabola arc with trapezoid weights for du.
struct SampledSurface {
  std::vector<double> parameters;
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;

  static SampledSurface parabola(std::size_t samples = 201, double u_min = -1.0, double u_max = 1.0);
};

struct MollifierSpec {
  enum class Kind { gaussian };
  Kind kind = Kind::gaussian;
  /// Decay margin in the (1 + |x|)^{-d - delta} condition; any delta holds for the Gaussian.
  double delta = 1.0;
};

/// chi(x) = e^{-pi |x|^2}. The Gaussian is its own Fourier transform.
double mollifier(const MollifierSpec& chi, std::span<const double> x);

/// Inverse Fourier transform of chi at t.
double mollifier_inverse_ft(const MollifierSpec& chi, std::span<const double> t);

/// d_1 ... d_d of the inverse Fourier transform at t: prod_j (-2 pi t_j) e^{-pi |t|^2}.
double mollifier_mixed_derivative(const MollifierSpec& chi, std::span<const double> t);

/// chi(x_1 / r_1, ..., x_d / r_d) / (r_1 ... r_d).
double dilate_mollifier(const MollifierSpec& chi, std::span<const double> r, std::span<const double> x);

/// |LHS - RHS| of the quadrant expansion of chi-check(r_1 x_1, ..., r_d x_d) as a
/// signed sum over quadrants of integrals of the mixed derivative over
/// {t in Q(eps) : |t_j| >= r_j |x_j|}. The RHS integrals use tensor
/// Gauss-Legendre panels truncated where the integrand is below 1e-30.
/// Requires d in [1, 3] and every x_j != 0.
double quadrant_identity_check(const MollifierSpec& chi, std::span<const double> r,
                               std::span<const double> x);

/// Per-axis dilation radii, positive and strictly increasing.
class DilationGrid {
 public:
  explicit DilationGrid(std::vector<std::vector<double>> radii);
  /// 2^k for k = k_min..k_max on every axis.
  static DilationGrid dyadic(std::size_t d, int k_min, int k_max);

  std::size_t dimension() const noexcept { return radii_.size(); }
  const std::vector<double>& axis(std::size_t j) const { return radii_[j]; }
  std::size_t tuple_count() const noexcept;

 private:
  std::vector<std::vector<double>> radii_;
};

/// For each surface point xi: max over dilation tuples of |(f-hat * chi_r)(xi)|,
/// evaluated as the transform of f(x) chi-check(r_1 x_1, r_2 x_2) by direct sum.
/// Requires a 2-d signal. Throws BudgetExceeded past options.budget.
std::vector<double> maximal_restriction_field(const GridSignal& f, const SampledSurface& surface,
                                              const MollifierSpec& chi, const DilationGrid& dg,
                                              const mpz::FieldOptions& options = {});

/// ||field||_{L^q(sigma)} / ||f||_{L^p}.
double restriction_ratio(std::span<const double> field, const SampledSurface& surface,
                         const GridSignal& f, double p, double q);

/// Mean of fhat over grid nodes inside the ellipsoid sum_j ((eta_j - xi_j) / r_j)^2 <= 1.
/// Throws InvalidArgument when the ellipsoid is smaller than one cell, holds
/// no node, or leaves the grid.
cdouble ellipsoid_average(const GridSignal& fhat, std::span<const double> xi, std::span<const double> r);

/// Mean of |fhat(eta) - fhat(xi)| over the ellipsoid B_r(xi) for each r on a
/// path shrinking strictly in every coordinate. fhat is sampled on a local
/// window with spacing r_j / resolution.
std::vector<double> lebesgue_point_profile(const GridSignal& f, std::span<const double> xi,
                                           const std::vector<std::vector<double>>& path,
                                           std::size_t resolution = 16);

}  // namespace maxtrunc::restr
