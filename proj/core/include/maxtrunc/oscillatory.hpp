#pragma once

#include <utility>
#include <vector>

#include "maxtrunc/quadrature.hpp"
#include "maxtrunc/special_functions.hpp"

namespace maxtrunc::osc {

/// p.v. int_{-1}^{1} h(y) / y dy, evaluated as int_0^1 (h(y) - h(-y)) / y dy.
///
/// `omega` is the angular frequency of the fastest oscillation in h and sizes
/// the panels. Below y = 1e-4 / max(1, omega) the difference quotient is
/// frozen at its value there, a symmetric difference estimate of 2 h'(0).
PVResult pv_odd_singular(const ComplexFunction& h, const QuadratureConfig& cfg, double omega = 0.0);

/// int_0^U Si(u) / u du for U >= 0.
///
/// Quadrature up to U = 2 pi * 2e5; beyond that the value at that anchor plus
/// (pi / 2) ln(U / anchor), whose neglected tail is below 1e-11.
PVResult log_growth_integral(double upper, const QuadratureConfig& cfg);

/// p.v. int_{[-1,1]^2} exp(2 pi i lambda (x1 x2 + c1 x1 + c2 x2)) / (x1 x2) dx.
///
/// c1 = c2 = 0 uses 4i * log_growth_integral(2 pi lambda). Otherwise the inner
/// integral collapses to 2i Si(2 pi lambda (y + c1)) e^{2 pi i lambda c2 y}
/// and the outer one goes through pv_odd_singular.
PVResult pv_product_phase(double lambda, double c1, double c2, const QuadratureConfig& cfg);

struct GrowthFit {
  double slope;      ///< d magnitude / d ln(lambda)
  double intercept;
  double residual;   ///< max absolute residual
};

/// Least squares fit of magnitude against ln(lambda).
/// Needs at least 3 pairs, lambda > 0 strictly increasing, finite magnitudes.
GrowthFit log_growth_fit(const std::vector<std::pair<double, double>>& pairs);

}  // namespace maxtrunc::osc
