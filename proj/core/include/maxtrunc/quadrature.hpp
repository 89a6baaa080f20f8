#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace maxtrunc::osc {

using cdouble = std::complex<double>;
using ComplexFunction = std::function<cdouble(double)>;

struct QuadratureConfig {
  double target_abs_tol = 1e-10;
  /// Bisections allowed beyond the initial panel layout.
  std::size_t max_subdivisions = 200000;
  /// Panels per period of the fastest phase, at least 8.
  double oscillation_resolution = 8.0;

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

struct PVResult {
  cdouble value;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Integral of h over [a, b].
///
/// The interval starts as panels no wider than 2 pi / (omega * resolution)
/// (one panel when omega = 0). Each panel uses the 15-point Kronrod rule with
/// its embedded 7-point Gauss error estimate; the worst panel is bisected until
/// the summed estimate meets the tolerance. Panel values are summed in
/// ascending position. Throws NonConvergence when bisections run out and
/// NumericalError on non-finite samples.
PVResult integrate_panels(const ComplexFunction& h, double a, double b, double omega,
                          const QuadratureConfig& cfg);

}  // namespace maxtrunc::osc
