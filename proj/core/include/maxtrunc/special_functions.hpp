#pragma once

namespace maxtrunc::osc {

struct SineCosineIntegrals {
  double si;   ///< Si(x) = int_0^x sin t / t dt
  double cin;  ///< Cin(x) = int_0^x (1 - cos t) / t dt
};

/// Both integrals at once. Si is odd and Cin is even; x = ±inf is accepted.
/// Power series for |x| <= 3, continued fraction for E1(i|x|) beyond.
/// Throws InvalidArgument on NaN.
SineCosineIntegrals sine_cosine_integrals(double x);

double sine_integral(double x);
double entire_cosine_integral(double x);

inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace maxtrunc::osc
