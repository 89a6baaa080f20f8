#include "maxtrunc/special_functions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "maxtrunc/errors.hpp"

namespace maxtrunc::osc {

namespace {

constexpr double kSeriesLimit = 3.0;

SineCosineIntegrals series(double x) {
  const double x2 = x * x;
  double si = x;
  double t = x;
  for (int k = 1; k < 60; ++k) {
    t *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    const double term = t / (2.0 * k + 1.0);
    si += term;
    if (std::abs(term) < 1e-18 * std::abs(si)) break;
  }
  double u = 0.5 * x2;
  double cin = 0.5 * u;
  for (int k = 2; k < 60; ++k) {
    u *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
    const double term = u / (2.0 * k);
    cin += term;
    if (std::abs(term) < 1e-18 * std::abs(cin)) break;
  }
  return {si, cin};
}

// Modified Lentz evaluation of E1(ix) e^{ix}; x > kSeriesLimit.
SineCosineIntegrals continued_fraction(double x) {
  using C = std::complex<double>;
  constexpr double tiny = 1e-300;
  C b(1.0, x);
  C c(1.0 / tiny, 0.0);
  C d = 1.0 / b;
  C h = d;
  for (int i = 2; i < 100000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const C del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
  }
  h *= C(std::cos(x), -std::sin(x));
  const double ci = -h.real();
  const double si = std::numbers::pi / 2.0 + h.imag();
  return {si, kEulerGamma + std::log(x) - ci};
}

}  // namespace

SineCosineIntegrals sine_cosine_integrals(double x) {
  if (std::isnan(x)) throw InvalidArgument("sine/cosine integral of NaN");
  const double ax = std::abs(x);
  SineCosineIntegrals r;
  if (std::isinf(ax)) {
    r = {std::numbers::pi / 2.0, std::numeric_limits<double>::infinity()};
  } else if (ax <= kSeriesLimit) {
    r = series(ax);
  } else {
    r = continued_fraction(ax);
  }
  if (x < 0.0) r.si = -r.si;
  return r;
}

double sine_integral(double x) { return sine_cosine_integrals(x).si; }

double entire_cosine_integral(double x) { return sine_cosine_integrals(x).cin; }

}  // namespace maxtrunc::osc
