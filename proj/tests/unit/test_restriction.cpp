#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "maxtrunc/errors.hpp"
#include "maxtrunc/fourier.hpp"
#include "maxtrunc/mpz_max.hpp"
#include "maxtrunc/restriction.hpp"

using namespace maxtrunc;
using namespace maxtrunc::restr;

namespace {

constexpr double kPi = std::numbers::pi;

GridSignal gaussian(const GridSpec& x, double scale = 1.0) {
  std::vector<cdouble> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < x.dimension(); ++a) {
      const double c = x.coordinate(a, x.index(i, a)) / scale;
      r2 += c * c;
    }
    v[i] = std::exp(-kPi * r2);
  }
  return GridSignal(x, std::move(v));
}

// Least squares slope of log(dev) against log(max r).
double fitted_order(const std::vector<std::vector<double>>& path, const std::vector<double>& dev) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < path.size(); ++i) {
    double m = 0.0;
    for (double r : path[i]) m = std::max(m, r);
    pts.emplace_back(std::log(m), std::log(dev[i]));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [a, b] : pts) {
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  const double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST(Surface, ParabolaSamples) {
  const auto s = SampledSurface::parabola();
  ASSERT_EQ(s.points.size(), 201U);
  EXPECT_EQ(s.points.front()[0], -1.0);
  EXPECT_EQ(s.points.front()[1], 1.0);
  double total = 0.0;
  for (double w : s.weights) {
    EXPECT_GT(w, 0.0);
    total += w;
  }
  EXPECT_NEAR(total, 2.0, 1e-14);
  EXPECT_THROW(SampledSurface::parabola(1), InvalidArgument);
}

TEST(Mollifier, DilationExamples) {
  const MollifierSpec chi;
  const std::vector<double> ones{1.0, 1.0};
  const std::vector<double> x{0.3, -0.7};
  EXPECT_EQ(dilate_mollifier(chi, ones, x), mollifier(chi, x));
  EXPECT_NEAR(mollifier(chi, x), std::exp(-kPi * 0.58), 1e-15);
  const std::vector<double> bad{1.0, 0.0};
  EXPECT_THROW(dilate_mollifier(chi, bad, x), InvalidArgument);
}

TEST(Mollifier, DilationPreservesMass) {
  const MollifierSpec chi;
  using boost::math::quadrature::gauss_kronrod;
  for (auto r : {std::vector<double>{0.3, 2.0}, {0.5, 0.25}, {3.0, 9.0}}) {
    auto inner = [&](double x1) {
      auto g = [&](double x2) {
        const std::vector<double> x{x1, x2};
        return dilate_mollifier(chi, r, x);
      };
      return gauss_kronrod<double, 61>::integrate(g, -8 * r[1], 8 * r[1], 10, 1e-13);
    };
    const double mass = gauss_kronrod<double, 61>::integrate(inner, -8 * r[0], 8 * r[0], 10, 1e-13);
    EXPECT_NEAR(mass, 1.0, 1e-8);
  }
}

// sup_r 2 pi^2 r^2 e^{-pi r^2} (1 + r)^3 = 10.21615433751128 (scipy), using |t1 t2| <= r^2 / 2.
TEST(Mollifier, MixedDerivativeDecay) {
  const MollifierSpec chi;
  double worst = 0.0;
  for (double a = -20.0; a <= 20.0; a += 0.25) {
    for (double b = -20.0; b <= 20.0; b += 0.25) {
      const std::vector<double> t{a, b};
      const double r = std::hypot(a, b);
      worst = std::max(worst, std::abs(mollifier_mixed_derivative(chi, t)) * std::pow(1 + r, 3.0));
    }
  }
  EXPECT_LE(worst, 10.21615433751128);
}

TEST(QuadrantIdentity, OneDimensionalGaussian) {
  const MollifierSpec chi;
  const std::vector<double> r{1.0};
  const std::vector<double> x{0.5};
  EXPECT_NEAR(mollifier_inverse_ft(chi, std::vector<double>{0.5}), std::exp(-kPi / 4), 1e-15);
  EXPECT_LT(quadrant_identity_check(chi, r, x), 1e-8);
}

TEST(QuadrantIdentity, RandomTwoDimensionalDraws) {
  const MollifierSpec chi;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> xs(-2.0, 2.0);
  for (int i = 0; i < 30; ++i) {
    const std::vector<double> r{std::exp(logr(rng)), std::exp(logr(rng))};
    const std::vector<double> x{xs(rng), xs(rng)};
    EXPECT_LT(quadrant_identity_check(chi, r, x), 1e-6) << x[0] << " " << x[1];
  }
}

TEST(QuadrantIdentity, ThreeDimensions) {
  const MollifierSpec chi;
  const std::vector<double> r{0.7, 1.3, 0.4};
  const std::vector<double> x{0.2, -0.5, 1.1};
  EXPECT_LT(quadrant_identity_check(chi, r, x), 1e-6);
}

TEST(QuadrantIdentity, Preconditions) {
  const MollifierSpec chi;
  const std::vector<double> r{1.0, 1.0};
  EXPECT_THROW(quadrant_identity_check(chi, r, std::vector<double>{0.0, 0.4}), InvalidArgument);
  const std::vector<double> r4(4, 1.0);
  EXPECT_THROW(quadrant_identity_check(chi, r4, std::vector<double>(4, 0.5)), InvalidArgument);
}

TEST(MaximalRestriction, ZeroSignal) {
  const auto x = GridSpec::centered(2, 16, 0.25);
  const auto field = maximal_restriction_field(GridSignal::zeros(x), SampledSurface::parabola(21),
                                               MollifierSpec{}, DilationGrid::dyadic(2, -2, 0));
  for (double v : field) EXPECT_EQ(v, 0.0);
}

TEST(MaximalRestriction, TinyDilationRecoversTransform) {
  const auto x = GridSpec::centered(2, 32, 0.25);
  const auto f = mpz::smooth_random_signal(x, 13);
  const auto surf = SampledSurface::parabola(11);
  const DilationGrid dg({{1e-3}, {1e-3}});
  const auto field = maximal_restriction_field(f, surf, MollifierSpec{}, dg);
  for (std::size_t i = 0; i < surf.points.size(); ++i) {
    const double exact = std::abs(grid::fourier_at(f, surf.points[i]));
    EXPECT_NEAR(field[i], exact, 1e-4 * (1.0 + exact));
  }
}

TEST(MaximalRestriction, DominatesEachTupleAndIsMonotone) {
  const auto x = GridSpec::centered(2, 32, 0.25);
  const auto f = mpz::smooth_random_signal(x, 14);
  const auto surf = SampledSurface::parabola(21);
  const MollifierSpec chi;
  const auto dg = DilationGrid::dyadic(2, -2, 1);
  const auto field = maximal_restriction_field(f, surf, chi, dg);
  for (double a : dg.axis(0)) {
    for (double b : dg.axis(1)) {
      const auto single = maximal_restriction_field(f, surf, chi, DilationGrid({{a}, {b}}));
      for (std::size_t i = 0; i < field.size(); ++i) EXPECT_GE(field[i], single[i]);
    }
  }
  const auto wider = maximal_restriction_field(f, surf, chi, DilationGrid::dyadic(2, -3, 2));
  for (std::size_t i = 0; i < field.size(); ++i) EXPECT_GE(wider[i], field[i]);
}

TEST(MaximalRestriction, Preconditions) {
  const auto surf = SampledSurface::parabola(21);
  EXPECT_THROW(maximal_restriction_field(GridSignal::zeros(GridSpec::centered(1, 16, 0.25)), surf,
                                         MollifierSpec{}, DilationGrid::dyadic(1, 0, 1)),
               InvalidArgument);
  mpz::FieldOptions opts;
  opts.budget = 10;
  EXPECT_THROW(maximal_restriction_field(GridSignal::zeros(GridSpec::centered(2, 16, 0.25)), surf,
                                         MollifierSpec{}, DilationGrid::dyadic(2, 0, 1), opts),
               BudgetExceeded);
  EXPECT_THROW(DilationGrid({{2.0, 1.0}}), InvalidArgument);
}

TEST(MaximalRestriction, RatioStableUnderRefinement) {
  const auto coarse = GridSpec::centered(2, 32, 0.25);
  const auto fine = GridSpec::centered(2, 64, 0.125);
  const auto surf = SampledSurface::parabola();
  const auto dg = DilationGrid::dyadic(2, -2, 1);
  for (std::uint64_t seed : {3U, 4U}) {
    const auto fc = mpz::smooth_random_signal(coarse, seed);
    const auto ff = mpz::smooth_random_signal(fine, seed);
    const double a = restriction_ratio(maximal_restriction_field(fc, surf, MollifierSpec{}, dg), surf, fc, 1.2, 2.0);
    const double b = restriction_ratio(maximal_restriction_field(ff, surf, MollifierSpec{}, dg), surf, ff, 1.2, 2.0);
    EXPECT_GT(a, 0.0);
    EXPECT_LT(std::max(a, b) / std::min(a, b), 3.0);
  }
}

TEST(EllipsoidAverage, ConstantField) {
  const auto g = GridSpec::centered(2, 41, 0.05);
  const GridSignal c(g, std::vector<cdouble>(g.size(), cdouble(2.0, -1.0)));
  const std::vector<double> xi{0.1, -0.2};
  const std::vector<double> r{0.4, 0.3};
  EXPECT_NEAR(std::abs(ellipsoid_average(c, xi, r) - cdouble(2.0, -1.0)), 0.0, 1e-14);
}

// Mean of e^{-pi |eta|^2} over a disc of radius eps is 1 - pi eps^2 / 2 + O(eps^4).
TEST(EllipsoidAverage, GaussianSecondOrder) {
  const std::vector<double> xi{0.0, 0.0};
  double prev_err = 0.0;
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto g = GridSpec::centered(2, 201, eps / 40.0);
    const auto fhat = gaussian(g);
    const std::vector<double> r{eps, eps};
    const double err = std::abs(ellipsoid_average(fhat, xi, r) - 1.0);
    EXPECT_NEAR(err, kPi * eps * eps / 2, 0.1 * kPi * eps * eps / 2);
    if (prev_err > 0.0) {
      EXPECT_NEAR(prev_err / err, 4.0, 0.5);
    }
    prev_err = err;
  }
}

TEST(EllipsoidAverage, AnisotropicLimit) {
  const std::vector<double> xi{0.0, 0.0};
  double prev = 1.0;
  for (double eps : {0.4, 0.2, 0.1}) {
    const std::vector<double> r{eps, eps * eps};
    const auto fhat = gaussian(GridSpec({401, 401}, {eps / 100.0, eps * eps / 100.0},
                                        {-2.0 * eps, -2.0 * eps * eps}));
    const double err = std::abs(ellipsoid_average(fhat, xi, r) - 1.0);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(EllipsoidAverage, Preconditions) {
  const auto g = GridSpec::centered(2, 21, 0.1);
  const GridSignal c(g, std::vector<cdouble>(g.size(), 1.0));
  const std::vector<double> xi{0.0, 0.0};
  EXPECT_THROW(ellipsoid_average(c, xi, std::vector<double>{0.01, 0.01}), InvalidArgument);
  EXPECT_THROW(ellipsoid_average(c, xi, std::vector<double>{5.0, 0.5}), InvalidArgument);
  EXPECT_THROW(ellipsoid_average(c, xi, std::vector<double>{0.5}), InvalidArgument);
}

// Continuum oracle: mean of |e^{-pi |eta|^2} - e^{-pi |xi|^2}| over the ellipse,
// polar Gauss-Legendre (numpy, 200 radial x 4000 angular nodes).
TEST(LebesguePoint, GaussianIsotropicMatchesContinuum) {
  const auto x = GridSpec::centered(2, 32, 0.25);
  const std::vector<double> xi{0.3, 0.09};
  std::vector<std::vector<double>> path;
  for (double t : {0.2, 0.1, 0.05, 0.025, 0.0125}) path.push_back({t, t});
  const std::vector<double> oracle{0.11871935049517936, 0.06084785105839847, 0.030619193881768415,
                                   0.015334301863115001, 0.007670248318037598};
  const auto dev = lebesgue_point_profile(gaussian(x), xi, path);
  ASSERT_EQ(dev.size(), oracle.size());
  for (std::size_t i = 0; i < dev.size(); ++i) EXPECT_NEAR(dev[i], oracle[i], 1e-2 * oracle[i]);
  for (std::size_t i = 1; i < dev.size(); ++i) EXPECT_LT(dev[i], dev[i - 1]);
  const double last = std::log(dev[3] / dev[4]) / std::log(2.0);
  EXPECT_NEAR(last, 1.0, 1e-2);
  EXPECT_NEAR(fitted_order(path, dev), 0.9892719846174289, 5e-3);
}

TEST(LebesguePoint, GaussianAnisotropicMatchesContinuum) {
  const auto x = GridSpec::centered(2, 32, 0.25);
  const std::vector<double> xi{0.3, 0.09};
  std::vector<std::vector<double>> path;
  for (double t : {0.4, 0.2, 0.1, 0.05, 0.025}) path.push_back({t, t * t});
  const std::vector<double> oracle{0.20018539465844637, 0.1130116988760549, 0.058209868128164324,
                                   0.029319424091055715, 0.014686558384736067};
  const auto dev = lebesgue_point_profile(gaussian(x), xi, path);
  ASSERT_EQ(dev.size(), oracle.size());
  for (std::size_t i = 0; i < dev.size(); ++i) EXPECT_NEAR(dev[i], oracle[i], 1e-2 * oracle[i]);
  for (std::size_t i = 1; i < dev.size(); ++i) EXPECT_LT(dev[i], dev[i - 1]);
  EXPECT_NEAR(fitted_order(path, dev), 0.9484080371596914, 5e-3);
}

TEST(LebesguePoint, ConstantTransform) {
  const auto x = GridSpec::centered(2, 16, 0.25);
  auto f = GridSignal::zeros(x);
  f.values[8 * 16 + 8] = 1.0 / x.cell_volume();
  const std::vector<double> xi{0.3, 0.09};
  const auto dev = lebesgue_point_profile(f, xi, {{0.2, 0.2}, {0.1, 0.1}});
  for (double v : dev) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(lebesgue_point_profile(f, xi, {{0.2, 0.2}, {0.2, 0.1}}), InvalidArgument);
}
