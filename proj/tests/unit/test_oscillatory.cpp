#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "maxtrunc/errors.hpp"
#include "maxtrunc/oscillatory.hpp"
#include "maxtrunc/special_functions.hpp"

using namespace maxtrunc;
using namespace maxtrunc::osc;

namespace {

constexpr double kPi = std::numbers::pi;

struct SiCinCase {
  double x;
  double si;
  double cin;
};

// mpmath at 25 digits: si(x) and euler + log(x) - ci(x).
const std::vector<SiCinCase> kSiCin = {
    {1.0, 0.94608307036718301, 0.23981174200056473},
    {kPi, 1.8519370519824662, 1.6482776387045075},
    {5.0, 1.5499312449446741, 2.3766833269922771},
    {10.0, 1.658347594218874, 2.9252571909000339},
    {50.0, 1.5516170724859359, 4.4948670566537952},
    {1e4, 1.5708915453859619, 9.7875865887944401},
};

// int_0^{6 pi} Si(u)/u du, mpmath.
constexpr double kLogGrowthAt6Pi = 5.5197436597670175;

// Tensor Gauss-Legendre (60 panels x 40 nodes per axis) on the folded
// integrand over [0,1]^2, numpy.
const cdouble kPhase_3_05_m07(8.956599500591316, 0.1387888232547651);
const cdouble kPhase_2_15_025(-11.6429638954278, -0.023411091955514);
const cdouble kPhase_5_14_m03(10.524684439390038, -0.003997252469485602);
const cdouble kPhase_1_0_0(0.0, 15.210729873438597);

}  // namespace

TEST(SineIntegral, FrozenValues) {
  for (const auto& c : kSiCin) {
    const auto v = sine_cosine_integrals(c.x);
    EXPECT_NEAR(v.si, c.si, 1e-12) << c.x;
    EXPECT_NEAR(v.cin, c.cin, 1e-12 * std::max(1.0, c.cin)) << c.x;
  }
}

TEST(SineIntegral, Limits) {
  EXPECT_EQ(sine_integral(0.0), 0.0);
  EXPECT_EQ(entire_cosine_integral(0.0), 0.0);
  EXPECT_NEAR(sine_integral(std::numeric_limits<double>::infinity()), kPi / 2, 1e-15);
  EXPECT_NEAR(sine_integral(1e12), kPi / 2, 1e-11);
  EXPECT_THROW(sine_integral(std::nan("")), InvalidArgument);
}

TEST(SineIntegral, OddAndEven) {
  for (double x : {0.3, 2.9, 3.1, 17.0}) {
    EXPECT_EQ(sine_integral(-x), -sine_integral(x));
    EXPECT_EQ(entire_cosine_integral(-x), entire_cosine_integral(x));
  }
}

TEST(SineIntegral, MonotoneUpToPiAndBounded) {
  const double peak = sine_integral(kPi);
  double prev = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double v = sine_integral(kPi * i / 1000.0);
    EXPECT_GT(v, prev);
    prev = v;
  }
  for (int i = 0; i < 5000; ++i) EXPECT_LE(sine_integral(0.01 * i * i), peak + 1e-15);
}

TEST(SineIntegral, ContinuousAcrossBranchSwitch) {
  const double below = std::nextafter(3.0, 0.0);
  const double above = std::nextafter(3.0, 4.0);
  EXPECT_NEAR(sine_integral(below), sine_integral(above), 1e-13);
  EXPECT_NEAR(entire_cosine_integral(below), entire_cosine_integral(above), 1e-13);
}

TEST(PvOddSingular, Examples) {
  const QuadratureConfig cfg;
  const auto even = pv_odd_singular([](double y) { return cdouble(std::cos(3 * y), y * y); }, cfg, 3.0);
  EXPECT_EQ(even.value, cdouble(0.0));
  EXPECT_GT(even.evaluations, 0U);

  const auto lin = pv_odd_singular([](double y) { return cdouble(y); }, cfg);
  EXPECT_NEAR(std::abs(lin.value - 2.0), 0.0, 1e-12);

  const auto s = pv_odd_singular([](double y) { return cdouble(std::sin(10 * y)); }, cfg, 10.0);
  EXPECT_NEAR(s.value.real(), 2 * sine_integral(10.0), 1e-9);
  EXPECT_LE(s.abs_error_estimate, cfg.target_abs_tol);
}

TEST(PvOddSingular, RejectsNonFiniteSamples) {
  const QuadratureConfig cfg;
  EXPECT_THROW(pv_odd_singular([](double y) { return cdouble(y > 0.5 ? std::nan("") : y); }, cfg),
               NumericalError);
}

TEST(Quadrature, ReportsNonConvergence) {
  QuadratureConfig cfg;
  cfg.target_abs_tol = 1e-15;
  cfg.max_subdivisions = 3;
  try {
    integrate_panels([](double y) { return cdouble(std::sqrt(y)); }, 0.0, 1.0, 0.0, cfg);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_NEAR(e.partial_real(), 2.0 / 3.0, 1e-4);
    EXPECT_GT(e.abs_error_estimate(), 0.0);
  }
  cfg.oscillation_resolution = 4.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(LogGrowthIntegral, FrozenValue) {
  const auto r = log_growth_integral(6 * kPi, QuadratureConfig{});
  EXPECT_NEAR(r.value.real(), kLogGrowthAt6Pi, 1e-10);
}

TEST(LogGrowthIntegral, AsymptoticBranchIsContinuous) {
  const QuadratureConfig cfg;
  const double anchor = 2 * kPi * 2e5;
  const double below = log_growth_integral(anchor * (1 - 1e-9), cfg).value.real();
  const double above = log_growth_integral(anchor * (1 + 1e-9), cfg).value.real();
  EXPECT_NEAR(below, above, 1e-8);
}

TEST(PvProductPhase, CenteredMatchesTensorOracle) {
  const QuadratureConfig cfg;
  const auto at3 = pv_product_phase(3.0, 0.0, 0.0, cfg);
  EXPECT_EQ(at3.value.real(), 0.0);
  EXPECT_NEAR(at3.value.imag(), 4 * kLogGrowthAt6Pi, 1e-9);
  EXPECT_NEAR(std::abs(pv_product_phase(1.0, 0.0, 0.0, cfg).value - kPhase_1_0_0), 0.0, 1e-9);
}

TEST(PvProductPhase, ShiftedMatchesTensorOracle) {
  const QuadratureConfig cfg;
  EXPECT_NEAR(std::abs(pv_product_phase(3.0, 0.5, -0.7, cfg).value - kPhase_3_05_m07), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(pv_product_phase(2.0, 1.5, 0.25, cfg).value - kPhase_2_15_025), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(pv_product_phase(5.0, 1.4, -0.3, cfg).value - kPhase_5_14_m03), 0.0, 1e-8);
}

TEST(PvProductPhase, VanishesAsFrequencyShrinks) {
  const QuadratureConfig cfg;
  EXPECT_LT(std::abs(pv_product_phase(1e-6, 0.0, 0.0, cfg).value), 1e-4);
  EXPECT_LT(std::abs(pv_product_phase(1e-6, 0.7, -0.2, cfg).value), 1e-4);
  EXPECT_THROW(pv_product_phase(0.0, 0.0, 0.0, cfg), InvalidArgument);
}

TEST(PvProductPhase, ReflectionSymmetries) {
  const QuadratureConfig cfg;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  for (int i = 0; i < 6; ++i) {
    const double c1 = c(rng);
    const double c2 = c(rng);
    const double lam = 2.0 + i;
    const cdouble v = pv_product_phase(lam, c1, c2, cfg).value;
    // x1 -> -x1 flips the phase and the kernel sign.
    EXPECT_NEAR(std::abs(v + std::conj(pv_product_phase(lam, c1, -c2, cfg).value)), 0.0, 1e-8);
    // (x1, x2) -> (-x1, -x2) and the swap of axes leave the kernel unchanged.
    EXPECT_NEAR(std::abs(v - pv_product_phase(lam, -c1, -c2, cfg).value), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(v - pv_product_phase(lam, c2, c1, cfg).value), 0.0, 1e-8);
  }
}

TEST(PvProductPhase, LogGrowthSlopeNearTwoPi) {
  const QuadratureConfig cfg;
  std::vector<std::pair<double, double>> pairs;
  for (double lam : {1e2, 1e3, 1e4, 1e5}) pairs.emplace_back(lam, std::abs(pv_product_phase(lam, 0, 0, cfg).value));
  const auto fit = log_growth_fit(pairs);
  EXPECT_LT(std::abs(fit.slope - 2 * kPi) / (2 * kPi), 0.05);
}

TEST(PvProductPhase, ShiftedPhaseStaysBounded) {
  const QuadratureConfig cfg;
  for (auto [c1, c2] : {std::pair{4.0 / 3.0, 0.0}, {0.0, -1.5}, {2.0, 0.3}, {-1.4, -1.4}}) {
    std::vector<std::pair<double, double>> pairs;
    for (double lam : {10.0, 100.0, 1000.0}) pairs.emplace_back(lam, std::abs(pv_product_phase(lam, c1, c2, cfg).value));
    EXPECT_LT(std::abs(log_growth_fit(pairs).slope), 0.2 * 2 * kPi) << c1 << " " << c2;
  }
}

TEST(LogGrowthFit, Examples) {
  std::vector<std::pair<double, double>> line;
  for (double lam : {2.0, 5.0, 30.0, 400.0}) line.emplace_back(lam, 2 * std::log(lam) + 1);
  const auto a = log_growth_fit(line);
  EXPECT_NEAR(a.slope, 2.0, 1e-12);
  EXPECT_NEAR(a.intercept, 1.0, 1e-11);
  EXPECT_NEAR(a.residual, 0.0, 1e-11);

  const auto b = log_growth_fit({{1.0, 3.0}, {2.0, 3.0}, {9.0, 3.0}});
  EXPECT_NEAR(b.slope, 0.0, 1e-14);

  EXPECT_THROW(log_growth_fit({{1.0, 3.0}, {2.0, 3.0}}), InvalidArgument);
  EXPECT_THROW(log_growth_fit({{1.0, 3.0}, {1.0, 3.0}, {2.0, 1.0}}), InvalidArgument);
  EXPECT_THROW(log_growth_fit({{1.0, 3.0}, {2.0, std::nan("")}, {3.0, 1.0}}), InvalidArgument);
}
