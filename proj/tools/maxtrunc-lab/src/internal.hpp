#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "maxtrunc/lab/experiment.hpp"
#include "maxtrunc/spaces.hpp"

namespace maxtrunc::lab {

struct Context {
  const json& params;
  std::uint64_t seed;
  std::size_t threads;
  RunReport& report;
};

// Parameter readers; each throws ConfigError naming the parameter.
double number(const json& p, const std::string& name, double lo, double hi);
double positive(const json& p, const std::string& name);
std::size_t count(const json& p, const std::string& name, std::size_t lo, std::size_t hi);
long integer(const json& p, const std::string& name, long lo, long hi);
Exponent exponent(const json& p, const std::string& name);
std::vector<double> numbers(const json& p, const std::string& name, std::size_t min_len);
std::vector<std::pair<double, double>> pairs(const json& p, const std::string& name, std::size_t min_len);
bool flag(const json& p, const std::string& name);
std::string choice(const json& p, const std::string& name, const std::vector<std::string>& allowed);

// Shortest round-trip decimal text.
std::string num(double v);
std::string num(std::size_t v);
std::string num(Exponent p);
json exponent_json(Exponent p);

/// Generator for item `index` of a run with `seed`, independent of item order.
std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index);

/// Least squares slope of ln(y) against ln(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series, bool log_x, bool log_y);

/// Row-major values with rows along y, drawn with a grey ramp.
std::string heatmap(const std::string& title, std::size_t nx, std::size_t ny,
                    const std::vector<double>& values, double x0, double x1, double y0, double y1);

/// Chirp pulse convolved with the product Dirichlet kernel, tensor Gauss-Legendre.
cdouble dirichlet_convolution(double lambda, double big_r1, double big_r2, double x1, double x2);

/// Product-phase principal value folded onto [0, 1]^2, tensor Gauss-Legendre.
cdouble product_phase_brute_force(double lambda, double c1, double c2);

void run_ck_verify(Context& ctx);
void run_ck_certificate(Context& ctx);
void run_mpz_max(Context& ctx);
void run_mpz_converge(Context& ctx);
void run_fefferman_growth(Context& ctx);
void run_fefferman_flatness(Context& ctx);
void run_oscint(Context& ctx);
void run_restriction_max(Context& ctx);
void run_lebesgue_profile(Context& ctx);
void run_quadrant_identity(Context& ctx);

}  // namespace maxtrunc::lab
