#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "maxtrunc/oscillatory.hpp"

namespace maxtrunc::fef {

using osc::cdouble;
using osc::PVResult;
using osc::QuadratureConfig;

struct Point {
  double x1;
  double x2;
};

/// e^{2 pi i lambda x1 x2} on the closed square [-2, 2]^2, zero outside.
cdouble eval_f_lambda(double lambda, double x1, double x2);

/// Quadrant operator T_{r1,r2} applied to the pulse f_lambda at (x1, x2):
/// -(1 / 4 pi^2) p.v. int e^{2 pi i (r1 u + r2 v)} / (u v) f_lambda(x1 - u, x2 - v).
///
/// Requires lambda >= 0 and |x1|, |x2| != 2 (a support edge through the
/// singular lines). Each axis of the shifted box splits into a symmetric
/// core [-rho, rho] and an outer remainder; the core x core part goes through
/// pv_product_phase, core x outer parts collapse to Si, and outer x outer
/// uses the closed form of the inner integral.
PVResult t_quadrant(double lambda, double r1, double r2, double x1, double x2,
                    const QuadratureConfig& cfg);

/// Rectangular partial Fourier integral S_{R1,R2} f_lambda at (x1, x2), as the
/// signed sum of four quadrant operators. Requires R1, R2 > 0.
PVResult s_partial(double lambda, double big_r1, double big_r2, double x1, double x2,
                   const QuadratureConfig& cfg);

/// 8 sqrt(R1 R2) >= |S_{R1,R2} f_lambda| everywhere (Cauchy-Schwarz / Plancherel).
double young_bound(double big_r1, double big_r2);

struct TableRow {
  double x1;
  double x2;
  double lambda;
  double magnitude;
  double magnitude_over_log_lambda;
};

/// |S_{lambda x2, lambda x1} f_lambda (x1, x2)| for each point and lambda.
/// Points must lie in [2/3, 1]^2; lambdas must exceed 1 and increase strictly.
std::vector<TableRow> growth_table(const std::vector<Point>& points,
                                   const std::vector<double>& lambdas,
                                   const QuadratureConfig& cfg, std::size_t threads = 1);

struct FlatnessTable {
  std::vector<TableRow> rows;  ///< lambda column holds lambda' = m * lambda
  std::vector<std::optional<osc::GrowthFit>> fits;  ///< per point, when >= 3 multipliers
};

/// |S_{lambda' x2, lambda' x1} f_lambda (x1, x2)| for lambda' = m * lambda, m >= 3.
FlatnessTable flatness_table(const std::vector<Point>& points, double lambda,
                             const std::vector<double>& multipliers,
                             const QuadratureConfig& cfg, std::size_t threads = 1);

/// One index k of the sequences a_1 = 1, a_{k+1} = 2^{-k / a_k}, lambda_k = 1 / a_{k+1}.
/// Every a_k is a power of two 2^{-e_k}; values are stored through e_k.
struct SequenceTerm {
  std::size_t k = 0;
  double exponent = 0.0;      ///< e_k with a_k = 2^{-e_k}
  bool exponent_overflow = false;  ///< e_k itself is not a finite double
  double a = 0.0;
  bool a_underflow = false;   ///< a_k is below the smallest double
  double lambda_exponent = 0.0;    ///< e_{k+1}, so lambda_k = 2^{e_{k+1}}
  bool lambda_exponent_overflow = false;
  double lambda = 0.0;
  bool lambda_overflow = false;    ///< lambda_k exceeds the largest double
};

struct CounterexampleSequences {
  std::vector<SequenceTerm> terms;
  /// True when some requested value is flagged as not representable.
  bool any_flagged() const;
};

/// Requires K >= 1.
CounterexampleSequences counterexample_sequences(std::size_t count);

enum class TermMethod { quadrature, young_bound, inversion_limit, leading_log };

std::string to_string(TermMethod m);

struct SeriesTerm {
  std::size_t k = 0;
  double a = 0.0;
  double lambda = 0.0;
  double magnitude = 0.0;  ///< |S_{lambda_n x2, lambda_n x1} f_{lambda_k}|, or its bound
  double weighted = 0.0;   ///< a_k * magnitude
  TermMethod method = TermMethod::quadrature;
  bool a_underflow = false;
};

struct SeriesBound {
  std::size_t n = 0;
  Point point{};
  double dominant = 0.0;    ///< a_n |S f_{lambda_n}|
  double lower_sum = 0.0;   ///< sum over k < n
  double upper_sum = 0.0;   ///< sum over k > n
  double lower = 0.0;       ///< dominant - lower_sum - upper_sum
  double growth_constant = 0.0;  ///< |S f_{lambda_n}| / ln lambda_n
  double lower_constant = 0.0;   ///< max_{k<n} |S f_{lambda_k}|
  double upper_constant = 0.0;   ///< max_{k>n} |S f_{lambda_k}| / lambda_n
  std::vector<SeriesTerm> terms;
};

/// Termwise lower bound for a_n |S f_{lambda_n}| - sum_{k != n} a_k |S f_{lambda_k}| at
/// R = (lambda_n x2, lambda_n x1).
///
/// Terms with lambda_k up to `reach` use quadrature. Larger k > n use the Young
/// bound; for n = 3 the dominant term keeps only the leading logarithm of the
/// core region and terms k < n use the inversion limit |f| = 1. Throws
/// InvalidArgument when lambda_n is not representable or n > 3.
SeriesBound series_lower_bound(std::size_t n, Point point, const QuadratureConfig& cfg,
                               double reach = 1e5);

}  // namespace maxtrunc::fef
