#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace maxtrunc {

using cdouble = std::complex<double>;

/// Lebesgue exponent in [1, inf]. Infinity is stored exactly.
class Exponent {
 public:
  /// Throws InvalidArgument unless value >= 1 (NaN rejected, +inf accepted).
  explicit Exponent(double value);

  static Exponent infinity() noexcept;

  double value() const noexcept { return value_; }
  bool is_infinite() const noexcept;
  /// 1/p, with 1/inf = 0.
  double reciprocal() const noexcept;

  friend bool operator==(Exponent a, Exponent b) noexcept { return a.value_ == b.value_; }

 private:
  struct Unchecked {};
  Exponent(double value, Unchecked) noexcept : value_(value) {}
  double value_;
};

/// p' with 1/p + 1/p' = 1. The conjugate of 1 is infinity and vice versa.
Exponent holder_conjugate(Exponent p) noexcept;

/// Finite measure space: n atoms with nonnegative weights, at least one positive.
/// Copies share the immutable weight storage.
class WeightedSpace {
 public:
  explicit WeightedSpace(std::vector<double> weights);
  static WeightedSpace uniform(std::size_t n, double weight = 1.0);

  std::size_t size() const noexcept { return weights_->size(); }
  double weight(std::size_t i) const { return (*weights_)[i]; }
  std::span<const double> weights() const noexcept { return *weights_; }

  /// True when both spaces have identical weights.
  bool same_as(const WeightedSpace& other) const noexcept;

 private:
  std::shared_ptr<const std::vector<double>> weights_;
};

/// Complex function on the atoms of a WeightedSpace.
class Signal {
 public:
  Signal(WeightedSpace space, std::vector<cdouble> values);
  static Signal zeros(WeightedSpace space);

  const WeightedSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cdouble> values() const noexcept { return values_; }
  std::span<cdouble> values() noexcept { return values_; }
  cdouble operator[](std::size_t i) const { return values_[i]; }
  cdouble& operator[](std::size_t i) { return values_[i]; }

 private:
  WeightedSpace space_;
  std::vector<cdouble> values_;
};

/// Integral kernel K(x, y) from domain (y) to codomain (x), stored row-major
/// with one row per codomain atom.
///
/// apply_kernel(K, f)(x) = sum_y K(x, y) f(y) nu_y.
class Kernel {
 public:
  Kernel(WeightedSpace domain, WeightedSpace codomain, std::vector<cdouble> entries);
  static Kernel identity(const WeightedSpace& space);
  static Kernel zero(WeightedSpace domain, WeightedSpace codomain);

  const WeightedSpace& domain() const noexcept { return domain_; }
  const WeightedSpace& codomain() const noexcept { return codomain_; }
  std::size_t rows() const noexcept { return codomain_.size(); }
  std::size_t cols() const noexcept { return domain_.size(); }

  cdouble operator()(std::size_t x, std::size_t y) const { return entries_[x * cols() + y]; }
  std::span<const cdouble> row(std::size_t x) const {
    return std::span<const cdouble>(entries_).subspan(x * cols(), cols());
  }
  std::span<const cdouble> entries() const noexcept { return entries_; }

  /// alpha * K.
  Kernel scaled(cdouble alpha) const;

 private:
  WeightedSpace domain_;
  WeightedSpace codomain_;
  std::vector<cdouble> entries_;
};

Signal apply_kernel(const Kernel& k, const Signal& f);

/// Weighted L^p norm. For p = inf the max runs over atoms with positive weight.
double lp_norm(std::span<const cdouble> values, std::span<const double> weights, Exponent p);
double lp_norm(const Signal& f, Exponent p);

/// sum_y |f(y)|^p nu_y for finite p.
double lp_mass(std::span<const cdouble> values, std::span<const double> weights, double p);

}  // namespace maxtrunc
