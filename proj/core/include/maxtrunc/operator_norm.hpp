#pragma once

#include <cstddef>
#include <cstdint>

#include "maxtrunc/spaces.hpp"

namespace maxtrunc {

/// Exact ||K||_{p->q} in the extreme-point regimes p = 1 or q = inf.
/// p = 1: largest L^q(mu) column norm; q = inf: largest L^{p'}(nu) row norm.
/// Throws InvalidArgument for any other pair.
double norm_exact_endpoint(const Kernel& k, Exponent p, Exponent q);

/// || x -> ||K(x, .)||_{L^{p'}(nu)} ||_{L^q(mu)}, an upper bound on ||K||_{p->q}.
double holder_upper_bound(const Kernel& k, Exponent p, Exponent q);

/// Positively homogeneous sublinear map between weighted spaces.
class SublinearOperator {
 public:
  virtual ~SublinearOperator() = default;

  virtual const WeightedSpace& domain() const = 0;
  virtual const WeightedSpace& codomain() const = 0;
  virtual Signal apply(const Signal& f) const = 0;

  /// A kernel L with |L f| = |apply(f)| at this f and |L g| <= |apply(g)|
  /// pointwise for every g.
  virtual Kernel linearize(const Signal& f) const = 0;
};

/// SublinearOperator view of a linear kernel.
class LinearOperator final : public SublinearOperator {
 public:
  explicit LinearOperator(Kernel k) : kernel_(std::move(k)) {}

  const WeightedSpace& domain() const override { return kernel_.domain(); }
  const WeightedSpace& codomain() const override { return kernel_.codomain(); }
  Signal apply(const Signal& f) const override { return apply_kernel(kernel_, f); }
  Kernel linearize(const Signal&) const override { return kernel_; }

 private:
  Kernel kernel_;
};

struct AscentConfig {
  std::size_t restarts = 8;
  std::size_t steps = 200;
  std::uint64_t seed = 0;
  /// c in the step size c / sqrt(k).
  double step_scale = 0.5;
  /// A restart stops early after this many steps without relative gain 1e-13.
  std::size_t patience = 25;
  std::size_t threads = 1;
};

struct AscentResult {
  double ratio;
  Signal witness;
};

/// Multi-start ascent of ||op f||_q / ||f||_p over the unit L^p sphere.
///
/// Every atom vertex delta_y is scored first. Each random restart then
/// alternates between a dual power step and a normalized subgradient step
/// (size step_scale / sqrt(k)), keeping whichever scores higher. All scores
/// are evaluated through op itself, so the result is a lower bound.
/// Restart r draws from its own generator seeded by (seed, r); ties between
/// restarts resolve to the lowest index.
AscentResult norm_lower_bound_ascent(const SublinearOperator& op, Exponent p, Exponent q,
                                     const AscentConfig& config);

}  // namespace maxtrunc
