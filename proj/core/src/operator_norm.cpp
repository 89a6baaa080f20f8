#include "maxtrunc/operator_norm.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "maxtrunc/errors.hpp"
#include "maxtrunc/parallel.hpp"

namespace maxtrunc {

double norm_exact_endpoint(const Kernel& k, Exponent p, Exponent q) {
  const auto mu = k.codomain().weights();
  const auto nu = k.domain().weights();
  if (p.value() == 1.0) {
    double best = 0.0;
    std::vector<cdouble> column(k.rows());
    for (std::size_t y = 0; y < k.cols(); ++y) {
      if (nu[y] <= 0.0) continue;
      for (std::size_t x = 0; x < k.rows(); ++x) column[x] = k(x, y);
      best = std::max(best, lp_norm(column, mu, q));
    }
    return best;
  }
  if (q.is_infinite()) {
    const Exponent pc = holder_conjugate(p);
    double best = 0.0;
    for (std::size_t x = 0; x < k.rows(); ++x) {
      if (mu[x] <= 0.0) continue;
      best = std::max(best, lp_norm(k.row(x), nu, pc));
    }
    return best;
  }
  throw InvalidArgument("exact operator norm needs p = 1 or q = inf");
}

double holder_upper_bound(const Kernel& k, Exponent p, Exponent q) {
  const Exponent pc = holder_conjugate(p);
  std::vector<cdouble> row_norms(k.rows());
  for (std::size_t x = 0; x < k.rows(); ++x) {
    row_norms[x] = lp_norm(k.row(x), k.domain().weights(), pc);
  }
  return lp_norm(row_norms, k.codomain().weights(), q);
}

namespace {

// z |z|^{r-2}; r = 1 gives the unit phase of z.
cdouble duality_map(cdouble z, double r) {
  const double a = std::abs(z);
  if (a == 0.0) return 0.0;
  if (r == 2.0) return z;
  if (r == 1.0) return z / a;
  return z * std::pow(a, r - 2.0);
}

std::size_t argmax_abs(std::span<const cdouble> v, std::span<const double> w) {
  std::size_t best = v.size();
  double best_abs = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] <= 0.0) continue;
    const double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

class AscentRun {
 public:
  AscentRun(const SublinearOperator& op, Exponent p, Exponent q)
      : op_(op), p_(p), q_(q), pc_(holder_conjugate(p)),
        nu_(op.domain().weights()), mu_(op.codomain().weights()) {}

  double score(const Signal& f) const {
    const double den = lp_norm(f, p_);
    if (den == 0.0) return 0.0;
    return lp_norm(op_.apply(f), q_) / den;
  }

  bool normalize(std::vector<cdouble>& f) const {
    const double n = lp_norm(f, nu_, p_);
    if (!(n > 0.0) || !std::isfinite(n)) return false;
    for (auto& z : f) z /= n;
    return true;
  }

  // v_y = sum_x conj(L(x,y)) mu_x psi_q(u_x); q = inf concentrates on the argmax row.
  std::vector<cdouble> dual_pullback(const Kernel& lin, std::span<const cdouble> u) const {
    std::vector<cdouble> v(lin.cols());
    if (q_.is_infinite()) {
      const std::size_t xs = argmax_abs(u, mu_);
      if (xs == u.size() || u[xs] == 0.0) return v;
      const cdouble phase = u[xs] / std::abs(u[xs]);
      for (std::size_t y = 0; y < v.size(); ++y) v[y] = std::conj(lin(xs, y)) * phase;
      return v;
    }
    for (std::size_t x = 0; x < lin.rows(); ++x) {
      if (mu_[x] <= 0.0) continue;
      const cdouble w = duality_map(u[x], q_.value()) * mu_[x];
      if (w == 0.0) continue;
      const auto row = lin.row(x);
      for (std::size_t y = 0; y < v.size(); ++y) v[y] += std::conj(row[y]) * w;
    }
    return v;
  }

  std::optional<std::vector<cdouble>> power_step(std::span<const cdouble> v) const {
    std::vector<cdouble> g(v.size());
    if (pc_.is_infinite()) {
      const std::size_t ys = argmax_abs(v, nu_);
      if (ys == v.size() || v[ys] == 0.0) return std::nullopt;
      g[ys] = v[ys] / std::abs(v[ys]);
    } else {
      for (std::size_t y = 0; y < v.size(); ++y) {
        if (nu_[y] > 0.0) g[y] = duality_map(v[y], pc_.value());
      }
    }
    if (!normalize(g)) return std::nullopt;
    return g;
  }

  std::optional<std::vector<cdouble>> subgradient_step(const std::vector<cdouble>& f,
                                                       std::span<const cdouble> u,
                                                       std::span<const cdouble> v,
                                                       double tau) const {
    const double num = lp_norm(u, mu_, q_);
    const double den = lp_norm(f, nu_, p_);
    if (!(num > 0.0) || !(den > 0.0)) return std::nullopt;
    const double num_scale = q_.is_infinite() ? 1.0 : std::pow(num, 1.0 - q_.value());
    const double den_scale = std::pow(den, 1.0 - p_.value());
    std::vector<cdouble> grad(f.size());
    double grad_norm2 = 0.0;
    double f_norm2 = 0.0;
    for (std::size_t y = 0; y < f.size(); ++y) {
      if (nu_[y] <= 0.0) continue;
      const cdouble d_num = nu_[y] * v[y] * num_scale;
      const cdouble d_den = nu_[y] * duality_map(f[y], p_.value()) * den_scale;
      grad[y] = (d_num * den - num * d_den) / (den * den);
      grad_norm2 += std::norm(grad[y]);
      f_norm2 += std::norm(f[y]);
    }
    if (!(grad_norm2 > 0.0)) return std::nullopt;
    const double step = tau * std::sqrt(f_norm2 / grad_norm2);
    std::vector<cdouble> g(f);
    for (std::size_t y = 0; y < g.size(); ++y) g[y] += step * grad[y];
    if (!normalize(g)) return std::nullopt;
    return g;
  }

  AscentResult restart(std::uint64_t seed, std::size_t index, const AscentConfig& cfg) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::vector<cdouble> f(nu_.size());
    for (std::size_t y = 0; y < f.size(); ++y) {
      const double re = normal(rng);
      const double im = normal(rng);
      if (nu_[y] > 0.0) f[y] = cdouble(re, im);
    }
    if (!normalize(f)) f.assign(f.size(), 0.0);

    const WeightedSpace& space = op_.domain();
    double best = score(Signal(space, f));
    std::vector<cdouble> best_f = f;
    std::size_t stall = 0;
    for (std::size_t k = 1; k <= cfg.steps; ++k) {
      const Signal current(space, f);
      const Kernel lin = op_.linearize(current);
      const Signal u = apply_kernel(lin, current);
      const std::vector<cdouble> v = dual_pullback(lin, u.values());

      double next_score = -1.0;
      std::vector<cdouble> next;
      if (auto a = power_step(v)) {
        next_score = score(Signal(space, *a));
        next = std::move(*a);
      }
      const double tau = cfg.step_scale / std::sqrt(static_cast<double>(k));
      if (auto b = subgradient_step(f, u.values(), v, tau)) {
        const double sb = score(Signal(space, *b));
        if (sb > next_score) {
          next_score = sb;
          next = std::move(*b);
        }
      }
      if (next.empty()) break;
      f = std::move(next);
      if (next_score > best * (1.0 + 1e-13)) {
        best = next_score;
        best_f = f;
        stall = 0;
      } else if (++stall >= cfg.patience) {
        break;
      }
    }
    return AscentResult{best, Signal(space, std::move(best_f))};
  }

  const SublinearOperator& op_;
  Exponent p_, q_, pc_;
  std::span<const double> nu_, mu_;
};

}  // namespace

AscentResult norm_lower_bound_ascent(const SublinearOperator& op, Exponent p, Exponent q,
                                     const AscentConfig& config) {
  if (p.is_infinite()) throw InvalidArgument("ascent needs a finite domain exponent");
  if (config.restarts == 0 || config.steps == 0) {
    throw InvalidArgument("ascent needs positive restarts and steps");
  }
  const AscentRun run(op, p, q);
  const WeightedSpace& space = op.domain();
  const auto nu = space.weights();

  AscentResult best{-1.0, Signal::zeros(space)};
  for (std::size_t y = 0; y < nu.size(); ++y) {
    if (nu[y] <= 0.0) continue;
    std::vector<cdouble> delta(nu.size());
    delta[y] = 1.0;
    run.normalize(delta);
    Signal s(space, std::move(delta));
    const double r = run.score(s);
    if (r > best.ratio) best = AscentResult{r, std::move(s)};
  }

  std::vector<std::optional<AscentResult>> results(config.restarts);
  parallel_for(config.restarts, config.threads, [&](std::size_t r) {
    results[r] = run.restart(config.seed, r, config);
  });
  for (auto& r : results) {
    if (r->ratio > best.ratio) best = std::move(*r);
  }
  return best;
}

}  // namespace maxtrunc
