#include "maxtrunc/christ_kiselev.hpp"

#include <algorithm>
#include <cmath>

#include "maxtrunc/errors.hpp"
#include "maxtrunc/parallel.hpp"

namespace maxtrunc::ck {

Chain::Chain(std::size_t axis_size, std::vector<std::vector<std::size_t>> sets)
    : axis_size_(axis_size), sets_(std::move(sets)) {
  if (axis_size_ == 0) throw InvalidArgument("chain axis must have at least one atom");
  masks_.reserve(sets_.size());
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::vector<char> mask(axis_size_, 0);
    for (std::size_t a : s) {
      if (a >= axis_size_) throw InvalidArgument("chain set index out of range");
      mask[a] = 1;
    }
    if (!masks_.empty()) {
      const auto& prev = masks_.back();
      for (std::size_t a = 0; a < axis_size_; ++a) {
        if (prev[a] && !mask[a]) throw InvalidArgument("chain sets must be nested increasing");
      }
    }
    masks_.push_back(std::move(mask));
  }
}

Chain Chain::prefixes(std::size_t axis_size, const std::vector<std::size_t>& cuts) {
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t c : cuts) {
    std::vector<std::size_t> s(std::min(c, axis_size));
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
    sets.push_back(std::move(s));
  }
  return Chain(axis_size, std::move(sets));
}

const std::vector<std::size_t>& Chain::set(std::size_t position) const {
  if (position == 0 || position > sets_.size()) throw InvalidArgument("chain position out of range");
  return sets_[position - 1];
}

bool Chain::contains(std::size_t position, std::size_t atom) const {
  return masks_[position - 1][atom] != 0;
}

Chain Chain::extended(std::vector<std::size_t> superset) const {
  auto sets = sets_;
  sets.push_back(std::move(superset));
  return Chain(axis_size_, std::move(sets));
}

ChainSystem::ChainSystem(std::vector<std::size_t> factor_sizes, std::vector<Chain> chains)
    : factor_sizes_(std::move(factor_sizes)), chains_(std::move(chains)) {
  if (factor_sizes_.empty()) throw InvalidArgument("chain system needs at least one axis");
  if (factor_sizes_.size() != chains_.size()) {
    throw InvalidArgument("one chain per factor is required");
  }
  strides_.assign(factor_sizes_.size(), 1);
  domain_size_ = 1;
  for (std::size_t j = factor_sizes_.size(); j-- > 0;) {
    if (factor_sizes_[j] == 0) throw InvalidArgument("factor sizes must be positive");
    if (chains_[j].axis_size() != factor_sizes_[j]) {
      throw InvalidArgument("chain axis size differs from its factor size");
    }
    strides_[j] = domain_size_;
    domain_size_ *= factor_sizes_[j];
  }
}

std::size_t ChainSystem::coordinate(std::size_t y, std::size_t axis) const {
  return (y / strides_[axis]) % factor_sizes_[axis];
}

std::size_t ChainSystem::tuple_count() const noexcept {
  std::size_t n = 1;
  for (const auto& c : chains_) n *= c.size();
  return n;
}

ChainSystem ChainSystem::with_chain(std::size_t axis, Chain chain) const {
  auto chains = chains_;
  chains.at(axis) = std::move(chain);
  return ChainSystem(factor_sizes_, std::move(chains));
}

double ck_constant(Exponent p, Exponent q, std::size_t d) {
  if (!(p.value() < q.value())) throw InvalidArgument("ck_constant requires p < q");
  const double one = 1.0 / (1.0 - std::exp2(q.reciprocal() - p.reciprocal()));
  double c = 1.0;
  for (std::size_t i = 0; i < d; ++i) c *= one;
  return c;
}

double rm_constant(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw InvalidArgument("rm_constant needs at least one size");
  double c = 1.0;
  for (std::size_t n : sizes) {
    if (n == 0) throw InvalidArgument("index set sizes must be positive");
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    c *= static_cast<double>(k + 1);
  }
  return c;
}

namespace {

// Membership masks of every product set, tuples in lexicographic order.
std::vector<std::vector<char>> product_masks(const ChainSystem& sys,
                                             std::vector<TruncationIndex>& tuples) {
  const std::size_t d = sys.dimension();
  const std::size_t count = sys.tuple_count();
  std::vector<std::vector<char>> masks;
  masks.reserve(count);
  tuples.clear();
  if (count == 0) return masks;
  std::vector<std::size_t> pos(d, 1);
  for (std::size_t t = 0; t < count; ++t) {
    std::vector<char> m(sys.domain_size());
    for (std::size_t y = 0; y < m.size(); ++y) {
      bool in = true;
      for (std::size_t j = 0; j < d && in; ++j) in = sys.chain(j).contains(pos[j], sys.coordinate(y, j));
      m[y] = in ? 1 : 0;
    }
    masks.push_back(std::move(m));
    tuples.push_back(TruncationIndex{pos});
    for (std::size_t j = d; j-- > 0;) {
      if (++pos[j] <= sys.chain(j).size()) break;
      pos[j] = 1;
    }
  }
  return masks;
}

void check_compatible(const Kernel& k, const ChainSystem& sys, const Signal& f) {
  if (sys.domain_size() != k.cols()) {
    throw InvalidArgument("chain system factorization does not match the kernel domain");
  }
  if (f.size() != k.cols()) throw InvalidArgument("signal does not live on the kernel domain");
}

}  // namespace

MaximalTruncation maximal_truncation(const Kernel& k, const ChainSystem& sys, const Signal& f,
                                     std::size_t threads) {
  check_compatible(k, sys, f);
  std::vector<TruncationIndex> tuples;
  const auto masks = product_masks(sys, tuples);
  const auto nu = k.domain().weights();
  std::vector<cdouble> fw(f.size());
  for (std::size_t y = 0; y < fw.size(); ++y) fw[y] = f[y] * nu[y];

  std::vector<cdouble> values(k.rows());
  std::vector<TruncationIndex> argmax(k.rows());
  parallel_for(k.rows(), threads, [&](std::size_t x) {
    const auto row = k.row(x);
    double best = -1.0;
    std::size_t best_t = 0;
    for (std::size_t t = 0; t < masks.size(); ++t) {
      const auto& m = masks[t];
      cdouble acc = 0.0;
      for (std::size_t y = 0; y < row.size(); ++y) {
        if (m[y]) acc += row[y] * fw[y];
      }
      const double a = std::abs(acc);
      if (a > best) {
        best = a;
        best_t = t;
      }
    }
    if (!masks.empty()) {
      values[x] = best;
      argmax[x] = tuples[best_t];
    }
  });
  return MaximalTruncation{Signal(k.codomain(), std::move(values)), std::move(argmax)};
}

MaximalTruncationOperator::MaximalTruncationOperator(Kernel k, ChainSystem sys)
    : kernel_(std::move(k)), sys_(std::move(sys)) {
  if (sys_.domain_size() != kernel_.cols()) {
    throw InvalidArgument("chain system factorization does not match the kernel domain");
  }
}

Signal MaximalTruncationOperator::apply(const Signal& f) const {
  return maximal_truncation(kernel_, sys_, f).values;
}

Kernel MaximalTruncationOperator::linearize(const Signal& f) const {
  const auto mt = maximal_truncation(kernel_, sys_, f);
  std::vector<cdouble> entries(kernel_.rows() * kernel_.cols());
  for (std::size_t x = 0; x < kernel_.rows(); ++x) {
    const auto& idx = mt.argmax[x];
    if (idx.empty()) continue;
    for (std::size_t y = 0; y < kernel_.cols(); ++y) {
      bool in = true;
      for (std::size_t j = 0; j < sys_.dimension() && in; ++j) {
        in = sys_.chain(j).contains(idx.positions[j], sys_.coordinate(y, j));
      }
      if (in) entries[x * kernel_.cols() + y] = kernel_(x, y);
    }
  }
  return Kernel(kernel_.domain(), kernel_.codomain(), std::move(entries));
}

std::size_t half_mass_index(std::span<const double> cumulative) {
  if (cumulative.empty()) throw InvalidArgument("half-mass split needs a nonempty chain");
  const double half = 0.5 * cumulative.back();
  if (!(cumulative.back() > 0.0)) return 1;
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    if (cumulative[i] >= half) return i + 1;
  }
  return cumulative.size();
}

std::vector<double> split_masses(const Signal& f, const ChainSystem& sys, Exponent p,
                                 std::size_t axis) {
  if (p.is_infinite()) throw InvalidArgument("half-mass split needs a finite exponent");
  if (f.size() != sys.domain_size()) throw InvalidArgument("signal does not match the chain system");
  const Chain& chain = sys.chain(axis);
  const auto nu = f.space().weights();
  std::vector<char> outer(f.size(), 1);
  for (std::size_t y = 0; y < f.size(); ++y) {
    for (std::size_t j = 0; j < sys.dimension(); ++j) {
      if (j == axis) continue;
      const Chain& c = sys.chain(j);
      if (c.empty() || !c.contains(c.size(), sys.coordinate(y, j))) {
        outer[y] = 0;
        break;
      }
    }
  }
  std::vector<double> masses(chain.size());
  for (std::size_t i = 1; i <= chain.size(); ++i) {
    double acc = 0.0;
    for (std::size_t y = 0; y < f.size(); ++y) {
      if (outer[y] && nu[y] > 0.0 && chain.contains(i, sys.coordinate(y, axis))) {
        acc += std::pow(std::abs(f[y]), p.value()) * nu[y];
      }
    }
    masses[i - 1] = acc;
  }
  return masses;
}

std::vector<double> split_masses(const Signal& f, const ChainSystem& sys, Exponent p) {
  return split_masses(f, sys, p, sys.dimension() - 1);
}

std::size_t half_mass_split(const Signal& f, const ChainSystem& sys, Exponent p) {
  return half_mass_index(split_masses(f, sys, p));
}

CKReport verify_ck_bound(const Kernel& k, const ChainSystem& sys, Exponent p, Exponent q,
                         const AscentConfig& config) {
  if (!(p.value() < q.value())) throw InvalidArgument("verify_ck_bound requires p < q");
  CKReport r;
  const MaximalTruncationOperator star(k, sys);
  r.lower = norm_lower_bound_ascent(star, p, q, config).ratio;
  r.upper = holder_upper_bound(k, p, q);
  r.constant = ck_constant(p, q, sys.dimension());
  r.bound = r.constant * r.upper;
  r.holds = r.lower <= r.bound;
  r.plain_lower = norm_lower_bound_ascent(LinearOperator(k), p, q, config).ratio;
  r.empirical_ratio = r.plain_lower > 0.0 ? r.lower / r.plain_lower : 0.0;
  return r;
}

nlohmann::json to_json(const CKReport& r) {
  return nlohmann::json{{"lower", r.lower},
                        {"upper", r.upper},
                        {"constant", r.constant},
                        {"bound", r.bound},
                        {"holds", r.holds},
                        {"plain_lower", r.plain_lower},
                        {"empirical_ratio", r.empirical_ratio}};
}

}  // namespace maxtrunc::ck
