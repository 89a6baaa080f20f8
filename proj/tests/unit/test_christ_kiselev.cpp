#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "maxtrunc/christ_kiselev.hpp"
#include "maxtrunc/errors.hpp"
#include "random_instances.hpp"

using namespace maxtrunc;
using namespace maxtrunc::ck;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Kernel row_kernel() {
  return Kernel(WeightedSpace::uniform(2), WeightedSpace::uniform(1), {1.0, 1.0});
}

Chain one_then_two() { return Chain(2, {{0}, {0, 1}}); }

// sup_{i_1} sup_{i_2} ... |T(f 1_{A_1 x ... x A_d})(x)|, one axis at a time.
double nested_sup(const Kernel& k, const ChainSystem& sys, const Signal& f, std::size_t x) {
  const std::size_t d = sys.dimension();
  std::vector<std::size_t> pos(d);
  const auto row = k.row(x);
  const auto nu = k.domain().weights();
  std::function<double(std::size_t)> rec = [&](std::size_t axis) -> double {
    if (axis == d) {
      cdouble acc = 0.0;
      for (std::size_t y = 0; y < row.size(); ++y) {
        bool in = true;
        for (std::size_t j = 0; j < d && in; ++j) in = sys.chain(j).contains(pos[j], sys.coordinate(y, j));
        if (in) acc += row[y] * (f[y] * nu[y]);
      }
      return std::abs(acc);
    }
    double best = 0.0;
    for (std::size_t i = 1; i <= sys.chain(axis).size(); ++i) {
      pos[axis] = i;
      best = std::max(best, rec(axis + 1));
    }
    return best;
  };
  return rec(0);
}

// max over (x, tuple) of the L^{p'} norm of the truncated row.
double truncated_row_norm(const Kernel& k, const ChainSystem& sys, Exponent p) {
  const auto pc = holder_conjugate(p);
  const std::size_t d = sys.dimension();
  double best = 0.0;
  std::vector<std::size_t> pos(d, 1);
  for (std::size_t t = 0; t < sys.tuple_count(); ++t) {
    std::size_t rem = t;
    for (std::size_t j = d; j-- > 0;) {
      pos[j] = 1 + rem % sys.chain(j).size();
      rem /= sys.chain(j).size();
    }
    for (std::size_t x = 0; x < k.rows(); ++x) {
      if (k.codomain().weight(x) <= 0.0) continue;
      std::vector<cdouble> r(k.cols());
      for (std::size_t y = 0; y < k.cols(); ++y) {
        bool in = true;
        for (std::size_t j = 0; j < d && in; ++j) in = sys.chain(j).contains(pos[j], sys.coordinate(y, j));
        r[y] = in ? k(x, y) : 0.0;
      }
      best = std::max(best, lp_norm(r, k.domain().weights(), pc));
    }
  }
  return best;
}

void expect_minimal_half_mass(const CertificateNode& node) {
  if (!node.leaf) {
    ASSERT_FALSE(node.masses.empty());
    ASSERT_GE(node.split, 1U);
    const double total = node.masses.back();
    EXPECT_GE(node.masses[node.split - 1], total / 2.0);
    if (node.split > 1 && total > 0.0) EXPECT_LT(node.masses[node.split - 2], total / 2.0);
    if (total == 0.0) EXPECT_EQ(node.split, 1U);
  }
  for (const auto& c : node.children) expect_minimal_half_mass(c);
}

}  // namespace

TEST(Chain, ValidatesNesting) {
  EXPECT_THROW(Chain(3, {{0, 1}, {1, 2}}), InvalidArgument);
  EXPECT_THROW(Chain(2, {{0, 2}}), InvalidArgument);
  EXPECT_NO_THROW(Chain(3, {{}, {1}, {1}, {0, 1, 2}}));
  const auto c = Chain::prefixes(4, {1, 3});
  EXPECT_EQ(c.set(2), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(c.contains(1, 0));
  EXPECT_FALSE(c.contains(1, 1));
  EXPECT_THROW(c.extended({0, 1}), InvalidArgument);
  EXPECT_EQ(c.extended({0, 1, 2, 3}).size(), 3U);
}

TEST(ChainSystem, RowMajorCoordinates) {
  const ChainSystem sys({2, 3}, {Chain::prefixes(2, {2}), Chain::prefixes(3, {3})});
  EXPECT_EQ(sys.domain_size(), 6U);
  EXPECT_EQ(sys.coordinate(4, 0), 1U);
  EXPECT_EQ(sys.coordinate(4, 1), 1U);
  EXPECT_EQ(sys.tuple_count(), 1U);
  EXPECT_THROW(ChainSystem({2, 3}, {Chain::prefixes(2, {2})}), InvalidArgument);
  EXPECT_THROW(ChainSystem({2, 3}, {Chain::prefixes(3, {3}), Chain::prefixes(2, {2})}), InvalidArgument);
}

TEST(CkConstant, Examples) {
  EXPECT_NEAR(ck_constant(Exponent(1.0), Exponent::infinity(), 1), 2.0, 1e-14);
  EXPECT_NEAR(ck_constant(Exponent(1.0), Exponent(2.0), 1), 2.0 + std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(ck_constant(Exponent(2.0), Exponent(4.0), 2), 39.504, 5e-4);
  EXPECT_THROW(ck_constant(Exponent(2.0), Exponent(2.0), 1), InvalidArgument);
  EXPECT_THROW(ck_constant(Exponent(3.0), Exponent(2.0), 1), InvalidArgument);
}

TEST(CkConstant, ProductStructure) {
  for (auto [p, q] : {std::pair{1.0, 2.0}, {2.0, 4.0}, {2.0, kInf}, {1.2, 1.3}}) {
    const double one = ck_constant(Exponent(p), Exponent(q), 1);
    for (std::size_t d = 1; d <= 4; ++d) {
      EXPECT_NEAR(ck_constant(Exponent(p), Exponent(q), d), std::pow(one, static_cast<double>(d)),
                  1e-14 * std::pow(one, static_cast<double>(d)));
    }
  }
}

TEST(RmConstant, Examples) {
  EXPECT_EQ(rm_constant({1}), 1.0);
  EXPECT_EQ(rm_constant({8, 4}), 12.0);
  EXPECT_EQ(rm_constant({2}), 2.0);
  EXPECT_EQ(rm_constant({5}), 4.0);
  EXPECT_THROW(rm_constant({}), InvalidArgument);
  EXPECT_THROW(rm_constant({0}), InvalidArgument);
}

TEST(MaximalTruncation, RowKernelExample) {
  const ChainSystem sys({2}, {one_then_two()});
  const Signal f(WeightedSpace::uniform(2), {3.0, -4.0});
  const auto r = maximal_truncation(row_kernel(), sys, f);
  EXPECT_EQ(r.values[0], cdouble(3.0));
  EXPECT_EQ(r.argmax[0].positions, (std::vector<std::size_t>{1}));
}

TEST(MaximalTruncation, EmptyChainGivesZero) {
  const ChainSystem sys({2}, {Chain(2, {})});
  const Signal f(WeightedSpace::uniform(2), {3.0, -4.0});
  const auto r = maximal_truncation(row_kernel(), sys, f);
  EXPECT_EQ(r.values[0], cdouble(0.0));
  EXPECT_TRUE(r.argmax[0].empty());
}

TEST(MaximalTruncation, IdentityWithFullChainIsModulus) {
  std::mt19937_64 rng(1);
  const auto s = WeightedSpace::uniform(6);
  const ChainSystem sys({2, 3}, {Chain::prefixes(2, {1, 2}), Chain::prefixes(3, {2, 3})});
  const auto f = fixtures::random_signal(rng, s);
  const auto r = maximal_truncation(Kernel::identity(s), sys, f);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(r.values[i].real(), std::abs(f[i]), 1e-15);
}

TEST(MaximalTruncation, IncompatibleFactorization) {
  const ChainSystem sys({3}, {Chain::prefixes(3, {3})});
  EXPECT_THROW(maximal_truncation(row_kernel(), sys, Signal::zeros(WeightedSpace::uniform(2))),
               InvalidArgument);
}

TEST(MaximalTruncation, TiesResolveToSmallestTuple) {
  const ChainSystem sys({2}, {Chain(2, {{0}, {0}, {0, 1}})});
  const Signal f(WeightedSpace::uniform(2), {1.0, 0.0});
  const auto r = maximal_truncation(row_kernel(), sys, f);
  EXPECT_EQ(r.argmax[0].positions, (std::vector<std::size_t>{1}));
}

TEST(MaximalTruncation, AgreesWithNestedOneParameterSups) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::vector<std::size_t> factors = trial % 2 == 0 ? std::vector<std::size_t>{4, 4}
                                                            : std::vector<std::size_t>{2, 3, 2};
    const auto sys = fixtures::random_system(rng, factors, 4);
    const auto dom = fixtures::random_space(rng, sys.domain_size());
    const auto cod = fixtures::random_space(rng, 5);
    const auto k = fixtures::random_kernel(rng, dom, cod);
    const auto f = fixtures::random_signal(rng, dom);
    const auto r = maximal_truncation(k, sys, f, 2);
    for (std::size_t x = 0; x < cod.size(); ++x) EXPECT_EQ(r.values[x].real(), nested_sup(k, sys, f, x));
  }
}

TEST(MaximalTruncation, MonotoneUnderChainExtension) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sys = fixtures::random_system(rng, {3, 4}, 3);
    const auto dom = fixtures::random_space(rng, 12);
    const auto cod = fixtures::random_space(rng, 4);
    const auto k = fixtures::random_kernel(rng, dom, cod);
    const auto f = fixtures::random_signal(rng, dom);
    const std::size_t axis = static_cast<std::size_t>(trial % 2);
    const std::size_t n = sys.factor_sizes()[axis];
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const auto bigger = sys.with_chain(axis, sys.chain(axis).extended(all));
    const auto a = maximal_truncation(k, sys, f);
    const auto b = maximal_truncation(k, bigger, f);
    for (std::size_t x = 0; x < 4; ++x) EXPECT_GE(b.values[x].real(), a.values[x].real());
  }
}

TEST(MaximalTruncation, DominatesLargestProductSet) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sys = fixtures::random_system(rng, {4, 4}, 4);
    const auto dom = fixtures::random_space(rng, 16);
    const auto cod = fixtures::random_space(rng, 3);
    const auto k = fixtures::random_kernel(rng, dom, cod);
    auto f = fixtures::random_signal(rng, dom);
    const auto r = maximal_truncation(k, sys, f);
    for (std::size_t y = 0; y < 16; ++y) {
      const bool in = sys.chain(0).contains(sys.chain(0).size(), sys.coordinate(y, 0)) &&
                      sys.chain(1).contains(sys.chain(1).size(), sys.coordinate(y, 1));
      if (!in) f[y] = 0.0;
    }
    const auto plain = apply_kernel(k, f);
    for (std::size_t x = 0; x < 3; ++x) EXPECT_GE(r.values[x].real(), std::abs(plain[x]) * (1 - 1e-14));
  }
}

TEST(MaximalTruncation, ExactNormAtInfinityEndpoint) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<std::size_t> factors = trial % 2 == 0 ? std::vector<std::size_t>{6}
                                                            : std::vector<std::size_t>{2, 3};
    const auto sys = fixtures::random_system(rng, factors, 3);
    const auto dom = fixtures::random_space(rng, 6);
    const auto cod = fixtures::random_space(rng, 3);
    const auto k = fixtures::random_kernel(rng, dom, cod);
    const MaximalTruncationOperator op(k, sys);
    AscentConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(trial);
    cfg.restarts = 16;
    for (double p : {1.0, 2.0, 3.0}) {
      const double exact = truncated_row_norm(k, sys, Exponent(p));
      const double est = norm_lower_bound_ascent(op, Exponent(p), Exponent::infinity(), cfg).ratio;
      EXPECT_LE(est, exact * (1 + 1e-12));
      EXPECT_NEAR(est, exact, 1e-6 * exact);
    }
  }
}

TEST(HalfMass, Examples) {
  const std::vector<double> a{0.1, 0.3, 0.6, 1.0};
  EXPECT_EQ(half_mass_index(a), 3U);
  const std::vector<double> b{0.5, 1.0};
  EXPECT_EQ(half_mass_index(b), 1U);
  const std::vector<double> z{0.0, 0.0, 0.0};
  EXPECT_EQ(half_mass_index(z), 1U);
}

TEST(HalfMass, SupportOutsideChainSetsGivesOne) {
  const ChainSystem sys({3}, {Chain(3, {{0}, {0, 1}})});
  const Signal f(WeightedSpace::uniform(3), {0.0, 0.0, 5.0});
  EXPECT_EQ(half_mass_split(f, sys, Exponent(2.0)), 1U);
  const ChainSystem none({3}, {Chain(3, {})});
  EXPECT_THROW(half_mass_split(f, none, Exponent(2.0)), InvalidArgument);
}

TEST(HalfMass, UsesLastSetsOfEarlierAxes) {
  const ChainSystem sys({2, 2}, {Chain(2, {{0}}), Chain(2, {{0}, {0, 1}})});
  // Atoms (0,0) (0,1) (1,0) (1,1); axis 0 keeps only coordinate 0.
  const Signal f(WeightedSpace::uniform(4), {1.0, 3.0, 100.0, 100.0});
  const auto m = split_masses(f, sys, Exponent(2.0));
  ASSERT_EQ(m.size(), 2U);
  EXPECT_DOUBLE_EQ(m[0], 1.0);
  EXPECT_DOUBLE_EQ(m[1], 10.0);
  EXPECT_EQ(half_mass_split(f, sys, Exponent(2.0)), 2U);
}

TEST(Certificate, SingleSetIsLeaf) {
  std::mt19937_64 rng(9);
  const auto dom = fixtures::random_space(rng, 4);
  const auto k = fixtures::random_kernel(rng, dom, fixtures::random_space(rng, 3));
  const ChainSystem sys({4}, {Chain(4, {{0, 2}})});
  const auto f = fixtures::random_signal(rng, dom);
  const auto cert = build_ck_certificate(k, sys, f, Exponent(2.0), Exponent(4.0));
  EXPECT_TRUE(cert.root.leaf);
  EXPECT_TRUE(cert.root.children.empty());
  EXPECT_EQ(cert.node_count(), 1U);
  EXPECT_TRUE(cert.all_hold());
  bool has_basis = false;
  for (const auto& c : cert.root.checks) {
    if (c.name == "basis") {
      has_basis = true;
      EXPECT_NEAR(c.rhs, cert.operator_bound * lp_norm(f, Exponent(2.0)), 1e-12 * c.rhs);
    }
  }
  EXPECT_TRUE(has_basis);
}

TEST(Certificate, RandomOneParameterChainsHold) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dom = fixtures::random_space(rng, 4);
    const auto k = fixtures::random_kernel(rng, dom, fixtures::random_space(rng, 3));
    const ChainSystem sys({4}, {fixtures::random_chain(rng, 4, 4)});
    const auto f = fixtures::random_signal(rng, dom);
    for (auto [p, q] : {std::pair{1.0, 2.0}, {2.0, 4.0}, {2.0, kInf}}) {
      const auto cert = build_ck_certificate(k, sys, f, Exponent(p), Exponent(q));
      EXPECT_TRUE(cert.all_hold());
      expect_minimal_half_mass(cert.root);
    }
  }
}

TEST(Certificate, RandomTwoParameterChainsHold) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto sys = fixtures::random_system(rng, {4, 4}, 4);
    const auto dom = fixtures::random_space(rng, 16);
    const auto k = fixtures::random_kernel(rng, dom, fixtures::random_space(rng, 4));
    const auto f = fixtures::random_signal(rng, dom);
    const auto cert = build_ck_certificate(k, sys, f, Exponent(1.5), Exponent(3.0));
    EXPECT_TRUE(cert.all_hold());
    EXPECT_GT(cert.inequality_count(), 0U);
    expect_minimal_half_mass(cert.root);
  }
}

TEST(Certificate, ConcentratedMassSplitsAtOne) {
  const auto dom = WeightedSpace::uniform(4);
  const auto k = Kernel(dom, WeightedSpace::uniform(1), {1.0, 2.0, -1.0, 0.5});
  const ChainSystem sys({4}, {Chain(4, {{0}, {0, 1}, {0, 1, 2}, {0, 1, 2, 3}})});
  const Signal f(dom, {10.0, 0.1, 0.2, 0.3});
  const auto cert = build_ck_certificate(k, sys, f, Exponent(2.0), Exponent(4.0));
  EXPECT_EQ(cert.root.split, 1U);
  const double total = cert.root.masses.back();
  double upper_mass = 0.0;
  for (std::size_t y = 1; y < 4; ++y) upper_mass += std::norm(f[y]);
  EXPECT_LE(upper_mass, total / 2.0);
  EXPECT_TRUE(cert.all_hold());
}

TEST(Certificate, JsonShape) {
  const auto dom = WeightedSpace::uniform(3);
  const auto k = Kernel::identity(dom);
  const ChainSystem sys({3}, {Chain::prefixes(3, {1, 2, 3})});
  const Signal f(dom, {1.0, 2.0, 3.0});
  const auto cert = build_ck_certificate(k, sys, f, Exponent(2.0), Exponent::infinity());
  const auto j = to_json(cert);
  EXPECT_EQ(j.at("q"), "inf");
  EXPECT_TRUE(j.at("root").contains("split"));
  EXPECT_TRUE(j.at("root").at("checks").is_array());
  EXPECT_TRUE(j.at("root").at("masses").is_array());
  EXPECT_THROW(build_ck_certificate(k, sys, f, Exponent(2.0), Exponent(2.0)), InvalidArgument);
}

TEST(VerifyBound, IdentityFullChains) {
  const auto s = WeightedSpace::uniform(4);
  const ChainSystem sys({2, 2}, {Chain::prefixes(2, {1, 2}), Chain::prefixes(2, {1, 2})});
  const auto r = verify_ck_bound(Kernel::identity(s), sys, Exponent(2.0), Exponent(4.0), {});
  EXPECT_NEAR(r.lower, 1.0, 1e-9);
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.lower, r.bound);
}

TEST(VerifyBound, RowKernelExactNorm) {
  const ChainSystem sys({2}, {one_then_two()});
  const auto r = verify_ck_bound(row_kernel(), sys, Exponent(2.0), Exponent::infinity(), {});
  EXPECT_NEAR(r.lower, std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(r.upper, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(r.constant, 2.0 + std::sqrt(2.0), 1e-13);
  EXPECT_TRUE(r.holds);
  EXPECT_THROW(verify_ck_bound(row_kernel(), sys, Exponent(4.0), Exponent(2.0), {}), InvalidArgument);
  const auto j = to_json(r);
  EXPECT_TRUE(j.contains("empirical_ratio"));
}
