#include <algorithm>
#include <limits>
#include <numeric>

#include "internal.hpp"
#include "maxtrunc/christ_kiselev.hpp"

namespace maxtrunc::lab {

namespace {

struct CkParams {
  std::size_t factor_size;
  std::size_t dimension;
  std::size_t codomain_size;
  std::size_t instances;
  Exponent p{1.0};
  Exponent q{2.0};
  std::size_t max_chain_length;
};

CkParams read_ck(const json& prm) {
  CkParams c;
  c.factor_size = count(prm, "factor_size", 1, 16);
  c.dimension = count(prm, "dimension", 1, 2);
  c.codomain_size = count(prm, "codomain_size", 1, 8);
  c.instances = count(prm, "instances", 1, 100000);
  c.p = exponent(prm, "p");
  c.q = exponent(prm, "q");
  c.max_chain_length = count(prm, "max_chain_length", 1, 64);
  if (c.p.is_infinite() || c.p.value() >= (c.q.is_infinite() ? std::numeric_limits<double>::infinity() : c.q.value())) {
    throw ConfigError("parameters p and q need p < q");
  }
  std::size_t domain = 1;
  for (std::size_t j = 0; j < c.dimension; ++j) domain *= c.factor_size;
  if (domain > 16) throw ConfigError("domain size factor_size^dimension must be at most 16");
  return c;
}

struct Instance {
  Kernel kernel;
  ck::ChainSystem system;
  Signal f;
};

WeightedSpace random_space(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> w(0.2, 2.0);
  std::vector<double> weights(n);
  for (auto& x : weights) x = w(rng);
  return WeightedSpace(std::move(weights));
}

std::vector<cdouble> normal_values(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cdouble> v(n);
  for (auto& z : v) {
    const double re = g(rng);
    z = cdouble(re, g(rng));
  }
  return v;
}

ck::Chain random_chain(std::mt19937_64& rng, std::size_t n, std::size_t max_length) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<std::size_t> len(1, max_length);
  std::uniform_int_distribution<std::size_t> size(1, n);
  std::vector<std::size_t> sizes(len(rng));
  for (auto& s : sizes) s = size(rng);
  std::sort(sizes.begin(), sizes.end());
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t s : sizes) sets.emplace_back(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(s));
  return ck::Chain(n, std::move(sets));
}

Instance random_instance(const CkParams& c, std::uint64_t seed, std::size_t index) {
  auto rng = item_rng(seed, index);
  std::vector<std::size_t> factors(c.dimension, c.factor_size);
  std::size_t domain_size = 1;
  for (std::size_t n : factors) domain_size *= n;
  const auto domain = random_space(rng, domain_size);
  const auto codomain = random_space(rng, c.codomain_size);
  Kernel k(domain, codomain, normal_values(rng, domain_size * c.codomain_size));
  std::vector<ck::Chain> chains;
  for (std::size_t n : factors) chains.push_back(random_chain(rng, n, c.max_chain_length));
  ck::ChainSystem sys(factors, std::move(chains));
  Signal f(domain, normal_values(rng, domain_size));
  return {std::move(k), std::move(sys), std::move(f)};
}

bool minimal_half_mass(const ck::CertificateNode& node) {
  if (!node.leaf) {
    if (node.masses.empty() || node.split < 1 || node.split > node.masses.size()) return false;
    const double total = node.masses.back();
    if (total == 0.0) {
      if (node.split != 1) return false;
    } else {
      if (!(node.masses[node.split - 1] >= total / 2.0)) return false;
      if (node.split > 1 && !(node.masses[node.split - 2] < total / 2.0)) return false;
    }
  }
  return std::all_of(node.children.begin(), node.children.end(), minimal_half_mass);
}

// Inequalities with lhs > rhs (1 + tol), recomputed from the recorded sides.
std::size_t violations(const ck::CertificateNode& node, double tol) {
  std::size_t n = 0;
  for (const auto& c : node.checks) n += (c.lhs <= c.rhs * (1.0 + tol) && c.holds) ? 0 : 1;
  for (const auto& child : node.children) n += violations(child, tol);
  return n;
}

// Largest lhs / rhs over the tree, the tightness of the recorded inequalities.
double worst_ratio(const ck::CertificateNode& node) {
  double worst = 0.0;
  for (const auto& c : node.checks) {
    if (c.rhs > 0.0) worst = std::max(worst, c.lhs / c.rhs);
  }
  for (const auto& child : node.children) worst = std::max(worst, worst_ratio(child));
  return worst;
}

}  // namespace

void run_ck_verify(Context& ctx) {
  const CkParams c = read_ck(ctx.params);
  const std::size_t restarts = count(ctx.params, "restarts", 1, 1000);
  const std::size_t steps = count(ctx.params, "steps", 1, 100000);

  CsvTable table{"ck_verify",
                 {"instance", "dimension", "tuples", "p", "q", "lower", "upper", "constant", "bound", "holds",
                  "plain_lower", "empirical_ratio"},
                 {}};
  std::size_t failures = 0;
  double tightest = 0.0;
  for (std::size_t i = 0; i < c.instances; ++i) {
    const auto inst = random_instance(c, ctx.seed, i);
    AscentConfig acfg;
    acfg.restarts = restarts;
    acfg.steps = steps;
    acfg.seed = ctx.seed * 1000003ULL + i;
    acfg.threads = ctx.threads;
    const auto r = ck::verify_ck_bound(inst.kernel, inst.system, c.p, c.q, acfg);
    table.add({num(i), num(c.dimension), num(inst.system.tuple_count()), num(c.p), num(c.q), num(r.lower),
               num(r.upper), num(r.constant), num(r.bound), r.holds ? "true" : "false", num(r.plain_lower),
               num(r.empirical_ratio)});
    if (!ctx.report.check("instance " + std::to_string(i) + ": ascent lower bound <= constant * Hölder bound",
                          r.lower, "<=", r.bound)) {
      ++failures;
    }
    tightest = std::max(tightest, r.lower / r.bound);
  }
  ctx.report.results = {{"instances", c.instances},
                        {"failures", failures},
                        {"constant", ck::ck_constant(c.p, c.q, c.dimension)},
                        {"max_lower_over_bound", tightest}};
  ctx.report.tables.push_back(std::move(table));
}

void run_ck_certificate(Context& ctx) {
  const CkParams c = read_ck(ctx.params);
  const double tol = number(ctx.params, "relative_tolerance", 0.0, 1.0);
  const std::size_t emit = count(ctx.params, "emit_certificates", 0, 1000);

  CsvTable table{"ck_certificate",
                 {"instance", "dimension", "nodes", "inequalities", "all_hold", "half_mass_minimal", "worst_ratio"},
                 {}};
  json certificates = json::array();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < c.instances; ++i) {
    const auto inst = random_instance(c, ctx.seed, i);
    const auto cert = ck::build_ck_certificate(inst.kernel, inst.system, inst.f, c.p, c.q, tol);
    const std::size_t bad = violations(cert.root, tol);
    const bool holds = bad == 0 && cert.all_hold();
    const bool minimal = minimal_half_mass(cert.root);
    const double worst = worst_ratio(cert.root);
    table.add({num(i), num(c.dimension), num(cert.node_count()), num(cert.inequality_count()),
               holds ? "true" : "false", minimal ? "true" : "false", num(worst)});
    const std::string tag = "instance " + std::to_string(i);
    const bool ok1 = ctx.report.check(tag + ": failing certificate inequalities == 0", static_cast<double>(bad), "==", 0.0);
    const bool ok2 = ctx.report.check(tag + ": non-minimal half-mass splits == 0", minimal ? 0.0 : 1.0, "==", 0.0);
    if (!ok1 || !ok2) ++failures;
    if (i < emit) certificates.push_back(ck::to_json(cert));
  }
  ctx.report.results = {{"instances", c.instances}, {"failures", failures}, {"certificates", certificates}};
  ctx.report.tables.push_back(std::move(table));
}

}  // namespace maxtrunc::lab
