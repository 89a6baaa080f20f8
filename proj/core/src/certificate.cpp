#include <algorithm>
#include <cmath>
#include <limits>

#include "maxtrunc/christ_kiselev.hpp"
#include "maxtrunc/errors.hpp"

namespace maxtrunc::ck {

namespace {

struct Context {
  const Kernel& k;
  Exponent p;
  Exponent q;
  double upper;
  double tol;
};

Inequality check(std::string name, double lhs, double rhs, double tol, double floor = 0.0) {
  const bool ok = lhs <= rhs + tol * std::max(std::abs(lhs), std::abs(rhs)) + floor;
  return Inequality{std::move(name), lhs, rhs, ok};
}

// True when y lies in the last set of every chain other than `axis`.
std::vector<char> outer_mask(const ChainSystem& sys, std::size_t axis) {
  std::vector<char> m(sys.domain_size(), 1);
  for (std::size_t y = 0; y < m.size(); ++y) {
    for (std::size_t j = 0; j < sys.dimension(); ++j) {
      if (j == axis) continue;
      const Chain& c = sys.chain(j);
      if (c.empty() || !c.contains(c.size(), sys.coordinate(y, j))) {
        m[y] = 0;
        break;
      }
    }
  }
  return m;
}

template <class Pred>
Signal restricted(const Signal& g, Pred keep) {
  std::vector<cdouble> v(g.size());
  for (std::size_t y = 0; y < v.size(); ++y) {
    if (keep(y)) v[y] = g[y];
  }
  return Signal(g.space(), std::move(v));
}

double masked_norm(std::span<const cdouble> v, std::span<const double> mu, Exponent q,
                   const std::vector<char>& mask, bool want) {
  std::vector<cdouble> w(v.size());
  for (std::size_t x = 0; x < v.size(); ++x) {
    if ((mask[x] != 0) == want) w[x] = v[x];
  }
  return lp_norm(w, mu, q);
}

CertificateNode build_node(const Context& ctx, const ChainSystem& sys, const Signal& g,
                           std::size_t active) {
  CertificateNode node;
  const std::size_t ax = active - 1;
  const Chain& chain = sys.chain(ax);
  const std::size_t n = chain.size();
  node.active_axes = active;
  node.active_axis = ax;
  node.chain_length = n;
  node.function_norm = lp_norm(g, ctx.p);

  const double c_here = ck_constant(ctx.p, ctx.q, active);
  const double scale = c_here * ctx.upper * node.function_norm;
  const Signal star = maximal_truncation(ctx.k, sys, g).values;
  const double star_norm = lp_norm(star, ctx.q);
  node.checks.push_back(check("claim", star_norm, scale, ctx.tol));

  bool some_empty = false;
  for (std::size_t j = 0; j < active; ++j) some_empty = some_empty || sys.chain(j).empty();
  if (some_empty) {
    node.leaf = true;
    return node;
  }
  if (active == 1 && n == 1) {
    node.leaf = true;
    node.checks.push_back(check("basis", star_norm, ctx.upper * node.function_norm, ctx.tol));
    return node;
  }

  node.masses = split_masses(g, sys, ctx.p, ax);
  const std::size_t l = half_mass_index(node.masses);
  node.split = l;
  const double half = 0.5 * node.masses.back();
  node.checks.push_back(Inequality{"half_mass_reached", half, node.masses[l - 1],
                                   half <= node.masses[l - 1]});
  if (l >= 2) {
    node.checks.push_back(Inequality{"half_mass_minimal", node.masses[l - 2], half,
                                     node.masses[l - 2] < half});
  }

  const double gain = std::exp2(-ctx.p.reciprocal());
  const auto outer = outer_mask(sys, ax);
  const auto coord = [&](std::size_t y) { return sys.coordinate(y, ax); };
  const auto mu = ctx.k.codomain().weights();
  const std::size_t rows = ctx.k.rows();
  std::vector<cdouble> lower(rows), upper(rows), reduced(rows);

  if (l >= 2) {
    std::vector<std::vector<std::size_t>> sets;
    for (std::size_t i = 1; i < l; ++i) sets.push_back(chain.set(i));
    const ChainSystem sub = sys.with_chain(ax, Chain(chain.axis_size(), std::move(sets)));
    const Signal g1 = restricted(g, [&](std::size_t y) { return outer[y] && chain.contains(l - 1, coord(y)); });
    const Signal a = maximal_truncation(ctx.k, sub, g1).values;
    std::copy(a.values().begin(), a.values().end(), lower.begin());
    const double n1 = lp_norm(g1, ctx.p);
    node.checks.push_back(check("lower_hypothesis", lp_norm(a, ctx.q), c_here * ctx.upper * n1, ctx.tol));
    node.checks.push_back(check("lower_gain", n1, gain * node.function_norm, ctx.tol));
    node.children.push_back(build_node(ctx, sub, g1, active));
  }

  if (l < n) {
    std::vector<std::vector<std::size_t>> sets;
    for (std::size_t i = l + 1; i <= n; ++i) {
      std::vector<std::size_t> diff;
      for (std::size_t atom : chain.set(i)) {
        if (!chain.contains(l, atom)) diff.push_back(atom);
      }
      sets.push_back(std::move(diff));
    }
    const ChainSystem sub = sys.with_chain(ax, Chain(chain.axis_size(), std::move(sets)));
    const Signal g2 = restricted(g, [&](std::size_t y) {
      return outer[y] && chain.contains(n, coord(y)) && !chain.contains(l, coord(y));
    });
    const Signal b = maximal_truncation(ctx.k, sub, g2).values;
    std::copy(b.values().begin(), b.values().end(), upper.begin());
    const double n2 = lp_norm(g2, ctx.p);
    node.checks.push_back(check("upper_hypothesis", lp_norm(b, ctx.q), c_here * ctx.upper * n2, ctx.tol));
    node.checks.push_back(check("upper_gain", n2, gain * node.function_norm, ctx.tol));
    node.children.push_back(build_node(ctx, sub, g2, active));
  }

  {
    const ChainSystem sub = sys.with_chain(ax, Chain(chain.axis_size(), {chain.set(l)}));
    const Signal g3 = restricted(g, [&](std::size_t y) { return chain.contains(l, coord(y)); });
    const Signal c = maximal_truncation(ctx.k, sub, g3).values;
    std::copy(c.values().begin(), c.values().end(), reduced.begin());
    const double n3 = lp_norm(g3, ctx.p);
    const double c_below = ck_constant(ctx.p, ctx.q, active - 1);
    node.checks.push_back(check(active >= 2 ? "reduced_hypothesis" : "reduced_bounded",
                                lp_norm(c, ctx.q), c_below * ctx.upper * n3, ctx.tol));
    node.checks.push_back(check("reduced_norm", n3, node.function_norm, ctx.tol));
    if (active >= 2) {
      const ChainSystem full = sys.with_chain(ax, Chain::prefixes(chain.axis_size(), {chain.axis_size()}));
      node.children.push_back(build_node(ctx, full, g3, active - 1));
    }
  }

  // S: outputs where the maximum is already attained below the split.
  std::vector<char> in_s(rows);
  std::vector<cdouble> slack(rows);
  const auto nu = ctx.k.domain().weights();
  double worst_margin = -std::numeric_limits<double>::infinity();
  Inequality pointwise{"pointwise_split", 0.0, 0.0, true};
  for (std::size_t x = 0; x < rows; ++x) {
    const double s = star[x].real();
    in_s[x] = lower[x].real() >= s ? 1 : 0;
    if (in_s[x]) continue;
    double magnitude = 0.0;
    const auto row = ctx.k.row(x);
    for (std::size_t y = 0; y < row.size(); ++y) magnitude += std::abs(row[y]) * std::abs(g[y]) * nu[y];
    slack[x] = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    const double rhs = upper[x].real() + reduced[x].real();
    const double margin = s - rhs - ctx.tol * std::max(s, rhs) - slack[x].real();
    if (margin > worst_margin) {
      worst_margin = margin;
      pointwise = check("pointwise_split", s, rhs, ctx.tol, slack[x].real());
    }
  }
  node.checks.push_back(pointwise);

  const double a_s = masked_norm(lower, mu, ctx.q, in_s, true);
  const double b_sc = masked_norm(upper, mu, ctx.q, in_s, false);
  const double c_sc = masked_norm(reduced, mu, ctx.q, in_s, false);
  double combined = 0.0;
  if (ctx.q.is_infinite()) {
    combined = std::max(a_s, b_sc) + c_sc;
  } else {
    const double qq = ctx.q.value();
    combined = std::pow(std::pow(a_s, qq) + std::pow(b_sc, qq), 1.0 / qq) + c_sc;
  }
  node.checks.push_back(check("combination_lower", star_norm, combined, ctx.tol, lp_norm(slack, mu, ctx.q)));
  node.checks.push_back(check("combination_bound", combined, scale, ctx.tol));
  return node;
}

bool node_holds(const CertificateNode& n) {
  for (const auto& c : n.checks) {
    if (!c.holds) return false;
  }
  for (const auto& ch : n.children) {
    if (!node_holds(ch)) return false;
  }
  return true;
}

std::size_t count_checks(const CertificateNode& n) {
  std::size_t c = n.checks.size();
  for (const auto& ch : n.children) c += count_checks(ch);
  return c;
}

std::size_t count_nodes(const CertificateNode& n) {
  std::size_t c = 1;
  for (const auto& ch : n.children) c += count_nodes(ch);
  return c;
}

nlohmann::json node_json(const CertificateNode& n) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : n.checks) {
    checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  }
  nlohmann::json children = nlohmann::json::array();
  for (const auto& ch : n.children) children.push_back(node_json(ch));
  return nlohmann::json{{"active_axes", n.active_axes},
                        {"active_axis", n.active_axis},
                        {"chain_length", n.chain_length},
                        {"leaf", n.leaf},
                        {"split", n.split},
                        {"masses", n.masses},
                        {"function_norm", n.function_norm},
                        {"checks", std::move(checks)},
                        {"children", std::move(children)}};
}

}  // namespace

bool CKCertificate::all_hold() const { return node_holds(root); }
std::size_t CKCertificate::inequality_count() const { return count_checks(root); }
std::size_t CKCertificate::node_count() const { return count_nodes(root); }

CKCertificate build_ck_certificate(const Kernel& k, const ChainSystem& sys, const Signal& f,
                                   Exponent p, Exponent q, double relative_tolerance) {
  if (!(p.value() < q.value())) throw InvalidArgument("certificate requires p < q");
  if (p.is_infinite()) throw InvalidArgument("certificate requires finite p");
  if (sys.domain_size() != k.cols() || f.size() != k.cols()) {
    throw InvalidArgument("kernel, chain system and signal must share the domain");
  }
  CKCertificate cert;
  cert.p = p.value();
  cert.q = q.value();
  cert.operator_bound = holder_upper_bound(k, p, q);
  cert.constant = ck_constant(p, q, sys.dimension());
  cert.relative_tolerance = relative_tolerance;
  const Context ctx{k, p, q, cert.operator_bound, relative_tolerance};
  cert.root = build_node(ctx, sys, f, sys.dimension());
  return cert;
}

nlohmann::json to_json(const CKCertificate& cert) {
  const nlohmann::json q = std::isinf(cert.q) ? nlohmann::json("inf") : nlohmann::json(cert.q);
  return nlohmann::json{{"p", cert.p},
                        {"q", q},
                        {"operator_bound", cert.operator_bound},
                        {"constant", cert.constant},
                        {"relative_tolerance", cert.relative_tolerance},
                        {"all_hold", cert.all_hold()},
                        {"inequality_count", cert.inequality_count()},
                        {"root", node_json(cert.root)}};
}

}  // namespace maxtrunc::ck
