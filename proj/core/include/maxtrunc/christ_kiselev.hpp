#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maxtrunc/operator_norm.hpp"
#include "maxtrunc/spaces.hpp"

namespace maxtrunc::ck {

/// Nested increasing family of subsets of {0, ..., axis_size - 1}.
/// Positions are numbered from 1, so position i refers to sets()[i - 1].
class Chain {
 public:
  Chain(std::size_t axis_size, std::vector<std::vector<std::size_t>> sets);

  /// Chain of initial segments {0, ..., c - 1} for each cut c.
  static Chain prefixes(std::size_t axis_size, const std::vector<std::size_t>& cuts);

  std::size_t axis_size() const noexcept { return axis_size_; }
  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }

  /// Set at 1-based position i, as a sorted index list.
  const std::vector<std::size_t>& set(std::size_t position) const;
  /// Membership of atom in the set at 1-based position i.
  bool contains(std::size_t position, std::size_t atom) const;

  /// Same chain with one more set appended (must contain the current last set).
  Chain extended(std::vector<std::size_t> superset) const;

 private:
  std::size_t axis_size_;
  std::vector<std::vector<std::size_t>> sets_;
  std::vector<std::vector<char>> masks_;
};

/// d chains on the factors of a product domain Y = Y_1 x ... x Y_d.
/// Atoms of Y are ordered row-major with the last factor fastest.
class ChainSystem {
 public:
  ChainSystem(std::vector<std::size_t> factor_sizes, std::vector<Chain> chains);

  std::size_t dimension() const noexcept { return chains_.size(); }
  std::size_t domain_size() const noexcept { return domain_size_; }
  const std::vector<std::size_t>& factor_sizes() const noexcept { return factor_sizes_; }
  const Chain& chain(std::size_t axis) const { return chains_[axis]; }
  const std::vector<Chain>& chains() const noexcept { return chains_; }

  /// Factor coordinate of atom y along axis j.
  std::size_t coordinate(std::size_t y, std::size_t axis) const;

  /// Number of position tuples (product of chain sizes).
  std::size_t tuple_count() const noexcept;

  /// Copy with chain `axis` replaced.
  ChainSystem with_chain(std::size_t axis, Chain chain) const;

 private:
  std::vector<std::size_t> factor_sizes_;
  std::vector<Chain> chains_;
  std::vector<std::size_t> strides_;
  std::size_t domain_size_;
};

/// Tuple (i_1, ..., i_d) of 1-based chain positions. An empty tuple means no
/// truncation was selected (the supremum ran over an empty index set).
struct TruncationIndex {
  std::vector<std::size_t> positions;
  bool empty() const noexcept { return positions.empty(); }
  friend bool operator==(const TruncationIndex&, const TruncationIndex&) = default;
};

struct MaximalTruncation {
  Signal values;
  std::vector<TruncationIndex> argmax;
};

/// (1 - 2^{1/q - 1/p})^{-d}. Requires p < q.
double ck_constant(Exponent p, Exponent q, std::size_t d);

/// prod_j (ceil(log2 n_j) + 1). Requires a nonempty list of positive sizes.
double rm_constant(const std::vector<std::size_t>& sizes);

/// Exact sup over all position tuples of |T(f 1_{A_1 x ... x A_d})(x)|.
/// Ties resolve to the lexicographically smallest tuple.
MaximalTruncation maximal_truncation(const Kernel& k, const ChainSystem& sys, const Signal& f,
                                     std::size_t threads = 1);

/// Maximal truncation as a sublinear operator, for norm ascent.
class MaximalTruncationOperator final : public SublinearOperator {
 public:
  MaximalTruncationOperator(Kernel k, ChainSystem sys);

  const WeightedSpace& domain() const override { return kernel_.domain(); }
  const WeightedSpace& codomain() const override { return kernel_.codomain(); }
  Signal apply(const Signal& f) const override;
  Kernel linearize(const Signal& f) const override;

 private:
  Kernel kernel_;
  ChainSystem sys_;
};

/// Smallest 1-based l with cumulative[l - 1] >= cumulative.back() / 2.
/// Returns 1 when the total is zero.
std::size_t half_mass_index(std::span<const double> cumulative);

/// Cumulative p-masses ||f||^p on F(i) = E_1(n_1) ∩ ... ∩ E_{d-1}(n_{d-1}) ∩ E_d(i).
std::vector<double> split_masses(const Signal& f, const ChainSystem& sys, Exponent p);

/// Same with `axis` playing the role of the last axis.
std::vector<double> split_masses(const Signal& f, const ChainSystem& sys, Exponent p,
                                 std::size_t axis);

/// half_mass_index(split_masses(f, sys, p)). The last chain must be nonempty.
std::size_t half_mass_split(const Signal& f, const ChainSystem& sys, Exponent p);

/// One checked inequality lhs <= rhs.
struct Inequality {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Node of the replayed induction. Axes at or beyond `active_axes` have been
/// reduced away (their chain is the single full factor).
struct CertificateNode {
  std::size_t active_axes = 0;
  std::size_t active_axis = 0;
  std::size_t chain_length = 0;
  bool leaf = false;
  std::size_t split = 0;
  std::vector<double> masses;
  double function_norm = 0.0;
  std::vector<Inequality> checks;
  std::vector<CertificateNode> children;
};

struct CKCertificate {
  double p = 1.0;
  double q = 2.0;
  double operator_bound = 0.0;
  double constant = 1.0;
  double relative_tolerance = 1e-9;
  CertificateNode root;

  /// True when every inequality in the tree holds.
  bool all_hold() const;
  std::size_t inequality_count() const;
  std::size_t node_count() const;
};

/// Replays the nested induction with the Hölder bound as the norm of T.
CKCertificate build_ck_certificate(const Kernel& k, const ChainSystem& sys, const Signal& f,
                                   Exponent p, Exponent q, double relative_tolerance = 1e-9);

nlohmann::json to_json(const CKCertificate& cert);

struct CKReport {
  double lower = 0.0;         ///< ascent lower bound on ||T_*||
  double upper = 0.0;         ///< Hölder upper bound on ||T||
  double constant = 0.0;      ///< ck_constant(p, q, d)
  double bound = 0.0;         ///< constant * upper
  bool holds = false;         ///< lower <= bound
  double plain_lower = 0.0;   ///< ascent lower bound on ||T||
  double empirical_ratio = 0.0;  ///< lower / plain_lower, diagnostic only
};

CKReport verify_ck_bound(const Kernel& k, const ChainSystem& sys, Exponent p, Exponent q,
                         const AscentConfig& config);

nlohmann::json to_json(const CKReport& report);

}  // namespace maxtrunc::ck
