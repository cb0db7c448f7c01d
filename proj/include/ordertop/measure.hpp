#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ordertop/certificate.hpp"

namespace ordertop {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& r);
/// Accepts "n", "-n" and "n/d".
Rational parse_rational(const std::string& s);
Rational rational_pow(const Rational& r, unsigned k);

/// Rational-valued step function on [0,1) that is constant on the dyadic
/// intervals of some level.
///
/// Stored as a binary tree over dyadic cells: a leaf is constant on its cell,
/// an inner node splits the cell into halves. Inner nodes never represent a
/// constant function, so the tree (and `level()`) is unique. Subtrees are
/// shared, which keeps sets like "every right half at level 60" small.
class StepFunction {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  StepFunction();  // zero
  explicit StepFunction(const Rational& c);

  /// Dense coefficients c_0..c_{2^level - 1}; collapses to canonical form.
  static StepFunction from_dense(std::size_t level, const std::vector<Rational>& coeffs);
  /// c times the indicator of [index * 2^-level, (index + 1) * 2^-level).
  static StepFunction interval(std::size_t level, std::uint64_t index, const Rational& c = 1);

  /// Minimal level at which the function is constant on every cell.
  std::size_t level() const;
  /// Coefficients at `level` >= level(). Throws std::length_error past 2^24 cells.
  std::vector<Rational> dense(std::size_t level) const;
  std::vector<Rational> dense() const { return dense(level()); }
  /// Value on the cell [index * 2^-level, ...), which must lie inside one piece.
  Rational value_at(std::size_t level, std::uint64_t index) const;

  Rational integral() const;
  Rational sup_abs() const;
  bool is_zero() const;
  bool is_nonnegative() const;

  StepFunction operator+(const StepFunction& o) const;
  StepFunction operator-(const StepFunction& o) const;
  StepFunction operator*(const StepFunction& o) const;
  StepFunction operator-() const;
  StepFunction scaled(const Rational& c) const;
  StepFunction abs() const;
  StepFunction pow(unsigned k) const;
  StepFunction min(const StepFunction& o) const;
  StepFunction max(const StepFunction& o) const;
  /// |f| on {|f| > c}, 0 elsewhere.
  StepFunction above_cutoff(const Rational& c) const;

  /// Structural equality, which is equality of functions.
  bool operator==(const StepFunction& o) const;
  bool operator!=(const StepFunction& o) const { return !(*this == o); }

  /// "level;c0,c1,..." at the minimal level.
  std::string to_text() const;
  /// Inverse of to_text; non-canonical input is accepted and collapsed.
  static StepFunction parse(const std::string& text);

  const NodePtr& root() const { return root_; }
  explicit StepFunction(NodePtr root) : root_(std::move(root)) {}

 private:
  NodePtr root_;
};

/// Dyadic subset of [0,1), stored as its indicator.
class DyadicSet {
 public:
  DyadicSet() = default;
  static DyadicSet whole() { return DyadicSet(StepFunction(Rational(1))); }
  static DyadicSet interval(std::size_t level, std::uint64_t index) {
    return DyadicSet(StepFunction::interval(level, index));
  }
  /// membership at the given level, one flag per cell.
  static DyadicSet from_membership(std::size_t level, const std::vector<bool>& in);
  /// Throws std::invalid_argument unless chi takes only the values 0 and 1.
  static DyadicSet from_indicator(StepFunction chi);

  const StepFunction& indicator() const { return chi_; }
  std::size_t level() const { return chi_.level(); }
  std::vector<bool> membership(std::size_t level) const;
  Rational measure() const { return chi_.integral(); }
  bool empty() const { return chi_.is_zero(); }

  DyadicSet operator|(const DyadicSet& o) const { return DyadicSet(chi_.max(o.chi_)); }
  DyadicSet operator&(const DyadicSet& o) const { return DyadicSet(chi_.min(o.chi_)); }
  DyadicSet operator-(const DyadicSet& o) const { return DyadicSet((chi_ - o.chi_).max({})); }
  DyadicSet operator^(const DyadicSet& o) const { return DyadicSet((chi_ - o.chi_).abs()); }
  bool operator==(const DyadicSet& o) const { return chi_ == o.chi_; }

 private:
  explicit DyadicSet(StepFunction chi) : chi_(std::move(chi)) {}
  StepFunction chi_;
};

/// Nonnegative real radicand^(1/root) with a rational radicand, kept in
/// lowest root form (root is reduced whenever the radicand is a perfect power).
class RootRational {
 public:
  RootRational() : radicand_(0), root_(1) {}
  RootRational(const Rational& r) : radicand_(r), root_(1) { check(); }  // NOLINT
  RootRational(const Rational& radicand, unsigned root);

  const Rational& radicand() const { return radicand_; }
  unsigned root() const { return root_; }
  bool is_rational() const { return root_ == 1; }
  std::optional<Rational> as_rational() const;
  long double approx() const;

  RootRational operator*(const RootRational& o) const;
  RootRational pow(unsigned k) const { return RootRational(rational_pow(radicand_, k), root_); }
  /// Exact comparison by raising both sides to a common integer power.
  int compare(const RootRational& o) const;
  bool operator==(const RootRational& o) const { return compare(o) == 0; }
  bool operator<(const RootRational& o) const { return compare(o) < 0; }
  bool operator<=(const RootRational& o) const { return compare(o) <= 0; }

  std::string to_string() const;

 private:
  void check() const;
  void reduce();
  Rational radicand_;
  unsigned root_;
};

/// Exact k-th root of a nonnegative rational, if it has one.
std::optional<Rational> exact_root(const Rational& r, unsigned k);

/// Nonnegative function, constant on finitely many disjoint dyadic intervals,
/// whose values may be irrational: each piece stores c^power.
class PowerCoefficientFunction {
 public:
  struct Piece {
    std::size_t level;
    std::uint64_t index;
    Rational powered;  // c^power
  };

  explicit PowerCoefficientFunction(unsigned power);
  void add_piece(std::size_t level, std::uint64_t index, const Rational& powered);

  unsigned power() const { return power_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Value on a piece as a root expression.
  RootRational coefficient(const Piece& piece) const { return RootRational(piece.powered, power_); }
  /// Pointwise product.
  PowerCoefficientFunction operator*(const PowerCoefficientFunction& o) const;
  /// Integral of |f|^r. Exact; throws std::domain_error when several pieces
  /// contribute irrational terms (no exact sum exists in this representation).
  RootRational norm_power(unsigned r) const;

 private:
  unsigned power_;
  std::vector<Piece> pieces_;
};

Rational integral(const StepFunction& f);
Rational pairing(const StepFunction& f, const StepFunction& g);
/// Integral of |f|^p.
Rational p_power_norm(const StepFunction& f, unsigned p);
/// Integral of min(|f|, chi_E).
Rational rho_E(const StepFunction& f, const DyadicSet& e);
/// Max over generators of |<f, g>|. Throws std::invalid_argument on an empty list.
Rational gamma_K(const StepFunction& f, const std::vector<StepFunction>& generators);

struct UiRow {
  Rational cutoff;
  Rational tail;  // sup over the family of the integral of |f| over {|f| > cutoff}
};
/// Throws std::invalid_argument unless cutoffs are positive and increasing.
std::vector<UiRow> uniform_integrability_profile(const std::vector<StepFunction>& family,
                                                 const std::vector<Rational>& cutoffs);

struct T5Tree {
  std::vector<DyadicSet> a;  // a[n-1]: union of the right halves of the level n-1 cells
  std::vector<DyadicSet> b;  // b[n-1]: [0, 2^-n)
};
T5Tree t5_tree(std::size_t levels);
DyadicSet t5_a(std::size_t n);
DyadicSet t5_b(std::size_t n);
/// (1/m) chi_{A_n} + m chi_{B_n}.
StepFunction t5_family_element(std::uint64_t m, std::size_t n);
Certificate t5_symmetric_difference_certificate(std::size_t max_n);

struct EscapeWitness {
  std::uint64_t m = 0;
  std::size_t n = 0;
  StepFunction f;
  Rational gamma;
};
/// How m and n are chosen. Hull uses gamma_K itself; with signed generators
/// gamma_K(chi_{A_n}) can exceed gamma_K(chi_[0,1)) and the result can miss
/// gamma <= 1. Solid uses the gauge of the solid hull, max_i of the integral
/// of |f g_i|, which dominates gamma_K and is monotone in |f|, so the result
/// always has gamma <= 1. Both agree on nonnegative generators.
enum class EscapeGauge { Solid, Hull };

/// Returns m, n, f = (1/m) chi_{A_n} + m chi_{B_n} and gamma = gamma_K(f).
/// Throws NoEscapeWithinDepth when no n <= max_depth works.
EscapeWitness t5_escape_witness(const std::vector<StepFunction>& generators,
                                std::size_t max_depth = 128,
                                EscapeGauge gauge = EscapeGauge::Solid);

/// Carriers [2^-n, 2^-n+1) with e_n = (n^alpha)^(1/q) chi_{A_n}, g and h as in
/// the separation construction; h has lambda_n = 1/(n(n+1)).
/// Throws ParameterOutOfRange unless 1 <= p < q and 1 < alpha < q/p.
Certificate sigma_pq_separation(unsigned p, unsigned q, const Rational& alpha, std::size_t n_max,
                                const Rational& epsilon, std::size_t search_max = 200);
/// n^2 chi_{A_n} against h = sum chi_{A_k} / (mu(A_k) k^(3/2)), k <= n_max.
Certificate tau_mu_sigma1_separation(std::size_t n_max);
/// The exact pairing n^(2 - alpha) at alpha = 3/2, i.e. sqrt(n).
RootRational tau_mu_pairing(std::size_t n);

struct HolderSides {
  long double left = 0, right = 0;
  bool holds = false;
};
HolderSides holder_e4_sides(const StepFunction& f, const StepFunction& g, unsigned p, unsigned q,
                            long double tol = 1e-9L);
bool holder_e4_check(const StepFunction& f, const StepFunction& g, unsigned p, unsigned q,
                     long double tol = 1e-9L);

struct AeSubsequence {
  std::vector<std::size_t> indices;
  std::vector<Rational> rho;  // rho_[0,1)(seq_{n_k} - f) per selected index
  /// Bound on the measure of the points where |f_{n_k} - f| >= 2^-floor(k/2)
  /// for some k past the selection: sum over k > K of 2^-ceil(k/2).
  Rational exceptional_measure_bound;
};
/// Greedy selection with rho(seq_{n_k} - f) <= 2^-k, k = 1, 2, ...
/// Throws NotConvergentInMeasure when indices remain but none reaches the
/// next threshold.
AeSubsequence measure_ae_subsequence(const std::vector<StepFunction>& seq,
                                     const StepFunction& f_limit);

}  // namespace ordertop
