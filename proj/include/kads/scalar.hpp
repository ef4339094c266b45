#pragma once

// Exact coefficient ring: sparse multivariate polynomials with rational
// coefficients over a fixed, closed set of formal parameters.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kads/errors.hpp"

namespace kads {

using Rational = mpq_class;

/// A formal parameter.  The set is closed at build time; `id` indexes the
/// exponent vector of a Monomial and fixes the lexicographic tie-break order.
struct Param {
  std::uint8_t id = 0;
  friend constexpr auto operator<=>(Param, Param) = default;
};

namespace param {

inline constexpr Param eta{0};
inline constexpr Param kinv{1};
inline constexpr Param vartheta{2};
inline constexpr Param alpha1{3};
inline constexpr Param alpha2{4};
inline constexpr Param alpha3{5};
inline constexpr Param beta1{6};
inline constexpr Param beta2{7};
inline constexpr Param beta3{8};
inline constexpr Param Lambda{9};
inline constexpr Param R{10};
inline constexpr Param a1{11};
inline constexpr Param a2{12};
inline constexpr Param a3{13};
// algebraic stand-ins for cos/sin of the sphere angles
inline constexpr Param ct{14};
inline constexpr Param st{15};
inline constexpr Param cp{16};
inline constexpr Param sp{17};
// commuting spacetime coordinates (local and ambient)
inline constexpr Param x0{18};
inline constexpr Param x1{19};
inline constexpr Param x2{20};
inline constexpr Param x3{21};
inline constexpr Param s4{22};
inline constexpr Param s0{23};
inline constexpr Param s1{24};
inline constexpr Param s2{25};
inline constexpr Param s3{26};

inline constexpr int kNumNamed = 27;
inline constexpr int kAnsatzDim = 10;
inline constexpr int kNumAnsatz = kAnsatzDim * (kAnsatzDim - 1) / 2;
inline constexpr int kCount = kNumNamed + kNumAnsatz;

/// Coefficient r^{ij} (i < j) of the generic 45-parameter r-matrix ansatz.
Param ansatz(int i, int j);

inline constexpr std::array<Param, 3> alpha{alpha1, alpha2, alpha3};
inline constexpr std::array<Param, 3> beta{beta1, beta2, beta3};
inline constexpr std::array<Param, 4> local_coords{x0, x1, x2, x3};
/// Ambient coordinates in matrix-row order (s4, s0, s1, s2, s3).
inline constexpr std::array<Param, 5> ambient_coords{s4, s0, s1, s2, s3};

}  // namespace param

std::string_view param_name(Param p);
std::optional<Param> param_from_name(std::string_view name);
/// Weight in the monomial order.  Deformation scales (eta, kinv, vartheta,
/// Lambda, R) weigh 0; every other parameter weighs 1.
int param_weight(Param p);

class Monomial {
 public:
  using Exponents = std::array<std::uint8_t, param::kCount>;

  Monomial() = default;
  static Monomial of(Param p, unsigned power = 1);

  unsigned exponent(Param p) const { return exp_[p.id]; }
  void set_exponent(Param p, unsigned e);
  const Exponents& exponents() const { return exp_; }

  unsigned degree() const;
  unsigned weighted_degree() const;
  bool is_one() const;

  /// True iff `d` divides *this.
  bool divisible_by(const Monomial& d) const;
  Monomial operator*(const Monomial& o) const;
  /// Exact quotient; requires divisible_by(d).
  Monomial operator/(const Monomial& d) const;

  bool operator==(const Monomial&) const = default;

 private:
  Exponents exp_{};
};

/// Monomial order: weighted degree, then total degree, then lexicographic
/// over the parameter order (a larger exponent on an earlier parameter wins).
std::strong_ordering compare(const Monomial& a, const Monomial& b);

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

struct Term {
  Monomial mono;
  Rational coef;
};

class Scalar;
using Bindings = std::map<Param, Scalar>;
using NumericBindings = std::map<Param, double>;

/// Immutable-by-convention polynomial value.  Terms are kept sorted in
/// decreasing monomial order, with no zero coefficients.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v);  // NOLINT(google-explicit-constructor)
  Scalar(Param p);  // NOLINT(google-explicit-constructor)
  Scalar(const Monomial& m, const Rational& c);

  static Scalar from_terms(std::vector<Term> terms);
  static Scalar rational(long num, long den);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant Scalar; throws UnboundParameter otherwise.
  Rational constant_value() const;
  const Term& leading_term() const;
  unsigned degree() const;
  std::set<Param> parameters() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);

  bool operator==(const Scalar& o) const;

 private:
  std::vector<Term> terms_;
};

Scalar pow(const Scalar& base, unsigned e);
bool is_zero(const Scalar& s);
inline bool is_zero(double v) { return v == 0.0; }

/// Simultaneous substitution.  Throws CyclicSubstitution if any bound
/// parameter occurs in a binding value.
Scalar substitute(const Scalar& p, const Bindings& bindings);
double eval_numeric(const Scalar& p, const NumericBindings& values);
Scalar derivative(const Scalar& p, Param x);
/// Divides by the leading coefficient (zero stays zero).
Scalar monic(const Scalar& p);
/// Largest monomial in `params` dividing every term of p.
Monomial monomial_content(const Scalar& p, std::span<const Param> params);
/// Exact division of every term by `m`; requires m | every term.
Scalar divide_monomial(const Scalar& p, const Monomial& m);

std::string to_string(const Scalar& p);
std::string to_string(const Monomial& m);
Scalar parse_scalar(std::string_view text);

/// One rewrite rule  lhs -> rhs  with every monomial of rhs strictly below lhs.
struct Rule {
  Monomial lhs;
  Scalar rhs;
};

/// Terminating monomial rewrite system.  Construction rejects any rule whose
/// right-hand side does not decrease the monomial order.
class RewriteSystem {
 public:
  RewriteSystem() = default;
  explicit RewriteSystem(std::vector<Rule> rules);
  /// Orients each nonzero polynomial  p  as  lm(p) -> lm(p) - p/lc(p).
  static RewriteSystem from_polynomials(std::span<const Scalar> polys);

  const std::vector<Rule>& rules() const { return rules_; }
  Scalar reduce(const Scalar& p) const;

 private:
  std::vector<Rule> rules_;
};

Scalar reduce_mod(const Scalar& p, const RewriteSystem& rules);

/// Numeric or exact "is this residual zero" used by the generic tensor code.
template <class T>
struct Coeff;

template <>
struct Coeff<Scalar> {
  static bool zero(const Scalar& v) { return v.is_zero(); }
  /// Exact layer norm contribution: 1 per nonzero component.
  static double magnitude(const Scalar& v) { return v.is_zero() ? 0.0 : 1.0; }
  /// Residual norms count nonzero components in the exact layer.
  static double combine(double acc, const Scalar& v) { return acc + magnitude(v); }
  static constexpr bool exact = true;
};

template <>
struct Coeff<double> {
  static bool zero(double v) { return v == 0.0; }
  static double magnitude(double v) { return v < 0 ? -v : v; }
  static double combine(double acc, double v) { return acc < magnitude(v) ? magnitude(v) : acc; }
  static constexpr bool exact = false;
};

}  // namespace kads
