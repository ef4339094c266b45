#pragma once

// Quadratic noncommutative algebras over the Scalar ring, presented by
// commutators in a fixed normal order, with a rewriting normal form.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "kads/scalar.hpp"
#include "kads/sklyanin.hpp"

namespace kads {

/// Generator indices; index order is the normal order.
using Word = std::vector<int>;

bool is_normal_ordered(const Word& w);

class NCPoly {
 public:
  NCPoly() = default;
  static NCPoly word(Word w, const Scalar& coef = Scalar(1));
  static NCPoly generator(int g) { return word({g}); }
  static NCPoly constant(const Scalar& c) { return word({}, c); }

  const std::map<Word, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;
  bool normal_ordered() const;

  void add(const Word& w, const Scalar& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator-(const NCPoly& a) { return NCPoly() - a; }
  /// Concatenation product (not normal ordered).
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(const Scalar& s, const NCPoly& a);
  bool operator==(const NCPoly&) const = default;

 private:
  std::map<Word, Scalar> terms_;
};

NCPoly substitute(const NCPoly& p, const Bindings& b);

enum class Strategy { leftmost, rightmost };

class NCAlgebra {
 public:
  /// `generators` in normal order; `images` are the commuting coordinate
  /// parameters used by the semiclassical comparison.
  NCAlgebra(std::string name, std::vector<std::string> generators, std::vector<Param> images);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& generator_name(int g) const { return names_[g]; }
  int index(std::string_view generator) const;
  Param image(int g) const { return images_[g]; }
  NCPoly gen(std::string_view generator) const { return NCPoly::generator(index(generator)); }

  /// Declares [a, b] = rhs.  Throws NotNormalOrdered unless every word of
  /// rhs is normal ordered.
  void set_commutator(int a, int b, const NCPoly& rhs);
  void set_commutator(std::string_view a, std::string_view b, const NCPoly& rhs) {
    set_commutator(index(a), index(b), rhs);
  }
  /// Declares [a, b] = normal_form(rhs).  Throws NotNormalOrdered if the
  /// reduction needs a pair whose commutator has not been declared yet.
  void set_commutator_normalized(std::string_view a, std::string_view b, const NCPoly& rhs);
  /// [g_a, g_b] as declared (zero if undeclared).
  NCPoly relation(int a, int b) const;

  NCAlgebra map_coefficients(const Bindings& b, std::string new_name) const;

 private:
  friend NCPoly normal_form(const NCAlgebra&, const NCPoly&, Strategy, std::size_t);
  NCPoly reduce(const NCPoly& p, Strategy s, std::size_t max_steps, bool declared_only) const;
  std::string name_;
  std::vector<std::string> names_;
  std::vector<Param> images_;
  // swap_[hi][lo] = [g_hi, g_lo] for hi > lo
  std::vector<std::vector<NCPoly>> swap_;
  std::vector<std::vector<bool>> declared_;
};

/// Rewrites every misordered adjacent pair g_hi g_lo → g_lo g_hi + [g_hi, g_lo]
/// until only normal-ordered words remain.  Throws NonTerminating past
/// max_steps or when a rewrite cycle drives coefficient exponents out of
/// range, and Error if a rewrite would raise the degree.
NCPoly normal_form(const NCAlgebra& a, const NCPoly& p, Strategy s = Strategy::leftmost,
                   std::size_t max_steps = 1'000'000);

NCPoly commutator(const NCAlgebra& a, const NCPoly& p, const NCPoly& q);

struct TripleCertificate {
  std::array<int, 3> generators{};
  NCPoly jacobi;   // [a,[b,c]] + cyclic
  NCPoly overlap;  // leftmost minus rightmost normal form of the descending word
  bool zero() const { return jacobi.is_zero() && overlap.is_zero(); }
};
std::vector<TripleCertificate> jacobi_certificate(const NCAlgebra& a);
bool certified(const std::vector<TripleCertificate>& cert);

struct CasimirResult {
  int generator = 0;
  NCPoly commutator;
};
std::vector<CasimirResult> casimir_check(const NCAlgebra& a, const NCPoly& c, const std::vector<int>& subset);

/// Normal order of the curved algebras.
enum class MonomialOrder {
  /// (x0, x1, x2, x3) and (s4, s0, s1, s2, s3).  Rewriting terminates and
  /// every relation is reduced to this order.
  terminating,
  /// (x0, x1, x3, x2) and (s0, s1, s3, s2, s4), the orders of the printed
  /// relations.  Rewriting cycles here, e.g. x3 x1 x3 reduces to a
  /// combination containing (η/κ)² x3 x1 x3, so normal_form throws
  /// NonTerminating on such words.
  printed,
};

// Built-in algebras, formal in η, κ⁻¹, ϑ.
NCAlgebra kappa_minkowski_algebra();
NCAlgebra twisted_kappa_minkowski_algebra();
NCAlgebra first_order_kads_algebra(MonomialOrder order = MonomialOrder::terminating);
/// Space sector x1, x2, x3.
NCAlgebra quantum_sphere_algebra(MonomialOrder order = MonomialOrder::terminating);
NCAlgebra ambient_algebra(MonomialOrder order = MonomialOrder::terminating);

/// x1² + x2² + x3² + (η/κ) x1 x2 in an algebra with generators x1, x2, x3.
NCPoly quantum_sphere_casimir(const NCAlgebra& a);
/// s1² + s2² + s3² + (η/κ) s1 s2.
NCPoly ambient_space_casimir(const NCAlgebra& a);
/// s4² + η² s0² − (η²/κ) s0 s4 − η² 𝔰.
NCPoly ambient_pseudosphere_casimir(const NCAlgebra& a);
/// κ⁻¹(s4𝔰 + 𝔰s4) − (η²/κ²) s0𝔰, the displayed [𝔰, s0].
NCPoly displayed_space_casimir_s0(const NCAlgebra& a);
/// −(η²/κ)(s0𝔰 + 𝔰s0) + (η²/κ²) 𝔰s4, the displayed [𝔰, s4].
NCPoly displayed_space_casimir_s4(const NCAlgebra& a);

/// Pairwise relation differences after η → 0, generator renaming and
/// setting the listed generators to 1.  Empty when the limit matches.
struct LimitDiff {
  std::string a, b;
  std::string difference;
};
std::vector<LimitDiff> eta_limit_diff(const NCAlgebra& algebra, const NCAlgebra& target,
                                      const std::map<std::string, std::string>& rename = {},
                                      const std::vector<std::string>& unit_generators = {});

/// Part of total degree 1 in the deformation parameters (κ⁻¹, ϑ).
Scalar deformation_degree_one(const Scalar& p);
/// Commutative image of an NCPoly over the coordinate parameters.
Scalar commutative_image(const NCAlgebra& a, const NCPoly& p);

/// Degree-1 commutative image of every [g_a, g_b] minus the Poisson bracket
/// of the matching symbolic table.  Empty when the semiclassical limit
/// matches.
std::vector<LimitDiff> semiclassical_diff(const NCAlgebra& a, const SymbolicTable& table);

std::string to_string(const NCAlgebra& a, const NCPoly& p);
nlohmann::json to_json(const NCAlgebra& a, const std::vector<TripleCertificate>& cert);

}  // namespace kads
