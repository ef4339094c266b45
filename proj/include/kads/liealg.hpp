#pragma once

// Kinematical (A)dS/Poincaré Lie algebra family with the cosmological
// constant as a formal or numeric coefficient.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kads/scalar.hpp"

namespace kads {

/// Fixed generator order of the kinematical basis.
namespace gen {
inline constexpr int P0 = 0;
inline constexpr int P1 = 1, P2 = 2, P3 = 3;
inline constexpr int K1 = 4, K2 = 5, K3 = 6;
inline constexpr int J1 = 7, J2 = 8, J3 = 9;
inline constexpr int kDim = 10;
inline constexpr int P(int a) { return a; }      // a = 1..3
inline constexpr int K(int a) { return 3 + a; }  // a = 1..3
inline constexpr int J(int a) { return 6 + a; }  // a = 1..3
}  // namespace gen

const std::array<std::string, gen::kDim>& kinematical_names();

template <class T>
struct BasisTerm {
  int index;
  T coef;
};

template <class T>
using Combination = std::vector<BasisTerm<T>>;

/// Vector in the algebra: one coefficient per basis generator.
template <class T>
struct LieElement {
  std::vector<T> c;

  explicit LieElement(int dim = gen::kDim) : c(static_cast<std::size_t>(dim)) {}
  static LieElement basis(int i, int dim = gen::kDim) {
    LieElement e(dim);
    e.c[i] = T(1);
    return e;
  }
  int dim() const { return static_cast<int>(c.size()); }
  T& operator[](int i) { return c[i]; }
  const T& operator[](int i) const { return c[i]; }

  LieElement& operator+=(const LieElement& o) {
    for (int i = 0; i < dim(); ++i) c[i] += o.c[i];
    return *this;
  }
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) {
    for (int i = 0; i < a.dim(); ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend LieElement operator*(const T& s, LieElement a) {
    for (auto& v : a.c) v = s * v;
    return a;
  }
  bool operator==(const LieElement&) const = default;
};

/// Structure constants [T_i, T_j] = sum_k c_ij^k T_k.  Entries are stored for
/// i < j; the i > j half is derived by antisymmetry.
template <class T>
class LieAlgebra {
 public:
  explicit LieAlgebra(std::vector<std::string> names)
      : names_(std::move(names)), table_(names_.size() * names_.size()) {}

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  /// Sets [T_i, T_j]; accepts either index order.
  void set_bracket(int i, int j, Combination<T> value) {
    if (i == j) throw Error("set_bracket: [T_i, T_i] is zero");
    if (i > j) {
      std::swap(i, j);
      for (auto& t : value) t.coef = -t.coef;
    }
    std::erase_if(value, [](const BasisTerm<T>& t) { return Coeff<T>::zero(t.coef); });
    Combination<T> neg = value;
    for (auto& t : neg) t.coef = -t.coef;
    at(i, j) = std::move(value);
    at(j, i) = std::move(neg);
  }

  /// [T_i, T_j] for any i, j.
  const Combination<T>& bracket_basis(int i, int j) const { return table_[i * dim() + j]; }

  template <class F>
  auto map_coefficients(F&& f) const -> LieAlgebra<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    LieAlgebra<U> out(names_);
    for (int i = 0; i < dim(); ++i)
      for (int j = i + 1; j < dim(); ++j) {
        Combination<U> v;
        for (const auto& t : bracket_basis(i, j)) v.push_back({t.index, f(t.coef)});
        if (!v.empty()) out.set_bracket(i, j, std::move(v));
      }
    return out;
  }

 private:
  Combination<T>& at(int i, int j) { return table_[i * dim() + j]; }

  std::vector<std::string> names_;
  std::vector<Combination<T>> table_;
};

/// The (A)dS family with cosmological constant `lambda`; Poincaré at 0.
LieAlgebra<Scalar> ads_algebra(const Scalar& lambda = Scalar(param::Lambda));
LieAlgebra<double> ads_algebra_numeric(double lambda);
/// Hand-written Poincaré table, used to cross-check the Lambda -> 0 limit.
LieAlgebra<Scalar> poincare_algebra();

LieAlgebra<Scalar> substitute(const LieAlgebra<Scalar>& g, const Bindings& b);
LieAlgebra<double> to_numeric(const LieAlgebra<Scalar>& g, const NumericBindings& values);

template <class T>
LieElement<T> bracket(const LieAlgebra<T>& g, const LieElement<T>& x, const LieElement<T>& y) {
  LieElement<T> out(g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    if (Coeff<T>::zero(x[i])) continue;
    for (int j = 0; j < g.dim(); ++j) {
      if (i == j || Coeff<T>::zero(y[j])) continue;
      const T xy = x[i] * y[j];
      for (const auto& t : g.bracket_basis(i, j)) out[t.index] += xy * t.coef;
    }
  }
  return out;
}

struct JacobiViolation {
  int i, j, k;
};

/// Residual components of the Jacobi identity over all triples i<j<k.
template <class T>
std::vector<std::pair<JacobiViolation, LieElement<T>>> jacobi_violations(const LieAlgebra<T>& g) {
  std::vector<std::pair<JacobiViolation, LieElement<T>>> out;
  const int n = g.dim();
  auto basis = [n](int i) { return LieElement<T>::basis(i, n); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        auto a = bracket(g, basis(i), bracket(g, basis(j), basis(k)));
        auto b = bracket(g, basis(j), bracket(g, basis(k), basis(i)));
        auto c = bracket(g, basis(k), bracket(g, basis(i), basis(j)));
        auto sum = a + b + c;
        bool nonzero = false;
        for (const auto& v : sum.c) nonzero = nonzero || !Coeff<T>::zero(v);
        if (nonzero) out.push_back({{i, j, k}, sum});
      }
  return out;
}

/// Exact layer: number of nonzero residual components.  Numeric layer: max |component|.
template <class T>
double jacobi_residual(const LieAlgebra<T>& g) {
  double acc = 0.0;
  for (const auto& [where, v] : jacobi_violations(g))
    for (const auto& x : v.c) acc = Coeff<T>::combine(acc, x);
  return acc;
}

template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

/// Linear map on the algebra given by its matrix: image of T_j is column j.
template <class T>
struct BasisMap {
  std::vector<std::vector<T>> m;  // m[row][col]

  explicit BasisMap(int dim = gen::kDim)
      : m(static_cast<std::size_t>(dim), std::vector<T>(static_cast<std::size_t>(dim))) {}
  static BasisMap identity(int dim = gen::kDim) {
    BasisMap b(dim);
    for (int i = 0; i < dim; ++i) b.m[i][i] = T(1);
    return b;
  }
  int dim() const { return static_cast<int>(m.size()); }

  LieElement<T> apply(const LieElement<T>& x) const {
    LieElement<T> y(dim());
    for (int r = 0; r < dim(); ++r)
      for (int c = 0; c < dim(); ++c)
        if (!Coeff<T>::zero(m[r][c]) && !Coeff<T>::zero(x[c])) y[r] += m[r][c] * x[c];
    return y;
  }
  /// (this ∘ o)
  BasisMap compose(const BasisMap& o) const {
    BasisMap out(dim());
    for (int r = 0; r < dim(); ++r)
      for (int k = 0; k < dim(); ++k) {
        if (Coeff<T>::zero(m[r][k])) continue;
        for (int c = 0; c < dim(); ++c)
          if (!Coeff<T>::zero(o.m[k][c])) out.m[r][c] += m[r][k] * o.m[k][c];
      }
    return out;
  }
};

namespace detail {
inline Scalar reduce_if(const Scalar& v, const RewriteSystem* rules) { return rules ? rules->reduce(v) : v; }
inline double reduce_if(double v, const RewriteSystem*) { return v; }
inline bool near_zero(const Scalar& v) { return v.is_zero(); }
inline bool near_zero(double v) { return std::abs(v) < 1e-12; }
}  // namespace detail

/// Automorphism induced by a rotation R of the three vector triples:
/// P_0 fixed, (P_a), (K_a), (J_a) each sent to sum_b R_ba T_b.  Orthogonality
/// and det R = 1 are checked exactly (after `rules`, e.g. c^2+s^2 -> 1) for
/// Scalars and to 1e-12 for doubles.
template <class T>
BasisMap<T> rotate_basis(const Mat3<T>& R, const RewriteSystem* rules = nullptr) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T dot{};
      for (int k = 0; k < 3; ++k) dot += R[k][i] * R[k][j];
      if (i == j) dot -= T(1);
      if (!detail::near_zero(detail::reduce_if(dot, rules))) throw NotOrthogonal("rotation matrix is not orthogonal");
    }
  T det = R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1]) - R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0]) +
          R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0]);
  if (!detail::near_zero(detail::reduce_if(det - T(1), rules)))
    throw NotOrthogonal("rotation matrix has determinant != 1");

  BasisMap<T> map(gen::kDim);
  map.m[gen::P0][gen::P0] = T(1);
  for (int base : {0, 3, 6})
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) map.m[base + 1 + a][base + 1 + b] = R[a][b];
  return map;
}

/// Residual of  phi([T_i,T_j]) = [phi T_i, phi T_j]  over all pairs.
template <class T>
double automorphism_residual(const LieAlgebra<T>& g, const BasisMap<T>& phi, const RewriteSystem* rules = nullptr) {
  double acc = 0.0;
  const int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto lhs = phi.apply(bracket(g, LieElement<T>::basis(i, n), LieElement<T>::basis(j, n)));
      auto rhs = bracket(g, phi.apply(LieElement<T>::basis(i, n)), phi.apply(LieElement<T>::basis(j, n)));
      auto d = lhs - rhs;
      for (auto& v : d.c) acc = Coeff<T>::combine(acc, detail::reduce_if(v, rules));
    }
  return acc;
}

/// Rotation  Rz(-phi) * Ry(theta)  in terms of (cos, sin) pairs; its third
/// column is (st*cp, -st*sp, ct).
template <class T>
Mat3<T> sphere_rotation(const T& ct, const T& st, const T& cp, const T& sp) {
  // Ry(theta) = [[ct,0,st],[0,1,0],[-st,0,ct]],  Rz(-phi) = [[cp,sp,0],[-sp,cp,0],[0,0,1]]
  Mat3<T> R;
  R[0] = {cp * ct, sp, cp * st};
  R[1] = {-(sp * ct), cp, -(sp * st)};
  R[2] = {-st, T(0), ct};
  return R;
}

template <class T>
Mat3<T> transpose(const Mat3<T>& R) {
  Mat3<T> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = R[j][i];
  return out;
}

/// Structure constants keyed "[Ti,Tj]" -> {"Tk": "coefficient"}.
nlohmann::json to_json(const LieAlgebra<Scalar>& g);

}  // namespace kads
