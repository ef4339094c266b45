#pragma once

// Tensor layer over a Lie algebra: bivectors, trivectors, the coboundary
// cocommutator, the Schouten bracket and the mCYBE residual.

#include <string>
#include <vector>

#include <json.hpp>

#include "kads/liealg.hpp"

namespace kads {

/// Element of Λ²g in the wedge basis, a∧b = a⊗b − b⊗a.  Dense storage of
/// the n(n−1)/2 components with i < j.
template <class T>
class Bivector {
 public:
  explicit Bivector(int dim = gen::kDim) : n_(dim), c_(static_cast<std::size_t>(dim * (dim - 1) / 2)) {}

  int dim() const { return n_; }
  int size() const { return static_cast<int>(c_.size()); }

  /// Coefficient of T_i∧T_j; antisymmetric in (i, j).
  T get(int i, int j) const {
    if (i == j) return T{};
    return i < j ? c_[idx(i, j)] : T(-c_[idx(j, i)]);
  }
  void set(int i, int j, const T& v) {
    if (i == j) throw NotAntisymmetric("bivector diagonal component");
    if (i < j)
      c_[idx(i, j)] = v;
    else
      c_[idx(j, i)] = -v;
  }
  /// Adds v·T_i∧T_j.
  void add(int i, int j, const T& v) {
    if (i == j) return;
    if (i < j)
      c_[idx(i, j)] += v;
    else
      c_[idx(j, i)] -= v;
  }

  /// Index pairs (i<j) with nonzero coefficient.
  std::vector<std::pair<int, int>> support() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (!Coeff<T>::zero(c_[idx(i, j)])) out.emplace_back(i, j);
    return out;
  }
  bool is_zero() const { return support().empty(); }

  Bivector& operator+=(const Bivector& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Bivector& operator-=(const Bivector& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend Bivector operator+(Bivector a, const Bivector& b) { return a += b; }
  friend Bivector operator-(Bivector a, const Bivector& b) { return a -= b; }
  friend Bivector operator*(const T& s, Bivector a) {
    for (auto& v : a.c_) v = s * v;
    return a;
  }
  bool operator==(const Bivector&) const = default;

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Bivector<U> out(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) out.set(i, j, f(get(i, j)));
    return out;
  }

 private:
  int idx(int i, int j) const { return i * n_ - i * (i + 1) / 2 + (j - i - 1); }

  int n_;
  std::vector<T> c_;
};

/// Element of Λ³g: coefficients t_ijk (i<j<k) of the totally antisymmetric
/// tensor  Σ_{i<j<k} t_ijk Σ_σ sgn(σ) T_σ(i)⊗T_σ(j)⊗T_σ(k).
template <class T>
class Trivector {
 public:
  explicit Trivector(int dim = gen::kDim) : n_(dim), c_(static_cast<std::size_t>(dim * dim * dim)) {}

  int dim() const { return n_; }
  /// Requires i < j < k.
  const T& get(int i, int j, int k) const { return c_[(i * n_ + j) * n_ + k]; }
  T& at(int i, int j, int k) { return c_[(i * n_ + j) * n_ + k]; }

  std::vector<std::array<int, 3>> support() const {
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        for (int k = j + 1; k < n_; ++k)
          if (!Coeff<T>::zero(get(i, j, k))) out.push_back({i, j, k});
    return out;
  }
  /// Exact: number of nonzero components.  Numeric: max |component|.
  double norm() const {
    double acc = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        for (int k = j + 1; k < n_; ++k) acc = Coeff<T>::combine(acc, get(i, j, k));
    return acc;
  }

 private:
  int n_;
  std::vector<T> c_;
};

/// Dense rank-3 tensor over g, used for intermediate Schouten sums.
template <class T>
struct Tensor3 {
  int n;
  std::vector<T> c;
  explicit Tensor3(int dim) : n(dim), c(static_cast<std::size_t>(dim * dim * dim)) {}
  T& operator()(int a, int b, int k) { return c[(a * n + b) * n + k]; }
  const T& operator()(int a, int b, int k) const { return c[(a * n + b) * n + k]; }
};

/// δ(T_i) for every basis generator.
template <class T>
using CocommutatorTable = std::vector<Bivector<T>>;

/// δ(X) = [X⊗1 + 1⊗X, r] for X = T_x.
template <class T>
Bivector<T> cocommutator_of(const LieAlgebra<T>& g, const Bivector<T>& r, int x) {
  const int n = g.dim();
  std::vector<T> d(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const T rij = r.get(i, j);
      if (Coeff<T>::zero(rij)) continue;
      for (const auto& t : g.bracket_basis(x, i)) d[t.index * n + j] += rij * t.coef;
      for (const auto& t : g.bracket_basis(x, j)) d[i * n + t.index] += rij * t.coef;
    }
  Bivector<T> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.set(i, j, d[i * n + j]);
  return out;
}

template <class T>
CocommutatorTable<T> cocommutator(const LieAlgebra<T>& g, const Bivector<T>& r) {
  CocommutatorTable<T> out;
  out.reserve(static_cast<std::size_t>(g.dim()));
  for (int x = 0; x < g.dim(); ++x) out.push_back(cocommutator_of(g, r, x));
  return out;
}

/// Cocommutator of an arbitrary element X = Σ X_i T_i (linear in X).
template <class T>
Bivector<T> cocommutator_of(const LieAlgebra<T>& g, const Bivector<T>& r, const LieElement<T>& x) {
  Bivector<T> out(g.dim());
  for (int i = 0; i < g.dim(); ++i)
    if (!Coeff<T>::zero(x[i])) out += x[i] * cocommutator_of(g, r, i);
  return out;
}

/// Full tensor of [r12,r13] + [r12,r23] + [r13,r23].
template <class T>
Tensor3<T> schouten_tensor(const LieAlgebra<T>& g, const Bivector<T>& r) {
  const int n = g.dim();
  Tensor3<T> s(n);
  std::vector<std::pair<std::pair<int, int>, T>> nz;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      T v = r.get(i, j);
      if (!Coeff<T>::zero(v)) nz.push_back({{i, j}, v});
    }
  for (const auto& [ij, rij] : nz) {
    const auto [i, j] = ij;
    for (const auto& [kl, rkl] : nz) {
      const auto [k, l] = kl;
      const T c = rij * rkl;
      for (const auto& t : g.bracket_basis(i, k)) s(t.index, j, l) += c * t.coef;  // [r12, r13]
      for (const auto& t : g.bracket_basis(j, k)) s(i, t.index, l) += c * t.coef;  // [r12, r23]
      for (const auto& t : g.bracket_basis(j, l)) s(i, k, t.index) += c * t.coef;  // [r13, r23]
    }
  }
  return s;
}

namespace detail {
template <class T>
bool antisym_mismatch(const T& a, const T& b, double tol) {
  if constexpr (Coeff<T>::exact)
    return !(a + b).is_zero();
  else
    return Coeff<T>::magnitude(a + b) > tol;
}

/// Projects a totally antisymmetric tensor onto trivector components,
/// asserting antisymmetry under the two adjacent transpositions.
template <class T>
Trivector<T> to_trivector(const Tensor3<T>& s, double tol) {
  const int n = s.n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (antisym_mismatch(s(a, b, c), s(b, a, c), tol) || antisym_mismatch(s(a, b, c), s(a, c, b), tol))
          throw NotAntisymmetric("tensor is not totally antisymmetric");
      }
  Trivector<T> t(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) t.at(i, j, k) = s(i, j, k);
  return t;
}
}  // namespace detail

/// [[r, r]] as a trivector.  `tol` bounds the antisymmetry assertion for the
/// numeric layer.
template <class T>
Trivector<T> schouten(const LieAlgebra<T>& g, const Bivector<T>& r, double tol = 1e-9) {
  return detail::to_trivector(schouten_tensor(g, r), tol);
}

/// [X⊗1⊗1 + 1⊗X⊗1 + 1⊗1⊗X, t] for X = T_x.
template <class T>
Trivector<T> ad_action(const LieAlgebra<T>& g, const Trivector<T>& t, int x) {
  const int n = g.dim();
  Tensor3<T> full(n);
  // Expand the antisymmetric tensor, act on each slot, then re-project.
  for (const auto& [i, j, k] : t.support()) {
    const T v = t.get(i, j, k);
    const std::array<std::array<int, 3>, 6> perms{
        {{i, j, k}, {j, k, i}, {k, i, j}, {j, i, k}, {i, k, j}, {k, j, i}}};
    for (int p = 0; p < 6; ++p) {
      const auto [a, b, c] = perms[p];
      const T sv = p < 3 ? v : T(-v);
      for (const auto& e : g.bracket_basis(x, a)) full(e.index, b, c) += sv * e.coef;
      for (const auto& e : g.bracket_basis(x, b)) full(a, e.index, c) += sv * e.coef;
      for (const auto& e : g.bracket_basis(x, c)) full(a, b, e.index) += sv * e.coef;
    }
  }
  Trivector<T> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) out.at(i, j, k) = full(i, j, k);
  return out;
}

/// ad-action of every generator on [[r, r]].
template <class T>
std::vector<Trivector<T>> mcybe_tensor(const LieAlgebra<T>& g, const Bivector<T>& r, double tol = 1e-9) {
  const Trivector<T> s = schouten(g, r, tol);
  std::vector<Trivector<T>> out;
  out.reserve(static_cast<std::size_t>(g.dim()));
  for (int x = 0; x < g.dim(); ++x) out.push_back(ad_action(g, s, x));
  return out;
}

/// Max over generators of the trivector norm (count of nonzero components
/// when exact, max |component| when numeric).  Zero iff r solves the mCYBE.
template <class T>
double mcybe_residual(const LieAlgebra<T>& g, const Bivector<T>& r, double tol = 1e-9) {
  double worst = 0.0;
  for (const auto& t : mcybe_tensor(g, r, tol)) worst = std::max(worst, t.norm());
  return worst;
}

/// True iff [h, h] ⊂ h.
template <class T>
bool is_subalgebra(const LieAlgebra<T>& g, const std::vector<int>& h, double tol = 0.0) {
  std::vector<bool> in(static_cast<std::size_t>(g.dim()), false);
  for (int i : h) in[i] = true;
  for (int i : h)
    for (int j : h)
      for (const auto& t : g.bracket_basis(i, j))
        if (!in[t.index] && Coeff<T>::magnitude(t.coef) > tol) return false;
  return true;
}

/// δ(h) ⊂ h∧g.  Throws NotSubalgebra if h does not close.
template <class T>
bool coisotropy_check(const LieAlgebra<T>& g, const CocommutatorTable<T>& delta, const std::vector<int>& h,
                      double tol = 0.0) {
  if (!is_subalgebra(g, h, tol)) throw NotSubalgebra("generator set is not a subalgebra");
  std::vector<bool> in(static_cast<std::size_t>(g.dim()), false);
  for (int i : h) in[i] = true;
  for (int x : h) {
    const auto& d = delta[x];
    for (int i = 0; i < d.dim(); ++i)
      for (int j = i + 1; j < d.dim(); ++j)
        if (!in[i] && !in[j] && Coeff<T>::magnitude(d.get(i, j)) > tol) return false;
  }
  return true;
}

/// Dual bracket on g*: [ξ^i, ξ^j]* = Σ_k f^{ij}_k ξ^k where δ(T_k) = Σ_{i<j} f^{ij}_k T_i∧T_j.
template <class T>
LieAlgebra<T> dual_algebra(const CocommutatorTable<T>& delta, const std::vector<std::string>& names) {
  std::vector<std::string> dual_names;
  for (const auto& s : names) dual_names.push_back(s + "*");
  LieAlgebra<T> dual(dual_names);
  const int n = static_cast<int>(names.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Combination<T> v;
      for (int k = 0; k < n; ++k) {
        const T f = delta[k].get(i, j);
        if (!Coeff<T>::zero(f)) v.push_back({k, f});
      }
      if (!v.empty()) dual.set_bracket(i, j, std::move(v));
    }
  return dual;
}

/// Cocycle test: Jacobi residual of the dual bracket defined by δ.
template <class T>
double dual_jacobi_residual(const CocommutatorTable<T>& delta, const std::vector<std::string>& names) {
  return jacobi_residual(dual_algebra(delta, names));
}

/// Subalgebra spanned by the listed generators, reindexed 0..h.size()-1.
template <class T>
LieAlgebra<T> restrict_algebra(const LieAlgebra<T>& g, const std::vector<int>& h) {
  if (!is_subalgebra(g, h)) throw NotSubalgebra("generator set is not a subalgebra");
  std::vector<int> pos(static_cast<std::size_t>(g.dim()), -1);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < h.size(); ++a) {
    pos[h[a]] = static_cast<int>(a);
    names.push_back(g.names()[h[a]]);
  }
  LieAlgebra<T> out(names);
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = a + 1; b < h.size(); ++b) {
      Combination<T> v;
      for (const auto& t : g.bracket_basis(h[a], h[b])) v.push_back({pos[t.index], t.coef});
      if (!v.empty()) out.set_bracket(static_cast<int>(a), static_cast<int>(b), std::move(v));
    }
  return out;
}

/// Components of r on the listed generators; throws if r has support outside.
template <class T>
Bivector<T> restrict_bivector(const Bivector<T>& r, const std::vector<int>& h) {
  std::vector<int> pos(static_cast<std::size_t>(r.dim()), -1);
  for (std::size_t a = 0; a < h.size(); ++a) pos[h[a]] = static_cast<int>(a);
  Bivector<T> out(static_cast<int>(h.size()));
  for (const auto& [i, j] : r.support()) {
    if (pos[i] < 0 || pos[j] < 0) throw NotSubalgebra("bivector has support outside the subalgebra");
    out.set(pos[i], pos[j], r.get(i, j));
  }
  return out;
}

/// Image of r under the linear map phi (φ⊗φ applied to the tensor).
template <class T>
Bivector<T> push_forward(const BasisMap<T>& phi, const Bivector<T>& r) {
  const int n = r.dim();
  Bivector<T> out(n);
  for (const auto& [i, j] : r.support()) {
    const T v = r.get(i, j);
    for (int a = 0; a < n; ++a) {
      if (Coeff<T>::zero(phi.m[a][i])) continue;
      for (int b = 0; b < n; ++b) {
        if (a == b || Coeff<T>::zero(phi.m[b][j])) continue;
        out.add(a, b, v * phi.m[a][i] * phi.m[b][j]);
      }
    }
  }
  return out;
}

nlohmann::json to_json(const Bivector<Scalar>& r, const std::vector<std::string>& names);
nlohmann::json to_json(const Trivector<Scalar>& t, const std::vector<std::string>& names);
/// Keyed by generator name, components keyed "Ti^Tj".
nlohmann::json to_json(const CocommutatorTable<Scalar>& delta, const std::vector<std::string>& names);

Bivector<double> to_numeric(const Bivector<Scalar>& r, const NumericBindings& values);
Bivector<Scalar> substitute(const Bivector<Scalar>& r, const Bindings& b);
Bivector<Scalar> reduce(const Bivector<Scalar>& r, const RewriteSystem& rules);

}  // namespace kads
