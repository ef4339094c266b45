#pragma once

// Poisson structures on the (A)dS coset: the Sklyanin bracket evaluated
// through invariant fields, closed-form bracket tables, and their checks.

#include <array>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "kads/bialgebra.hpp"
#include "kads/group_geom.hpp"
#include "kads/scalar.hpp"

namespace kads {

enum class TableKind {
  local,              // all-orders local coordinates
  twisted_local,      // local plus the ϑ J3∧P0 twist
  ambient,            // (s4, s0, s1, s2, s3)
  kappa_minkowski,    // Λ = 0
  twisted_minkowski,  // Λ = 0 with twist
  first_order_local,  // η-linear truncation of the local table
  quadratic_su2,      // space sector (x1, x2, x3) at first order in η
};

std::string_view table_name(TableKind kind);
const std::vector<std::string>& table_coordinates(TableKind kind);
inline int table_dim(TableKind kind) { return static_cast<int>(table_coordinates(kind).size()); }

/// Parameters of a closed-form table.  jj is the coefficient η/κ of the
/// space-space sector; for Λ > 0 it is an independent real standing in for
/// the imaginary η.
template <class T>
struct TableParams {
  T eta2{};  // −Λ
  T kinv{};
  T jj{};
  T vartheta{};
};

template <class T>
using SquareMat = std::vector<std::vector<T>>;

template <class T>
SquareMat<T> zero_square(int n) {
  return SquareMat<T>(static_cast<std::size_t>(n), std::vector<T>(static_cast<std::size_t>(n), T{}));
}

namespace detail {
template <class T>
void put(SquareMat<T>& b, int i, int j, const T& v) {
  b[i][j] = v;
  b[j][i] = -v;
}
}  // namespace detail

/// Full antisymmetric matrix {x_i, x_j} of a closed-form table at x.
template <class T>
SquareMat<T> table_eval(TableKind kind, const std::vector<T>& x, const TableParams<T>& p) {
  const int n = table_dim(kind);
  if (static_cast<int>(x.size()) != n) throw Error("table_eval: coordinate count mismatch");
  auto b = zero_square<T>(n);
  using detail::put;
  switch (kind) {
    case TableKind::local:
    case TableKind::twisted_local: {
      if constexpr (std::is_same_v<T, Scalar>) {
        throw Error("table_eval: the all-orders local table has no polynomial form");
      } else {
        const CurvTrig<T> tr(p.eta2);
        const T c1 = tr.Ch(x[1]), c2 = tr.Ch(x[2]), c3 = tr.Ch(x[3]);
        const T s1 = tr.Sh(x[1]), s2 = tr.Sh(x[2]), s3 = tr.Sh(x[3]);
        const T th = kind == TableKind::twisted_local ? p.vartheta : T{};
        put(b, 0, 1, -(p.kinv * s1 / (c1 * c2 * c2 * c3 * c3)) - th * c1 * s2 / c2);
        put(b, 0, 2, -(p.kinv * s2 / (c2 * c3 * c3)) + th * s1);
        put(b, 0, 3, -(p.kinv * s3 / c3));
        put(b, 1, 2, -(p.jj * c1 * s3 * s3 / (c3 * c3)));
        put(b, 1, 3, p.jj * c1 * s2 * s3 / (c2 * c3));
        put(b, 2, 3, -(p.jj * s1 * s3 / c3));
      }
      break;
    }
    case TableKind::ambient: {
      const T s4 = x[0], s0 = x[1];
      const T e = p.eta2 * p.kinv;
      for (int a = 2; a < 5; ++a) {
        put(b, 1, a, -(p.kinv * x[a] * s4));
        put(b, 0, a, e * x[a] * s0);
      }
      put(b, 2, 3, -(p.jj * x[4] * x[4]));
      put(b, 2, 4, p.jj * x[3] * x[4]);
      put(b, 3, 4, -(p.jj * x[2] * x[4]));
      put(b, 1, 0, -(e * (x[2] * x[2] + x[3] * x[3] + x[4] * x[4])));
      break;
    }
    case TableKind::kappa_minkowski:
    case TableKind::twisted_minkowski: {
      const T th = kind == TableKind::twisted_minkowski ? p.vartheta : T{};
      put(b, 0, 1, -(p.kinv * x[1]) - th * x[2]);
      put(b, 0, 2, -(p.kinv * x[2]) + th * x[1]);
      put(b, 0, 3, -(p.kinv * x[3]));
      break;
    }
    case TableKind::first_order_local: {
      for (int a = 1; a < 4; ++a) put(b, 0, a, -(p.kinv * x[a]));
      put(b, 1, 2, -(p.jj * x[3] * x[3]));
      put(b, 1, 3, p.jj * x[2] * x[3]);
      put(b, 2, 3, -(p.jj * x[1] * x[3]));
      break;
    }
    case TableKind::quadratic_su2: {
      put(b, 0, 1, -(p.jj * x[2] * x[2]));
      put(b, 0, 2, p.jj * x[1] * x[2]);
      put(b, 1, 2, -(p.jj * x[0] * x[2]));
      break;
    }
  }
  return b;
}

/// Parameters of a numeric verification run.
struct PoissonConfig {
  double lambda = -1.0;
  double kinv = 1.0;
  double jj = 1.0;
  double vartheta = 0.0;
  std::size_t samples = 200;
  std::uint64_t seed = kDefaultSeed;
  Exec exec = Exec::parallel;

  TableParams<double> table_params() const { return {-lambda, kinv, jj, vartheta}; }
};

/// κ⁻¹ Σ K_a∧P_a + jj J1∧J2 + ϑ J3∧P0.
Bivector<double> deformation_r(double kinv, double jj, double vartheta);

/// {f, g}(h) = r^{ij}(X^L_i f X^L_j g − X^R_i f X^R_j g).
using GroupFunction = std::function<Dual<double>(const M5<Dual<double>>&)>;
double sklyanin_bracket(const Bivector<double>& r, const GroupFunction& f, const GroupFunction& g, const Mat5& h,
                        double lambda);

/// Sklyanin brackets of the 9 coordinate functions (x0..x3, s4, s0..s3) at h.
SquareMat<double> sklyanin_coordinates(const Bivector<double>& r, const Mat5& h, double lambda);

/// Block of sklyanin_coordinates matching a table's coordinates.
SquareMat<double> table_block(TableKind kind, const SquareMat<double>& full);
/// Point of a table's coordinate space for a group element (x or s).
std::vector<double> table_point(TableKind kind, const GroupPoint& p);

struct PairDeviation {
  int i = 0, j = 0;
  double max_deviation = 0.0;
};

struct VerifyReport {
  TableKind kind{};
  PoissonConfig config;
  std::vector<PairDeviation> pairs;
  double max_deviation = 0.0;
  std::size_t worst_sample = 0;
  std::array<double, 10> worst_point{};
  /// Change of the bracket under a change of Lorentz-sector coordinates.
  double lorentz_deviation = 0.0;
};

/// Compares sklyanin_coordinates with table_eval at config.samples random
/// chart points; each point is also re-evaluated with its Lorentz-sector
/// coordinates zeroed.  The twist term of r is used only for the twisted
/// tables.
VerifyReport verify_table(TableKind kind, const PoissonConfig& config);

/// Local table pushed through ∂s/∂x versus the ambient table at s(x).
double ambient_local_consistency(const PoissonConfig& config);

/// Cyclic Jacobi sum, maximised over coordinate triples and samples.
double table_jacobi_residual(TableKind kind, const PoissonConfig& config);

/// Zeroth and first η-derivatives of a local table at η = 0 (jj = η κ⁻¹).
struct EtaExpansion {
  SquareMat<double> zeroth;
  SquareMat<double> first;
};
EtaExpansion eta_expansion(TableKind kind, const std::vector<double>& x, double kinv, double vartheta);

/// Restriction of the local table to x3 = 0.
SquareMat<double> project_2plus1(const std::vector<double>& x, const TableParams<double>& p);

/// {x1,x2} = f ∂F/∂x3 and cyclic; f and F are generic callables evaluated on
/// std::array<U, 3>, where U is T (for f) and Dual<T> (for F).
template <class T, class Ff, class FF>
std::array<std::array<T, 3>, 3> poisson_3d(Ff&& f, FF&& F, const std::array<T, 3>& x) {
  std::array<T, 3> grad;
  for (int k = 0; k < 3; ++k) {
    std::array<Dual<T>, 3> xd;
    for (int m = 0; m < 3; ++m) xd[m] = Dual<T>(x[m], T(m == k ? 1.0 : 0.0));
    grad[k] = F(xd).d;
  }
  const T fv = f(x);
  std::array<std::array<T, 3>, 3> b{};
  for (auto& row : b) row.fill(T(0.0));
  b[0][1] = fv * grad[2];
  b[1][2] = fv * grad[0];
  b[2][0] = fv * grad[1];
  b[1][0] = -b[0][1];
  b[2][1] = -b[1][2];
  b[0][2] = -b[2][0];
  return b;
}

/// Exact poisson_3d over the polynomial ring in x1, x2, x3.
std::array<std::array<Scalar, 3>, 3> poisson_3d_symbolic(const Scalar& f, const Scalar& F);

/// Polynomial bracket tables with formal η, κ⁻¹, ϑ over the coordinate
/// parameters (jj = η κ⁻¹, η² = −Λ).  The all-orders local table is not
/// polynomial and is not available here.
struct SymbolicTable {
  TableKind kind{};
  std::vector<Param> coords;
  SquareMat<Scalar> b;
};
SymbolicTable symbolic_table(TableKind kind);
/// Exact cyclic Jacobi sums {a,{b,c}} + cyclic over coordinate triples.
std::vector<Scalar> symbolic_jacobi(const SymbolicTable& t);

/// Maximum |S(t) − S(0)| for S = x1² + x2² + x3² along RK4 integral curves of
/// the quadratic su(2) bracket with a random polynomial Hamiltonian.
struct FlowReport {
  std::size_t curves = 0;
  double time = 0.0;
  double max_drift = 0.0;
};
FlowReport leaf_conservation(double jj, std::size_t curves, double time, std::uint64_t seed, Exec exec = Exec::parallel);

nlohmann::json to_json(const VerifyReport& r);
nlohmann::json to_json(const SymbolicTable& t);

}  // namespace kads
