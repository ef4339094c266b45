#pragma once

// The (A)dS group in its 5-dimensional vector representation: group
// elements in ordered-exponential coordinates, the ambient pseudosphere,
// geodesic parallel coordinates, the metric, and invariant vector fields.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>

#include "kads/curvtrig.hpp"
#include "kads/liealg.hpp"
#include "kads/parallel.hpp"

namespace kads {

using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat4 = Eigen::Matrix4d;

/// Plain 5×5 matrix over any scalar (used with dual numbers).
template <class T>
using M5 = std::array<std::array<T, 5>, 5>;

/// ρ(T_i): rows/columns ordered (s4, s0, s1, s2, s3).
Mat5 generator_rep(int i, double lambda);
/// ρ(X) = Σ X_i ρ(T_i).
Mat5 vector_rep(const LieElement<double>& x, double lambda);

/// diag(1, −Λ, Λ, Λ, Λ)
Mat5 bilinear_form(double lambda);

struct GroupPoint {
  /// (x0, x1, x2, x3, ξ1, ξ2, ξ3, θ1, θ2, θ3)
  std::array<double, 10> coords{};
  double lambda = 0.0;
};

/// Product exp(x0 ρ(P0)) … exp(θ3 ρ(J3)) in generator order.
Mat5 group_element(const GroupPoint& p);
/// ‖GᵀI_ΛG − I_Λ‖∞
double isometry_residual(const Mat5& g, double lambda);

/// (s4, s0, s1, s2, s3)
using AmbientPoint = std::array<double, 5>;
using LocalPoint = std::array<double, 4>;

/// (s4)² − Λ(s0)² + Λ|s|² − 1
template <class T>
T pseudosphere_residual(const std::array<T, 5>& s, double lambda) {
  return s[0] * s[0] - lambda * s[1] * s[1] + lambda * (s[2] * s[2] + s[3] * s[3] + s[4] * s[4]) - 1.0;
}

/// Throws ChartBoundary if x leaves the principal chart: |√−Λ x0| ≥ π/2 for
/// Λ < 0, or |√Λ x^a| ≥ π/2 for Λ > 0.
void check_chart(const LocalPoint& x, double lambda);

template <class T>
std::array<T, 5> ambient_from_local(const std::array<T, 4>& x, const CurvTrig<T>& tr) {
  const T c3 = tr.Ch(x[3]), c2 = tr.Ch(x[2]), c1 = tr.Ch(x[1]);
  const T spatial = c1 * c2 * c3;
  return {tr.Ct(x[0]) * spatial, tr.St(x[0]) * spatial, tr.Sh(x[1]) * c2 * c3, tr.Sh(x[2]) * c3, tr.Sh(x[3])};
}

AmbientPoint ambient_from_local(const LocalPoint& x, double lambda);

/// Inversion x3 → x2 → x1 → x0 without domain checks; used inside
/// derivative evaluations where the base point has already been validated.
template <class T>
std::array<T, 4> local_from_ambient_unchecked(const std::array<T, 5>& s, const CurvTrig<T>& tr) {
  std::array<T, 4> x;
  x[3] = tr.Sh_inv(s[4]);
  const T c3 = tr.Ch(x[3]);
  x[2] = tr.Sh_inv(s[3] / c3);
  const T c2 = tr.Ch(x[2]);
  x[1] = tr.Sh_inv(s[2] / (c2 * c3));
  x[0] = tr.Tt_inv(s[1] / s[0]);
  return x;
}

/// Throws OffPseudosphere (residual > 1e-8) or OutOfChart (s4 ≤ 0 or an
/// inverse outside its domain).
LocalPoint local_from_ambient(const AmbientPoint& s, double lambda);

/// diag(Ch1²Ch2²Ch3², −Ch2²Ch3², −Ch3², −1)
Mat4 metric_at(const LocalPoint& x, double lambda);
/// Pullback of I_Λ/(−Λ) through the Jacobian of ambient_from_local (the s4
/// term is dropped at Λ = 0, where s4 ≡ 1).
Mat4 metric_pullback(const LocalPoint& x, double lambda);

template <class T>
M5<T> lift(const Mat5& m) {
  M5<T> out;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) out[r][c] = T(m(r, c));
  return out;
}

template <class T>
M5<T> matmul(const M5<T>& a, const M5<T>& b) {
  M5<T> out;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) {
      T acc{};
      for (int k = 0; k < 5; ++k) acc += a[r][k] * b[k][c];
      out[r][c] = acc;
    }
  return out;
}

template <class T>
std::array<T, 5> first_column(const M5<T>& g) {
  return {g[0][0], g[1][0], g[2][0], g[3][0], g[4][0]};
}

enum class Side { left, right };

/// h·(1 + εA) or (1 + εA)·h: the first-order exponential as a dual matrix.
inline M5<Dual<double>> perturb(Side side, const Mat5& h, const Mat5& a) {
  const Mat5 d = side == Side::left ? Mat5(h * a) : Mat5(a * h);
  M5<Dual<double>> out;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) out[r][c] = Dual<double>(h(r, c), d(r, c));
  return out;
}

/// X^L_i f(h) = d/dt f(h e^{tT_i}) or X^R_i f(h) = d/dt f(e^{tT_i} h) at t = 0.
/// f maps an M5<Dual<double>> to a Dual<double>.
template <class F>
double invariant_field(Side side, int i, F&& f, const Mat5& h, double lambda) {
  return f(perturb(side, h, generator_rep(i, lambda))).d;
}

template <class F>
double invariant_field(Side side, int i, F&& f, const GroupPoint& p) {
  return invariant_field(side, i, f, group_element(p), p.lambda);
}

/// Coordinate functions on the group: local coordinate x^μ of the coset
/// (through the first column) or an ambient coordinate (a first-column entry).
struct CoordFn {
  enum Kind { local, ambient } kind = local;
  int index = 0;  // local: 0..3 (x0..x3); ambient: 0..4 (s4, s0, s1, s2, s3)

  template <class T>
  T operator()(const M5<T>& g, double lambda) const {
    const auto s = first_column(g);
    if (kind == ambient) return s[index];
    return local_from_ambient_unchecked(s, CurvTrig<T>(T(-lambda)))[index];
  }
};

/// Per-generator derivatives of the 4 local and 5 ambient coordinate
/// functions at h: fields[i][k], k < 4 local, k ≥ 4 ambient.
struct CoordinateFields {
  std::array<std::array<double, 9>, 10> left{};
  std::array<std::array<double, 9>, 10> right{};
};
CoordinateFields coordinate_fields(const Mat5& h, double lambda);

/// Uniform point of the sampling box: |x| ≤ 0.8/max(1, √|Λ|), |ξ|, |θ| ≤ lorentz_scale.
template <class Rng>
GroupPoint random_chart_point(Rng& rng, double lambda, double lorentz_scale = 0.5) {
  GroupPoint p;
  p.lambda = lambda;
  const double box = 0.8 / std::max(1.0, std::sqrt(std::abs(lambda)));
  for (int k = 0; k < 4; ++k) p.coords[k] = uniform(rng, -box, box);
  for (int k = 4; k < 10; ++k) p.coords[k] = uniform(rng, -lorentz_scale, lorentz_scale);
  return p;
}

}  // namespace kads
