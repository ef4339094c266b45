#include "kads/group_geom.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>

namespace kads {

Mat5 generator_rep(int i, double lambda) {
  Mat5 m = Mat5::Zero();
  if (i == gen::P0) {
    m(0, 1) = lambda;
    m(1, 0) = 1.0;
  } else if (i <= gen::P3) {
    m(0, i + 1) = -lambda;
    m(i + 1, 0) = 1.0;
  } else if (i <= gen::K3) {
    const int a = i - 3;
    m(1, a + 1) = 1.0;
    m(a + 1, 1) = 1.0;
  } else if (i == gen::J1) {
    m(3, 4) = -1.0;
    m(4, 3) = 1.0;
  } else if (i == gen::J2) {
    m(2, 4) = 1.0;
    m(4, 2) = -1.0;
  } else if (i == gen::J3) {
    m(2, 3) = -1.0;
    m(3, 2) = 1.0;
  } else {
    throw Error("generator_rep: index out of range");
  }
  return m;
}

Mat5 vector_rep(const LieElement<double>& x, double lambda) {
  Mat5 m = Mat5::Zero();
  for (int i = 0; i < gen::kDim; ++i)
    if (x[i] != 0.0) m += x[i] * generator_rep(i, lambda);
  return m;
}

Mat5 bilinear_form(double lambda) {
  Mat5 m = Mat5::Zero();
  m.diagonal() << 1.0, -lambda, lambda, lambda, lambda;
  return m;
}

Mat5 group_element(const GroupPoint& p) {
  const double scale = std::sqrt(std::abs(p.lambda));
  for (int k = 0; k < 10; ++k) {
    if (!std::isfinite(p.coords[k])) throw NumericOverflow("non-finite group coordinate");
    if (k < 4 && std::abs(p.coords[k]) * scale > 50.0) throw NumericOverflow("translation too large for exponential");
  }
  Mat5 g = Mat5::Identity();
  for (int k = 0; k < 10; ++k) {
    if (p.coords[k] == 0.0) continue;
    const Mat5 a = p.coords[k] * generator_rep(k, p.lambda);
    g = g * a.exp();
  }
  return g;
}

double isometry_residual(const Mat5& g, double lambda) {
  const Mat5 form = bilinear_form(lambda);
  return (g.transpose() * form * g - form).cwiseAbs().maxCoeff();
}

void check_chart(const LocalPoint& x, double lambda) {
  const double half_pi = std::numbers::pi / 2;
  const double root = std::sqrt(std::abs(lambda));
  if (lambda < 0 && root * std::abs(x[0]) >= half_pi) throw ChartBoundary("|eta x0| reaches pi/2");
  if (lambda > 0)
    for (int a = 1; a <= 3; ++a)
      if (root * std::abs(x[a]) >= half_pi) throw ChartBoundary("spatial coordinate reaches the chart boundary");
}

AmbientPoint ambient_from_local(const LocalPoint& x, double lambda) {
  check_chart(x, lambda);
  return ambient_from_local(x, CurvTrig<double>(-lambda));
}

LocalPoint local_from_ambient(const AmbientPoint& s, double lambda) {
  if (std::abs(pseudosphere_residual(s, lambda)) > 1e-8) throw OffPseudosphere("point is not on the pseudosphere");
  if (s[0] <= 0.0) throw OutOfChart("s4 <= 0");
  const double root = std::sqrt(std::abs(lambda));
  if (lambda > 0) {
    // asin arguments for the spatial inverses, atanh argument for time
    const CurvTrig<double> tr(-lambda);
    const double x3 = root * std::abs(s[4]);
    if (x3 >= 1.0) throw OutOfChart("s3 outside the chart");
    const double c3 = tr.Ch(tr.Sh_inv(s[4]));
    if (root * std::abs(s[3] / c3) >= 1.0) throw OutOfChart("s2 outside the chart");
    if (root * std::abs(s[1] / s[0]) >= 1.0) throw OutOfChart("s0/s4 outside the chart");
  }
  const CurvTrig<double> tr(-lambda);
  const auto x = local_from_ambient_unchecked(s, tr);
  if (lambda > 0) {
    const double c3 = tr.Ch(x[3]), c2 = tr.Ch(x[2]);
    if (root * std::abs(s[2] / (c2 * c3)) >= 1.0) throw OutOfChart("s1 outside the chart");
  }
  return x;
}

Mat4 metric_at(const LocalPoint& x, double lambda) {
  check_chart(x, lambda);
  const CurvTrig<double> tr(-lambda);
  const double c1 = tr.Ch(x[1]), c2 = tr.Ch(x[2]), c3 = tr.Ch(x[3]);
  Mat4 g = Mat4::Zero();
  g(0, 0) = c1 * c1 * c2 * c2 * c3 * c3;
  g(1, 1) = -c2 * c2 * c3 * c3;
  g(2, 2) = -c3 * c3;
  g(3, 3) = -1.0;
  return g;
}

Mat4 metric_pullback(const LocalPoint& x, double lambda) {
  check_chart(x, lambda);
  using D = Dual<double>;
  const CurvTrig<D> tr{D(-lambda)};
  // jac(A, mu) = ∂ s_A / ∂ x^mu
  Eigen::Matrix<double, 5, 4> jac;
  for (int mu = 0; mu < 4; ++mu) {
    std::array<D, 4> xd;
    for (int k = 0; k < 4; ++k) xd[k] = D(x[k], k == mu ? 1.0 : 0.0);
    const auto s = ambient_from_local(xd, tr);
    for (int a = 0; a < 5; ++a) jac(a, mu) = s[a].d;
  }
  Mat5 form = Mat5::Zero();
  form.diagonal() << (lambda == 0.0 ? 0.0 : -1.0 / lambda), 1.0, -1.0, -1.0, -1.0;
  return jac.transpose() * form * jac;
}

CoordinateFields coordinate_fields(const Mat5& h, double lambda) {
  CoordinateFields out;
  for (int i = 0; i < gen::kDim; ++i) {
    const Mat5 a = generator_rep(i, lambda);
    for (Side side : {Side::left, Side::right}) {
      const auto g = perturb(side, h, a);
      const auto s = first_column(g);
      const auto x = local_from_ambient_unchecked(s, CurvTrig<Dual<double>>(Dual<double>(-lambda)));
      auto& row = side == Side::left ? out.left[i] : out.right[i];
      for (int k = 0; k < 4; ++k) row[k] = x[k].d;
      for (int k = 0; k < 5; ++k) row[4 + k] = s[k].d;
    }
  }
  return out;
}

}  // namespace kads
