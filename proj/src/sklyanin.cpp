#include "kads/sklyanin.hpp"

#include <algorithm>
#include <cmath>

namespace kads {

std::string_view table_name(TableKind kind) {
  switch (kind) {
    case TableKind::local: return "local";
    case TableKind::twisted_local: return "twisted_local";
    case TableKind::ambient: return "ambient";
    case TableKind::kappa_minkowski: return "kappa_minkowski";
    case TableKind::twisted_minkowski: return "twisted_minkowski";
    case TableKind::first_order_local: return "first_order_local";
    case TableKind::quadratic_su2: return "quadratic_su2";
  }
  return "?";
}

const std::vector<std::string>& table_coordinates(TableKind kind) {
  static const std::vector<std::string> local{"x0", "x1", "x2", "x3"};
  static const std::vector<std::string> ambient{"s4", "s0", "s1", "s2", "s3"};
  static const std::vector<std::string> space{"x1", "x2", "x3"};
  if (kind == TableKind::ambient) return ambient;
  if (kind == TableKind::quadratic_su2) return space;
  return local;
}

Bivector<double> deformation_r(double kinv, double jj, double vartheta) {
  Bivector<double> r;
  for (int a = 1; a <= 3; ++a) r.set(gen::K(a), gen::P(a), kinv);
  r.set(gen::J(1), gen::J(2), jj);
  r.set(gen::J(3), gen::P0, vartheta);
  return r;
}

namespace {

/// Σ_{i<j} r_ij (u_i v_j − u_j v_i) for per-generator derivative vectors u, v.
template <class U, class V>
double contract(const Bivector<double>& r, const U& u, const V& v) {
  double acc = 0.0;
  for (auto [i, j] : r.support()) acc += r.get(i, j) * (u[i] * v[j] - u[j] * v[i]);
  return acc;
}

double max_abs_diff(const SquareMat<double>& a, const SquareMat<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

}  // namespace

double sklyanin_bracket(const Bivector<double>& r, const GroupFunction& f, const GroupFunction& g, const Mat5& h,
                        double lambda) {
  std::array<double, gen::kDim> lf{}, lg{}, rf{}, rg{};
  for (int i = 0; i < gen::kDim; ++i) {
    lf[i] = invariant_field(Side::left, i, f, h, lambda);
    lg[i] = invariant_field(Side::left, i, g, h, lambda);
    rf[i] = invariant_field(Side::right, i, f, h, lambda);
    rg[i] = invariant_field(Side::right, i, g, h, lambda);
  }
  return contract(r, lf, lg) - contract(r, rf, rg);
}

SquareMat<double> sklyanin_coordinates(const Bivector<double>& r, const Mat5& h, double lambda) {
  const auto fields = coordinate_fields(h, lambda);
  auto out = zero_square<double>(9);
  std::array<double, gen::kDim> lu{}, lv{}, ru{}, rv{};
  for (int m = 0; m < 9; ++m)
    for (int n = m + 1; n < 9; ++n) {
      for (int i = 0; i < gen::kDim; ++i) {
        lu[i] = fields.left[i][m];
        lv[i] = fields.left[i][n];
        ru[i] = fields.right[i][m];
        rv[i] = fields.right[i][n];
      }
      const double v = contract(r, lu, lv) - contract(r, ru, rv);
      out[m][n] = v;
      out[n][m] = -v;
    }
  return out;
}

SquareMat<double> table_block(TableKind kind, const SquareMat<double>& full) {
  const int n = table_dim(kind);
  const int offset = kind == TableKind::ambient ? 4 : (kind == TableKind::quadratic_su2 ? 1 : 0);
  auto out = zero_square<double>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = full[offset + i][offset + j];
  return out;
}

std::vector<double> table_point(TableKind kind, const GroupPoint& p) {
  const LocalPoint x{p.coords[0], p.coords[1], p.coords[2], p.coords[3]};
  if (kind == TableKind::ambient) {
    const auto s = ambient_from_local(x, p.lambda);
    return {s.begin(), s.end()};
  }
  if (kind == TableKind::quadratic_su2) return {x[1], x[2], x[3]};
  return {x.begin(), x.end()};
}

namespace {

struct SampleResult {
  SquareMat<double> deviation;
  double lorentz = 0.0;
};

}  // namespace

VerifyReport verify_table(TableKind kind, const PoissonConfig& config) {
  const bool twisted = kind == TableKind::twisted_local || kind == TableKind::twisted_minkowski;
  const auto r = deformation_r(config.kinv, config.jj, twisted ? config.vartheta : 0.0);
  const auto params = config.table_params();
  const int n = table_dim(kind);
  auto samples = map_indices(
      config.samples,
      [&](std::size_t s) {
        auto rng = sample_rng(config.seed, s);
        const GroupPoint p = random_chart_point(rng, config.lambda);
        GroupPoint base = p;
        std::fill(base.coords.begin() + 4, base.coords.end(), 0.0);
        const auto got = table_block(kind, sklyanin_coordinates(r, group_element(p), config.lambda));
        const auto at_base = table_block(kind, sklyanin_coordinates(r, group_element(base), config.lambda));
        const auto want = table_eval(kind, table_point(kind, p), params);
        SampleResult out{zero_square<double>(n), max_abs_diff(got, at_base)};
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) out.deviation[i][j] = std::abs(got[i][j] - want[i][j]);
        return out;
      },
      config.exec);

  VerifyReport rep;
  rep.kind = kind;
  rep.config = config;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rep.pairs.push_back({i, j, 0.0});
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (auto& pd : rep.pairs) {
      const double d = samples[s].deviation[pd.i][pd.j];
      pd.max_deviation = std::max(pd.max_deviation, d);
      if (d > rep.max_deviation) {
        rep.max_deviation = d;
        rep.worst_sample = s;
      }
    }
    rep.lorentz_deviation = std::max(rep.lorentz_deviation, samples[s].lorentz);
  }
  auto rng = sample_rng(config.seed, rep.worst_sample);
  rep.worst_point = random_chart_point(rng, config.lambda).coords;
  return rep;
}

double ambient_local_consistency(const PoissonConfig& config) {
  const auto params = config.table_params();
  using D = Dual<double>;
  const auto devs = map_indices(
      config.samples,
      [&](std::size_t s) {
        auto rng = sample_rng(config.seed, s);
        const GroupPoint p = random_chart_point(rng, config.lambda);
        const std::vector<double> x(p.coords.begin(), p.coords.begin() + 4);
        const CurvTrig<D> tr{D(-config.lambda)};
        double jac[5][4];
        for (int mu = 0; mu < 4; ++mu) {
          std::array<D, 4> xd;
          for (int k = 0; k < 4; ++k) xd[k] = D(x[k], k == mu ? 1.0 : 0.0);
          const auto sd = ambient_from_local(xd, tr);
          for (int a = 0; a < 5; ++a) jac[a][mu] = sd[a].d;
        }
        const auto local = table_eval(TableKind::local, x, params);
        const auto amb = table_eval(TableKind::ambient, table_point(TableKind::ambient, p), params);
        double dev = 0.0;
        for (int a = 0; a < 5; ++a)
          for (int b = 0; b < 5; ++b) {
            double pushed = 0.0;
            for (int mu = 0; mu < 4; ++mu)
              for (int nu = 0; nu < 4; ++nu) pushed += jac[a][mu] * local[mu][nu] * jac[b][nu];
            dev = std::max(dev, std::abs(pushed - amb[a][b]));
          }
        return dev;
      },
      config.exec);
  return devs.empty() ? 0.0 : *std::max_element(devs.begin(), devs.end());
}

namespace {

/// Signed cyclic sums {x_i,{x_j,x_k}} + cyclic for i < j < k.
std::vector<double> jacobi_sums(TableKind kind, const std::vector<double>& x, const TableParams<double>& p) {
  using D = Dual<double>;
  const int n = table_dim(kind);
  const auto b = table_eval(kind, x, p);
  // db[m][i][j] = ∂_m {x_i, x_j}
  std::vector<SquareMat<double>> db;
  const TableParams<D> pd{D(p.eta2), D(p.kinv), D(p.jj), D(p.vartheta)};
  for (int m = 0; m < n; ++m) {
    std::vector<D> xd(x.size());
    for (int k = 0; k < n; ++k) xd[k] = D(x[k], k == m ? 1.0 : 0.0);
    const auto bd = table_eval(kind, xd, pd);
    auto g = zero_square<double>(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[i][j] = bd[i][j].d;
    db.push_back(std::move(g));
  }
  std::vector<double> sums;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m)
          acc += b[i][m] * db[m][j][k] + b[j][m] * db[m][k][i] + b[k][m] * db[m][i][j];
        sums.push_back(acc);
      }
  return sums;
}

}  // namespace

double table_jacobi_residual(TableKind kind, const PoissonConfig& config) {
  const auto devs = map_indices(
      config.samples,
      [&](std::size_t s) {
        auto rng = sample_rng(config.seed, s);
        const GroupPoint p = random_chart_point(rng, config.lambda);
        const auto x = table_point(kind, p);
        auto params = config.table_params();
        double worst = 0.0;
        if (config.lambda <= 0) {
          for (double v : jacobi_sums(kind, x, params)) worst = std::max(worst, std::abs(v));
          return worst;
        }
        // For Λ > 0 the coefficient jj = η κ⁻¹ is imaginary, jj = i a with
        // a = √Λ κ⁻¹.  Each cyclic sum is quadratic in jj, J0 + jj J1 + jj² J2,
        // so J(i a) = 0 requires J1 = 0 and J0 − a² J2 = 0.
        const double a = std::sqrt(config.lambda) * config.kinv;
        params.jj = -1.0;
        const auto jm = jacobi_sums(kind, x, params);
        params.jj = 0.0;
        const auto j0 = jacobi_sums(kind, x, params);
        params.jj = 1.0;
        const auto jp = jacobi_sums(kind, x, params);
        for (std::size_t t = 0; t < j0.size(); ++t) {
          const double c1 = (jp[t] - jm[t]) / 2;
          const double c2 = (jp[t] + jm[t]) / 2 - j0[t];
          worst = std::max({worst, std::abs(c1), std::abs(j0[t] - a * a * c2)});
        }
        return worst;
      },
      config.exec);
  return devs.empty() ? 0.0 : *std::max_element(devs.begin(), devs.end());
}

EtaExpansion eta_expansion(TableKind kind, const std::vector<double>& x, double kinv, double vartheta) {
  using D = Dual<double>;
  const D eta = D::variable(0.0);
  const TableParams<D> p{eta * eta, D(kinv), eta * kinv, D(vartheta)};
  std::vector<D> xd(x.begin(), x.end());
  const auto b = table_eval(kind, xd, p);
  const int n = table_dim(kind);
  EtaExpansion out{zero_square<double>(n), zero_square<double>(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.zeroth[i][j] = b[i][j].v;
      out.first[i][j] = b[i][j].d;
    }
  return out;
}

SquareMat<double> project_2plus1(const std::vector<double>& x, const TableParams<double>& p) {
  const std::vector<double> y{x[0], x[1], x[2], 0.0};
  const auto full = table_eval(TableKind::local, y, p);
  auto out = zero_square<double>(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = full[i][j];
  return out;
}

std::array<std::array<Scalar, 3>, 3> poisson_3d_symbolic(const Scalar& f, const Scalar& F) {
  const Scalar d1 = derivative(F, param::x1), d2 = derivative(F, param::x2), d3 = derivative(F, param::x3);
  std::array<std::array<Scalar, 3>, 3> b{};
  b[0][1] = f * d3;
  b[1][2] = f * d1;
  b[2][0] = f * d2;
  b[1][0] = -b[0][1];
  b[2][1] = -b[1][2];
  b[0][2] = -b[2][0];
  return b;
}

SymbolicTable symbolic_table(TableKind kind) {
  SymbolicTable t;
  t.kind = kind;
  if (kind == TableKind::local || kind == TableKind::twisted_local)
    throw Error("symbolic_table: the all-orders local table has no polynomial form");
  if (kind == TableKind::ambient)
    t.coords.assign(param::ambient_coords.begin(), param::ambient_coords.end());
  else if (kind == TableKind::quadratic_su2)
    t.coords = {param::x1, param::x2, param::x3};
  else
    t.coords.assign(param::local_coords.begin(), param::local_coords.end());
  const Scalar eta(param::eta), kinv(param::kinv);
  const TableParams<Scalar> p{eta * eta, kinv, eta * kinv, Scalar(param::vartheta)};
  std::vector<Scalar> x;
  for (Param c : t.coords) x.emplace_back(c);
  t.b = table_eval(kind, x, p);
  return t;
}

std::vector<Scalar> symbolic_jacobi(const SymbolicTable& t) {
  const int n = static_cast<int>(t.coords.size());
  auto bracket_with = [&](int a, const Scalar& g) {
    Scalar acc;
    for (int m = 0; m < n; ++m)
      if (!t.b[a][m].is_zero()) acc += t.b[a][m] * derivative(g, t.coords[m]);
    return acc;
  };
  std::vector<Scalar> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        out.push_back(bracket_with(i, t.b[j][k]) + bracket_with(j, t.b[k][i]) + bracket_with(k, t.b[i][j]));
  return out;
}

namespace {

struct Hamiltonian {
  std::array<double, 3> lin{};
  std::array<std::array<double, 3>, 3> quad{};  // symmetric

  std::array<double, 3> grad(const std::array<double, 3>& x) const {
    std::array<double, 3> g = lin;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) g[a] += 2.0 * quad[a][b] * x[b];
    return g;
  }
};

std::array<double, 3> flow_rhs(double jj, const Hamiltonian& h, const std::array<double, 3>& x) {
  const std::vector<double> xv(x.begin(), x.end());
  const auto b = table_eval(TableKind::quadratic_su2, xv, TableParams<double>{0.0, 0.0, jj, 0.0});
  const auto g = h.grad(x);
  std::array<double, 3> out{};
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) out[a] += b[a][c] * g[c];
  return out;
}

double sphere(const std::array<double, 3>& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }

}  // namespace

FlowReport leaf_conservation(double jj, std::size_t curves, double time, std::uint64_t seed, Exec exec) {
  constexpr double dt = 1e-3;
  const auto drifts = map_indices(
      curves,
      [&](std::size_t c) {
        auto rng = sample_rng(seed, c);
        Hamiltonian h;
        for (auto& v : h.lin) v = uniform(rng, -1, 1);
        for (int a = 0; a < 3; ++a)
          for (int b = a; b < 3; ++b) h.quad[a][b] = h.quad[b][a] = uniform(rng, -1, 1);
        std::array<double, 3> x;
        for (auto& v : x) v = uniform(rng, -1, 1);
        const double s0 = sphere(x);
        double drift = 0.0;
        const auto steps = static_cast<long>(std::ceil(time / dt));
        auto axpy = [](const std::array<double, 3>& a, double k, const std::array<double, 3>& b) {
          return std::array<double, 3>{a[0] + k * b[0], a[1] + k * b[1], a[2] + k * b[2]};
        };
        for (long s = 0; s < steps; ++s) {
          const auto k1 = flow_rhs(jj, h, x);
          const auto k2 = flow_rhs(jj, h, axpy(x, dt / 2, k1));
          const auto k3 = flow_rhs(jj, h, axpy(x, dt / 2, k2));
          const auto k4 = flow_rhs(jj, h, axpy(x, dt, k3));
          for (int a = 0; a < 3; ++a) x[a] += dt / 6 * (k1[a] + 2 * k2[a] + 2 * k3[a] + k4[a]);
          drift = std::max(drift, std::abs(sphere(x) - s0));
        }
        return drift;
      },
      exec);
  FlowReport rep{curves, time, 0.0};
  for (double d : drifts) rep.max_drift = std::max(rep.max_drift, d);
  return rep;
}

nlohmann::json to_json(const VerifyReport& r) {
  const auto& names = table_coordinates(r.kind);
  nlohmann::json pairs = nlohmann::json::object();
  for (const auto& p : r.pairs) pairs["{" + names[p.i] + "," + names[p.j] + "}"] = p.max_deviation;
  return {{"table", table_name(r.kind)},
          {"lambda", r.config.lambda},
          {"kappa_inv", r.config.kinv},
          {"jj", r.config.jj},
          {"vartheta", r.config.vartheta},
          {"samples", r.config.samples},
          {"seed", r.config.seed},
          {"max_deviation", r.max_deviation},
          {"per_bracket", pairs},
          {"worst_sample", r.worst_sample},
          {"worst_point", r.worst_point},
          {"lorentz_deviation", r.lorentz_deviation}};
}

nlohmann::json to_json(const SymbolicTable& t) {
  nlohmann::json out = nlohmann::json::object();
  const int n = static_cast<int>(t.coords.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out["{" + std::string(param_name(t.coords[i])) + "," + std::string(param_name(t.coords[j])) + "}"] =
          to_string(t.b[i][j]);
  return out;
}

}  // namespace kads
