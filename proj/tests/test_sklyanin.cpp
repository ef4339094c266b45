#include <doctest.h>

#include <cmath>

#include "kads/sklyanin.hpp"
#include "support.hpp"

using namespace kads;

namespace {

GroupFunction coord(int k, double lambda, CoordFn::Kind kind = CoordFn::local) {
  const CoordFn fn{kind, k};
  return [fn, lambda](const M5<Dual<double>>& g) { return fn(g, lambda); };
}

GroupFunction product(GroupFunction a, GroupFunction b) {
  return [a, b](const M5<Dual<double>>& g) { return a(g) * b(g); };
}

TableParams<double> params(double lambda, double kinv, double vartheta = 0.0) {
  return {-lambda, kinv, std::sqrt(std::abs(lambda)) * kinv, vartheta};
}

Scalar S(Param p) { return Scalar(p); }

}  // namespace

TEST_CASE("sklyanin bracket is a biderivation") {
  std::mt19937_64 rng(103);
  const double l = -1.0;
  const auto r = deformation_r(0.7, 0.7, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat5 h = group_element(random_chart_point(rng, l, 0.5));
    const auto f = coord(0, l), g = coord(1, l), k = coord(3, l, CoordFn::ambient);
    CHECK(sklyanin_bracket(r, f, g, h, l) == doctest::Approx(-sklyanin_bracket(r, g, f, h, l)));
    CHECK(sklyanin_bracket(r, f, f, h, l) == doctest::Approx(0.0));
    const double gv = g(lift<Dual<double>>(h)).v, kv = k(lift<Dual<double>>(h)).v;
    const double lhs = sklyanin_bracket(r, f, product(g, k), h, l);
    const double rhs = sklyanin_bracket(r, f, g, h, l) * kv + gv * sklyanin_bracket(r, f, k, h, l);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("kappa-Minkowski brackets at zero curvature") {
  const double kinv = 0.4;
  const auto r = deformation_r(kinv, 0.0, 0.0);
  GroupPoint p{{0.3, -0.5, 0.2, 0.7}, 0.0};
  const auto full = sklyanin_coordinates(r, group_element(p), 0.0);
  CHECK(full[0][1] == doctest::Approx(-kinv * -0.5));
  CHECK(full[0][2] == doctest::Approx(-kinv * 0.2));
  CHECK(full[0][3] == doctest::Approx(-kinv * 0.7));
  CHECK(std::abs(full[1][2]) < 1e-12);
  CHECK(std::abs(full[2][3]) < 1e-12);
}

TEST_CASE("closed-form tables") {
  const auto b = table_eval(TableKind::ambient, std::vector<double>{1, 2, 3, 4, 5}, TableParams<double>{1.0, 0.5, 0.5, 0.0});
  CHECK(b[1][2] == doctest::Approx(-0.5 * 3 * 1));
  CHECK(b[0][2] == doctest::Approx(0.5 * 3 * 2));
  CHECK(b[2][3] == doctest::Approx(-0.5 * 25));
  CHECK(b[1][0] == doctest::Approx(-0.5 * (9 + 16 + 25)));
  CHECK(b[0][1] == doctest::Approx(0.5 * 50));

  const auto tw = table_eval(TableKind::twisted_minkowski, std::vector<double>{0, 1, 2, 3}, TableParams<double>{0, 1, 0, 0.5});
  CHECK(tw[0][1] == doctest::Approx(-1 - 1.0));
  CHECK(tw[0][2] == doctest::Approx(-2 + 0.5));

  const auto loc0 = table_eval(TableKind::local, std::vector<double>{0.1, 0.2, 0.3, 0.4}, TableParams<double>{0, 0.5, 0, 0});
  const auto km = table_eval(TableKind::kappa_minkowski, std::vector<double>{0.1, 0.2, 0.3, 0.4}, TableParams<double>{0, 0.5, 0, 0});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(loc0[i][j] == doctest::Approx(km[i][j]));
  CHECK_THROWS_AS(table_eval(TableKind::local, std::vector<double>{0.1}, TableParams<double>{}), Error);
}

TEST_CASE("sklyanin bracket matches the closed-form tables") {
  for (TableKind kind : {TableKind::local, TableKind::twisted_local, TableKind::ambient}) {
    for (double l : {-1.0, -0.4}) {
      PoissonConfig cfg;
      cfg.lambda = l;
      cfg.kinv = 0.8;
      cfg.jj = std::sqrt(-l) * cfg.kinv;
      cfg.vartheta = 0.3;
      cfg.samples = 60;
      const auto rep = verify_table(kind, cfg);
      CHECK(rep.max_deviation < 1e-9);
      CHECK(rep.lorentz_deviation < 1e-9);
    }
  }
  PoissonConfig flat;
  flat.lambda = 0.0;
  flat.jj = 0.0;
  flat.vartheta = 0.6;
  flat.samples = 60;
  CHECK(verify_table(TableKind::kappa_minkowski, flat).max_deviation < 1e-9);
  CHECK(verify_table(TableKind::twisted_minkowski, flat).max_deviation < 1e-9);
}

TEST_CASE("a wrong table is detected") {
  std::mt19937_64 rng(107);
  const GroupPoint p = random_chart_point(rng, -1.0, 0.5);
  const auto full = sklyanin_coordinates(deformation_r(1.0, 1.0, 0.0), group_element(p), -1.0);
  const auto got = table_block(TableKind::local, full);
  const auto x = table_point(TableKind::local, p);
  const auto good = table_eval(TableKind::local, x, TableParams<double>{1.0, 1.0, 1.0, 0.0});
  const auto bad = table_eval(TableKind::local, x, TableParams<double>{1.0, 1.0, 2.0, 0.0});
  double dg = 0.0, db = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      dg = std::max(dg, std::abs(got[i][j] - good[i][j]));
      db = std::max(db, std::abs(got[i][j] - bad[i][j]));
    }
  CHECK(dg < 1e-10);
  CHECK(db > 1e-4);
}

TEST_CASE("ambient and local tables agree") {
  for (double l : {-1.0, -0.3, 0.5}) {
    PoissonConfig cfg;
    cfg.lambda = l;
    cfg.kinv = 0.6;
    cfg.jj = std::sqrt(std::abs(l)) * cfg.kinv;
    cfg.samples = 100;
    CHECK(ambient_local_consistency(cfg) < 1e-9);
  }
}

TEST_CASE("Jacobi identity of the tables") {
  for (TableKind kind : {TableKind::local, TableKind::twisted_local, TableKind::ambient, TableKind::first_order_local,
                         TableKind::quadratic_su2}) {
    for (double l : {-1.0, 1.0}) {
      PoissonConfig cfg;
      cfg.lambda = l;
      cfg.vartheta = 0.4;
      cfg.samples = 100;
      if (kind == TableKind::first_order_local) cfg.lambda = 0.0;
      INFO(table_name(kind), " at ", l);
      CHECK(table_jacobi_residual(kind, cfg) < 1e-7);
    }
  }
  for (TableKind kind : {TableKind::ambient, TableKind::kappa_minkowski, TableKind::twisted_minkowski,
                         TableKind::quadratic_su2}) {
    for (const Scalar& s : symbolic_jacobi(symbolic_table(kind))) CHECK(s.is_zero());
  }
}

TEST_CASE("eta expansion of the local table") {
  const std::vector<double> x{0.1, 0.3, 0.2, 0.5};
  const double kinv = 1.0;
  const auto e = eta_expansion(TableKind::local, x, kinv, 0.0);
  CHECK(e.first[1][3] == doctest::Approx(0.1 / 1.0));
  const auto km = table_eval(TableKind::kappa_minkowski, x, TableParams<double>{0, kinv, 0, 0});
  const auto fo = table_eval(TableKind::first_order_local, x, TableParams<double>{0, kinv, 1.0, 0});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(e.zeroth[i][j] == doctest::Approx(km[i][j]));
      // The η-linear part is exactly the space-space sector of the first-order table.
      const double space = (i > 0 && j > 0) ? fo[i][j] : 0.0;
      CHECK(e.first[i][j] == doctest::Approx(space));
    }
  const auto et = eta_expansion(TableKind::twisted_local, x, kinv, 0.5);
  const auto tw = table_eval(TableKind::twisted_minkowski, x, TableParams<double>{0, kinv, 0, 0.5});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(et.zeroth[i][j] == doctest::Approx(tw[i][j]));
}

TEST_CASE("projection to 2+1 dimensions") {
  const auto p = params(-1.0, 0.7);
  const auto b = project_2plus1({0.2, 0.4, -0.3}, p);
  CHECK(b[1][2] == doctest::Approx(0.0));
  const CurvTrig<double> tr(1.0);
  CHECK(b[0][1] == doctest::Approx(-0.7 * tr.Sh(0.4) / (tr.Ch(0.4) * tr.Ch(-0.3) * tr.Ch(-0.3))));
  CHECK(b[0][2] == doctest::Approx(-0.7 * tr.Sh(-0.3) / tr.Ch(-0.3)));
}

TEST_CASE("three-dimensional Poisson construction") {
  const std::array<double, 3> x{0.3, -0.2, 0.7};
  auto sphere = [](const auto& y) { return y[0] * y[0] + y[1] * y[1] + y[2] * y[2]; };
  auto zero = [](const std::array<double, 3>&) { return 0.0; };
  const auto b0 = poisson_3d<double>(zero, sphere, x);
  for (const auto& row : b0)
    for (double v : row) CHECK(v == 0.0);

  auto f = [](const std::array<double, 3>& y) { return -0.5 * 0.8 * y[2]; };
  const auto b = poisson_3d<double>(f, sphere, x);
  double casimir = 0.0;
  for (int j = 0; j < 3; ++j) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += 2 * x[i] * b[i][j];
    casimir = std::max(casimir, std::abs(s));
  }
  CHECK(casimir < 1e-14);
  const auto q = table_eval(TableKind::quadratic_su2, std::vector<double>(x.begin(), x.end()), TableParams<double>{0, 0, 0.8, 0});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(b[i][j] == doctest::Approx(q[i][j]));

  const Scalar fs = Scalar(Rational(-1, 2)) * S(param::eta) * S(param::kinv) * S(param::x3);
  const Scalar Fs = S(param::x1) * S(param::x1) + S(param::x2) * S(param::x2) + S(param::x3) * S(param::x3);
  const auto sym = poisson_3d_symbolic(fs, Fs);
  const auto tab = symbolic_table(TableKind::quadratic_su2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK((sym[i][j] - tab.b[i][j]).is_zero());
  CHECK(poisson_3d_symbolic(Scalar(), Fs)[0][1].is_zero());
}

TEST_CASE("symplectic leaves are spheres") {
  const auto rep = leaf_conservation(0.9, 20, 2.0, 7);
  CHECK(rep.curves == 20);
  CHECK(rep.max_drift < 1e-8);
}

TEST_CASE("serial and parallel runs agree") {
  PoissonConfig cfg;
  cfg.samples = 40;
  cfg.exec = Exec::serial;
  const auto a = verify_table(TableKind::twisted_local, cfg);
  cfg.exec = Exec::parallel;
  const auto b = verify_table(TableKind::twisted_local, cfg);
  CHECK(a.max_deviation == b.max_deviation);
  CHECK(a.worst_sample == b.worst_sample);
  CHECK(to_json(a) == to_json(b));
  CHECK(leaf_conservation(0.5, 8, 1.0, 3, Exec::serial).max_drift ==
        leaf_conservation(0.5, 8, 1.0, 3, Exec::parallel).max_drift);
}
