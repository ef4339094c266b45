#include <doctest.h>

#include <cmath>

#include "kads/liealg.hpp"
#include "support.hpp"

using namespace kads;
using namespace kads::gen;

namespace {

LieElement<Scalar> E(int i) { return LieElement<Scalar>::basis(i); }

LieElement<Scalar> bracket_of(const LieAlgebra<Scalar>& g, int i, int j) { return bracket(g, E(i), E(j)); }

bool same_table(const LieAlgebra<Scalar>& a, const LieAlgebra<Scalar>& b) {
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (!(bracket_of(a, i, j) == bracket_of(b, i, j))) return false;
  return true;
}

Mat3<double> random_rotation(std::mt19937_64& rng) {
  const double t = uniform(rng, 0, 3.1), p = uniform(rng, 0, 6.2);
  return sphere_rotation(std::cos(t), std::sin(t), std::cos(p), std::sin(p));
}

Mat3<double> matmul3(const Mat3<double>& a, const Mat3<double>& b) {
  Mat3<double> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

}  // namespace

TEST_CASE("(A)dS table entries") {
  const auto g = ads_algebra();
  const Scalar L(param::Lambda);
  CHECK(bracket_of(g, J1, J2) == E(J3));
  CHECK(bracket_of(g, K1, P0) == E(P1));
  CHECK(bracket_of(g, K1, P1) == E(P0));
  CHECK(bracket_of(g, P0, P1) == (-L) * E(K1));
  CHECK(bracket_of(g, P1, P2) == L * E(J3));
  CHECK(bracket_of(g, P0, J3) == LieElement<Scalar>());
  CHECK(bracket_of(g, K1, K2) == Scalar(-1) * E(J3));
}

TEST_CASE("bracket is bilinear and antisymmetric") {
  const auto g = ads_algebra();
  std::mt19937_64 rng(1);
  CHECK(bracket(g, E(K1) + E(K2), E(P0)) == E(P1) + E(P2));
  CHECK(bracket(ads_algebra(Scalar(0)), E(P0), E(P1)) == LieElement<Scalar>());
  for (int trial = 0; trial < 20; ++trial) {
    LieElement<Scalar> x, y;
    for (int i = 0; i < kDim; ++i) {
      x[i] = testing::random_scalar(rng, {param::eta}, 2, 1);
      y[i] = testing::random_scalar(rng, {param::kinv}, 2, 1);
    }
    CHECK(bracket(g, x, x) == LieElement<Scalar>());
    CHECK(bracket(g, x, y) == Scalar(-1) * bracket(g, y, x));
  }
}

TEST_CASE("Jacobi identity for every sign of the cosmological constant") {
  CHECK(jacobi_residual(ads_algebra()) == 0.0);
  for (long l : {-1L, 0L, 1L}) CHECK(jacobi_residual(ads_algebra(Scalar(l))) == 0.0);
  for (double l : {-1.0, -0.3, 0.0, 0.3, 1.0}) CHECK(jacobi_residual(ads_algebra_numeric(l)) < 1e-14);

  auto bad = ads_algebra();
  bad.set_bracket(J1, J2, {{J3, Scalar(2)}});
  CHECK(jacobi_residual(bad) > 0.0);
  // (J1, J2, J3) itself stays consistent: every term is [J3, J3] or [Ja, Ja].
  bool own_triple = false, with_j1_j2 = false;
  for (const auto& [v, res] : jacobi_violations(bad)) {
    if (v.i == J1 && v.j == J2 && v.k == J3) own_triple = true;
    if (v.i == J1 || v.j == J1 || v.k == J1) with_j1_j2 = with_j1_j2 || v.j == J2 || v.k == J2;
  }
  CHECK_FALSE(own_triple);
  CHECK(with_j1_j2);
}

TEST_CASE("flat limit equals the hand-written Poincare table") {
  const auto flat = substitute(ads_algebra(), {{param::Lambda, Scalar(0)}});
  CHECK(same_table(flat, poincare_algebra()));
  CHECK(same_table(ads_algebra(Scalar(0)), poincare_algebra()));
}

TEST_CASE("numeric table matches the exact one") {
  const auto g = ads_algebra();
  const auto h = ads_algebra_numeric(-0.7);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      const auto a = bracket_of(g, i, j);
      const auto b = bracket(h, LieElement<double>::basis(i), LieElement<double>::basis(j));
      for (int k = 0; k < kDim; ++k) CHECK(eval_numeric(a[k], {{param::Lambda, -0.7}}) == doctest::Approx(b[k]));
    }
}

TEST_CASE("rotations act as automorphisms") {
  const auto id = rotate_basis(Mat3<double>{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) CHECK(id.m[i][j] == (i == j ? 1.0 : 0.0));

  const double t = 0.7, p = 1.1;
  const auto phi = rotate_basis(transpose(sphere_rotation(std::cos(t), std::sin(t), std::cos(p), std::sin(p))));
  // The inverse rotation sends J3 to the sphere direction.
  const auto inv = rotate_basis(sphere_rotation(std::cos(t), std::sin(t), std::cos(p), std::sin(p)));
  const auto j3 = inv.apply(LieElement<double>::basis(J3));
  CHECK(j3[J1] == doctest::Approx(std::sin(t) * std::cos(p)));
  CHECK(j3[J2] == doctest::Approx(-std::sin(t) * std::sin(p)));
  CHECK(j3[J3] == doctest::Approx(std::cos(t)));
  CHECK(phi.apply(j3)[J3] == doctest::Approx(1.0));

  std::mt19937_64 rng(7);
  for (double l : {-1.0, 0.0, 1.0}) {
    const auto g = ads_algebra_numeric(l);
    for (int trial = 0; trial < 20; ++trial) CHECK(automorphism_residual(g, rotate_basis(random_rotation(rng))) < 1e-12);
  }

  CHECK_THROWS_AS(rotate_basis(Mat3<double>{{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), NotOrthogonal);
  CHECK_THROWS_AS(rotate_basis(Mat3<double>{{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), NotOrthogonal);
}

TEST_CASE("rotation composition") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r1 = random_rotation(rng), r2 = random_rotation(rng);
    const auto lhs = rotate_basis(r2).compose(rotate_basis(r1));
    const auto rhs = rotate_basis(matmul3(r2, r1));
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) CHECK(std::abs(lhs.m[i][j] - rhs.m[i][j]) < 1e-12);
  }

  // Exact: rational rotations built from Pythagorean triples.
  const Scalar a = Scalar::rational(3, 5), b = Scalar::rational(4, 5), c = Scalar::rational(5, 13),
               d = Scalar::rational(12, 13);
  const Mat3<Scalar> rz{{{a, -b, 0}, {b, a, 0}, {0, 0, 1}}};
  const Mat3<Scalar> rx{{{1, 0, 0}, {0, c, -d}, {0, d, c}}};
  Mat3<Scalar> prod;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Scalar s;
      for (int k = 0; k < 3; ++k) s += rz[i][k] * rx[k][j];
      prod[i][j] = s;
    }
  const auto lhs = rotate_basis(rz).compose(rotate_basis(rx));
  const auto rhs = rotate_basis(prod);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) CHECK(lhs.m[i][j] == rhs.m[i][j]);
  CHECK(automorphism_residual(ads_algebra(), rhs) == 0.0);
}

TEST_CASE("exact sphere rotation modulo trig relations") {
  using namespace param;
  const RewriteSystem trig({Rule{Monomial::of(ct, 2), Scalar(1) - Scalar(st) * Scalar(st)},
                            Rule{Monomial::of(cp, 2), Scalar(1) - Scalar(sp) * Scalar(sp)}});
  const auto phi = rotate_basis(sphere_rotation(Scalar(ct), Scalar(st), Scalar(cp), Scalar(sp)), &trig);
  CHECK(automorphism_residual(ads_algebra(), phi, &trig) == 0.0);
  CHECK_THROWS_AS(rotate_basis(sphere_rotation(Scalar(ct), Scalar(st), Scalar(cp), Scalar(sp))), NotOrthogonal);
}

TEST_CASE("structure constant dump") {
  const auto j = to_json(ads_algebra());
  CHECK(j.contains("[J1,J2]"));
  CHECK(j["[J1,J2]"]["J3"] == "1");
}
