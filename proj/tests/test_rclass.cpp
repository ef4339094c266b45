#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "kads/rclass.hpp"
#include "support.hpp"

using namespace kads;
using namespace kads::gen;

namespace {

LieElement<Scalar> E(int i) { return LieElement<Scalar>::basis(i); }

Scalar S(Param p) { return Scalar(p); }

double max_component(const Bivector<double>& r) {
  double m = 0.0;
  for (int i = 0; i < r.dim(); ++i)
    for (int j = i + 1; j < r.dim(); ++j) m = std::max(m, std::abs(r.get(i, j)));
  return m;
}

}  // namespace

TEST_CASE("generic ansatz") {
  const auto fam = generic_ansatz();
  CHECK(fam.free_params.size() == 45);
  CHECK(std::set<Param>(fam.free_params.begin(), fam.free_params.end()).size() == 45);
  CHECK(fam.r.support().size() == 45);
  Bindings zero;
  for (Param p : fam.free_params) zero[p] = Scalar(0);
  CHECK(substitute(fam.r, zero).is_zero());
}

TEST_CASE("primitivity of the time translation") {
  const auto g = ads_algebra();
  CHECK(cocommutator_of(g, family_r_formal(), E(P0)).is_zero());

  RFamily single;
  const Param c = param::ansatz(P0, K1);
  single.r.set(K1, P0, S(c));
  single.free_params = {c};
  const auto forced = impose_primitivity(single, g, E(P0));
  CHECK(forced.r.is_zero());
  CHECK(forced.free_params.empty());

  CHECK(impose_primitivity(RFamily{}, g, E(P0)).r.is_zero());

  const auto reduced = impose_primitivity(generic_ansatz(), g, E(P0));
  CHECK(cocommutator_of(g, reduced.r, E(P0)).is_zero());
  CHECK(family_contains(reduced, family_r_formal()));
  CHECK(family_contains(reduced, r_kads()));
  CHECK(family_contains(reduced, r_kads_twisted()));
  Bivector<Scalar> off;
  off.set(K1, P0, Scalar(1));
  CHECK_FALSE(family_contains(reduced, off));
}

TEST_CASE("off-family points of the reduced ansatz violate the mCYBE") {
  const auto reduced = impose_primitivity(generic_ansatz(), ads_algebra(), E(P0));
  const auto stats = sample_off_family(reduced, 200, kDefaultSeed, 1.0, 1.0);
  CHECK(stats.count == 200);
  CHECK(stats.min_distance >= 0.1);
  CHECK(stats.min_residual > 1e-6);
}

TEST_CASE("named members of the family") {
  const Scalar eta = S(param::eta), k = S(param::kinv), th = S(param::vartheta);
  const std::array<Scalar, 3> zero{};
  CHECK(family_r<Scalar>({Scalar(0), Scalar(0), eta * k}, zero, k) == r_kads());
  CHECK(family_r<Scalar>(zero, zero, k) == r_kappa_poincare());
  CHECK(family_r<Scalar>({Scalar(0), Scalar(0), eta * k}, {Scalar(0), Scalar(0), -th}, k) == r_kads_twisted());
  CHECK(r_kads_twisted().get(J3, P0) == th);
}

TEST_CASE("constraint ideal") {
  const auto found = constraint_residuals();
  const auto cmp = compare_by_mutual_reduction(found, reference_constraints());
  CHECK(cmp.forward);
  CHECK(cmp.backward);

  // Independent route: every raw mCYBE component lies in the reference ideal.
  const Scalar eta = S(param::eta);
  const auto rules = RewriteSystem::from_polynomials(reference_constraints());
  for (const auto& t : mcybe_tensor(ads_algebra(-(eta * eta)), family_r_formal()))
    for (const auto& [i, j, k] : t.support()) CHECK(rules.reduce(t.get(i, j, k)).is_zero());

  // At η = 0 the conditions force α = 0 and leave β free.
  const auto flat = constraint_residuals(true);
  Bindings alpha_zero;
  for (Param p : param::alpha) alpha_zero[p] = Scalar(0);
  for (const auto& p : flat) CHECK(substitute(p, alpha_zero).is_zero());
  const Scalar sq = S(param::alpha1) * S(param::alpha1) + S(param::alpha2) * S(param::alpha2) +
                    S(param::alpha3) * S(param::alpha3);
  CHECK(compare_by_mutual_reduction({sq}, flat).forward);
}

TEST_CASE("numeric constraints agree with the numeric mCYBE") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const double eta = uniform(rng, 0.2, 1.5), kinv = uniform(rng, 0.2, 1.5);
    std::array<double, 3> alpha{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
    std::array<double, 3> beta{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
    if (trial % 2 == 0) {
      // project onto the constraint set: α on the sphere, β parallel to α
      const double n = std::sqrt(alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2]);
      const double t = beta[0];
      for (int a = 0; a < 3; ++a) {
        alpha[a] *= eta * kinv / n;
        beta[a] = t * alpha[a];
      }
    }
    double c = 0.0;
    for (double v : constraint_values(alpha, beta, eta * kinv)) c = std::max(c, std::abs(v));
    const double res = family_mcybe_residual(alpha, beta, eta, kinv);
    if (trial % 2 == 0) {
      CHECK(c < 1e-12);
      CHECK(res < 1e-10);
    } else {
      CHECK(c > 1e-6);
      CHECK(res > 1e-8);
    }
  }
}

TEST_CASE("sphere parametrisation") {
  using namespace param;
  const Scalar r = S(R);
  const auto a0 = sphere_param(Scalar(1), Scalar(0), Scalar(1), Scalar(0), r);
  CHECK(a0[0].is_zero());
  CHECK(a0[1].is_zero());
  CHECK(a0[2] == r);
  const auto ax = sphere_param(Scalar(0), Scalar(1), Scalar(1), Scalar(0), r);
  CHECK(ax[0] == r);
  const auto a = sphere_param(S(ct), S(st), S(cp), S(sp), r);
  CHECK(trig_relations().reduce(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) == r * r);
  const auto cons = reference_constraints();
  const Bindings sub{{alpha1, a[0]}, {alpha2, a[1]}, {alpha3, a[2]}, {beta1, Scalar(0)}, {beta2, Scalar(0)},
                     {beta3, Scalar(0)}, {eta, r}, {kinv, Scalar(1)}};
  for (const auto& p : cons) CHECK(trig_relations().reduce(substitute(p, sub)).is_zero());
}

TEST_CASE("exact canonical forms") {
  CHECK(canonicalize_symbolic(false) == r_kads());
  CHECK(canonicalize_symbolic(true) == r_kads_twisted());
  for (const auto& p : twisted_alignment_residuals()) CHECK(p.is_zero());
}

TEST_CASE("numeric canonicalisation") {
  const auto plain = canonicalize({0.7, 1.1, 0.0, 1.0, 1.0});
  CHECK(plain.deviation < 1e-12);
  CHECK(plain.vartheta == 0.0);

  const auto id = canonicalize({0.0, 0.4, 0.0, 0.8, 1.3});
  CHECK(max_component(id.r_rotated - id.r_input) < 1e-15);

  const auto tw = canonicalize({0.0, 0.3, 0.6, 1.0, 1.0});
  CHECK(tw.vartheta == doctest::Approx(-0.6));
  CHECK(tw.deviation < 1e-12);

  CHECK_THROWS_AS(canonicalize({std::numbers::pi / 2, 0.3, 0.5, 1.0, 1.0}), ConstraintViolated);

  std::mt19937_64 rng(59);
  const double eta = 0.9, kinv = 1.2;
  const auto g = ads_algebra_numeric(-eta * eta);
  for (int trial = 0; trial < 100; ++trial) {
    const CanonicalizeInput in{uniform(rng, 0, 1.3), uniform(rng, 0, 6.28), trial % 2 ? uniform(rng, -1, 1) : 0.0,
                               eta, kinv};
    const auto res = canonicalize(in);
    CHECK(res.deviation < 1e-12);
    // Automorphisms preserve solutions and the primitive P0.
    CHECK(mcybe_residual(g, res.r_rotated) < 1e-12);
    CHECK(max_component(cocommutator_of(g, res.r_rotated, P0)) < 1e-12);
  }
}

TEST_CASE("falsification sampling") {
  const auto sat = sample_satisfying(1000, kDefaultSeed, 1.0, 1.0);
  CHECK(sat.count == 1000);
  CHECK(sat.max_residual < 1e-10);
  const auto vio = sample_violating(1000, kDefaultSeed, 1.0, 1.0);
  CHECK(vio.min_distance >= 0.1);
  CHECK(vio.min_residual > 1e-6);
  const auto serial = sample_violating(1000, kDefaultSeed, 1.0, 1.0, Exec::serial);
  CHECK(serial.min_residual == vio.min_residual);
  CHECK(serial.max_residual == vio.max_residual);
}

TEST_CASE("(2+1) r-matrix") {
  const auto r = r_2plus1();
  for (int a : {J1, J2, J3})
    for (int b : {J1, J2, J3}) CHECK(r.get(a, b).is_zero());
  const auto& h = subalgebra_2plus1();
  CHECK(mcybe_residual(restrict_algebra(ads_algebra(), h), restrict_bivector(r, h)) == 0.0);
  CHECK(mcybe_residual(restrict_algebra(ads_algebra(Scalar(0)), h), restrict_bivector(r, h)) == 0.0);
}
