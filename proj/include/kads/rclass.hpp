#pragma once

// Classical r-matrices for the (A)dS family: named solutions, the
// multiparametric family and its constraint ideal, primitivity reduction of
// a generic ansatz, and canonicalization by rotation.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "kads/bialgebra.hpp"
#include "kads/parallel.hpp"

namespace kads {

/// Parametric r-matrix: components are polynomials in `free_params` (and
/// possibly other, fixed parameters such as Lambda).
struct RFamily {
  Bivector<Scalar> r;
  std::vector<Param> free_params;
  /// Polynomials in free_params required to vanish.
  std::vector<Scalar> relations;
  /// Factors divided out while solving; the family is valid where they are nonzero.
  std::vector<Scalar> nonzero_assumptions;
};

/// 45 independent coefficients r^{ij}, one per wedge pair.
RFamily generic_ansatz();

/// Result of solving a linear system over the Scalar ring.
struct LinearSolution {
  Bindings values;  // eliminated parameter -> expression in the remaining ones
  std::vector<Scalar> nonzero_assumptions;
};

/// Solves equations linear in `unknowns`, with coefficients polynomial in
/// other parameters that are treated as generic (nonzero).  Returns nullopt
/// if the system is inconsistent; throws UnsolvableSystem if no pivot with an
/// invertible coefficient exists.
std::optional<LinearSolution> solve_linear(std::vector<Scalar> equations, const std::vector<Param>& unknowns);

/// Restricts the family to δ(X) = 0.  X must be a basis generator.
RFamily impose_primitivity(const RFamily& fam, const LieAlgebra<Scalar>& g, const LieElement<Scalar>& x);

/// True iff some values of fam.free_params turn fam.r into `target`.
bool family_contains(const RFamily& fam, const Bivector<Scalar>& target);

/// κ⁻¹ Σ K_a∧P_a + P_0∧(β·J) + α_3 J_1∧J_2 − α_2 J_1∧J_3 + α_1 J_2∧J_3
template <class T>
Bivector<T> family_r(const std::array<T, 3>& alpha, const std::array<T, 3>& beta, const T& kinv) {
  using namespace gen;
  Bivector<T> r(kDim);
  for (int a = 1; a <= 3; ++a) {
    r.set(K(a), P(a), kinv);
    r.set(P0, J(a), beta[a - 1]);
  }
  r.set(J1, J2, alpha[2]);
  r.set(J1, J3, -alpha[1]);
  r.set(J2, J3, alpha[0]);
  return r;
}

/// The family with formal α, β, κ⁻¹.
Bivector<Scalar> family_r_formal();

Bivector<Scalar> r_kappa_poincare();          // κ⁻¹ Σ K_a∧P_a
Bivector<Scalar> r_kappa_poincare_twisted();  // + ϑ J_3∧P_0
Bivector<Scalar> r_kads();                    // κ⁻¹ (Σ K_a∧P_a + η J_1∧J_2)
Bivector<Scalar> r_kads_twisted();            // + ϑ J_3∧P_0
Bivector<Scalar> r_2plus1();                  // κ⁻¹ (K_1∧P_1 + K_2∧P_2)

/// Generators {P0, P1, P2, K1, K2, J3} of the (2+1) subalgebra.
const std::vector<int>& subalgebra_2plus1();
/// Lorentz subalgebra {K_a, J_a}.
const std::vector<int>& lorentz_subalgebra();

/// Expected cocommutator tables, typed in as reference data.
CocommutatorTable<Scalar> reference_delta_kappa_poincare();
CocommutatorTable<Scalar> reference_delta_kads();

/// β₁α₃−β₃α₁, β₁α₂−β₂α₁, β₂α₃−β₃α₂, α₁²+α₂²+α₃²−(ηκ⁻¹)²
std::vector<Scalar> reference_constraints();

/// Generating set of the mCYBE conditions on family_r over ads_algebra(−η²):
/// every nonzero residual component, divided by its monomial content in
/// (η, κ⁻¹), made monic and deduplicated.  With eta_zero the algebra is
/// Poincaré and no content is divided out.
std::vector<Scalar> constraint_residuals(bool eta_zero = false);

struct IdealComparison {
  bool forward = false;   // every `a` reduces to 0 modulo `b`
  bool backward = false;  // every `b` reduces to 0 modulo `a`
  bool equal() const { return forward && backward; }
};
IdealComparison compare_by_mutual_reduction(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

/// α = (R sθ cφ, −R sθ sφ, R cθ).
template <class T>
std::array<T, 3> sphere_param(const T& ct, const T& st, const T& cp, const T& sp, const T& radius) {
  return {radius * st * cp, -(radius * st * sp), radius * ct};
}

/// cθ² → 1 − sθ², cφ² → 1 − sφ².
const RewriteSystem& trig_relations();

/// Rotation taking the unit vector (sθcφ, −sθsφ, cθ) to e₃, as a basis map.
template <class T>
BasisMap<T> canonicalizing_map(const T& ct, const T& st, const T& cp, const T& sp,
                               const RewriteSystem* rules = nullptr) {
  return rotate_basis(transpose(sphere_rotation(ct, st, cp, sp)), rules);
}

/// Exact canonicalization of the sphere family with β = −ϑ n (n the sphere
/// direction): returns the rotated r, reduced modulo the trig relations.
Bivector<Scalar> canonicalize_symbolic(bool twisted);

/// Clears the tan θ denominators of the twisted alignment and returns the
/// constraint residuals of the aligned family reduced modulo the trig
/// relations (all zero when the alignment is correct).
std::vector<Scalar> twisted_alignment_residuals();

struct CanonicalizeInput {
  double theta = 0.0;
  double phi = 0.0;
  double beta3 = 0.0;  // component of β along J_3 before rotation
  double eta = 1.0;
  double kinv = 1.0;
};

struct CanonicalizeResult {
  Bivector<double> r_input{gen::kDim};
  Bivector<double> r_rotated{gen::kDim};
  Bivector<double> r_expected{gen::kDim};
  double vartheta = 0.0;   // twist of the canonical form
  double deviation = 0.0;  // max |r_rotated − r_expected|
};

/// Numeric canonicalization.  β is aligned with α (β = (β₃/cθ) n); throws
/// ConstraintViolated if the constructed point fails the constraints by more
/// than `tol`, or if θ is too close to π/2 for the alignment.
CanonicalizeResult canonicalize(const CanonicalizeInput& in, double tol = 1e-10);

/// Numeric residuals of reference_constraints at (α, β, ηκ⁻¹).
std::array<double, 4> constraint_values(const std::array<double, 3>& alpha, const std::array<double, 3>& beta,
                                        double eta_kinv);

struct SampleStats {
  std::size_t count = 0;
  double min_residual = 0.0;
  double max_residual = 0.0;
  double min_distance = 0.0;  // violating samples: lower bound on distance to the constraint set
};

/// Numeric mCYBE residual of family_r over the AdS algebra at η.
double family_mcybe_residual(const std::array<double, 3>& alpha, const std::array<double, 3>& beta, double eta,
                             double kinv);

/// Random points on the constraint set (α on the sphere of radius ηκ⁻¹, β ∥ α).
SampleStats sample_satisfying(std::size_t n, std::uint64_t seed, double eta, double kinv, Exec exec = Exec::parallel);
/// Random points whose α lies off the sphere by a radial offset in [0.1, 0.5].
SampleStats sample_violating(std::size_t n, std::uint64_t seed, double eta, double kinv, Exec exec = Exec::parallel);

/// Numeric mCYBE residuals of the primitivity-reduced generic family at
/// random points displaced from the family of κ⁻¹ΣK∧P + P₀∧β·J + α·J∧J by
/// at least 0.1 in the remaining directions.
SampleStats sample_off_family(const RFamily& reduced, std::size_t n, std::uint64_t seed, double eta, double kinv,
                              Exec exec = Exec::parallel);

nlohmann::json to_json(const RFamily& fam);

}  // namespace kads
