#include "kads/rclass.hpp"

#include <algorithm>
#include <numbers>
#include <set>

namespace kads {

namespace {

std::vector<std::string> names10() {
  const auto& n = kinematical_names();
  return {n.begin(), n.end()};
}

void push_unique(std::vector<Scalar>& v, const Scalar& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

std::vector<Scalar> components(const Bivector<Scalar>& b) {
  std::vector<Scalar> out;
  for (const auto& [i, j] : b.support()) out.push_back(b.get(i, j));
  return out;
}

}  // namespace

RFamily generic_ansatz() {
  RFamily fam{Bivector<Scalar>(gen::kDim), {}, {}, {}};
  for (int i = 0; i < gen::kDim; ++i)
    for (int j = i + 1; j < gen::kDim; ++j) {
      const Param p = param::ansatz(i, j);
      fam.r.set(i, j, Scalar(p));
      fam.free_params.push_back(p);
    }
  return fam;
}

std::optional<LinearSolution> solve_linear(std::vector<Scalar> equations, const std::vector<Param>& unknowns) {
  const std::set<Param> unknown_set(unknowns.begin(), unknowns.end());
  std::vector<Param> fixed;
  for (int id = 0; id < param::kCount; ++id) {
    const Param p{static_cast<std::uint8_t>(id)};
    if (!unknown_set.count(p)) fixed.push_back(p);
  }

  LinearSolution sol;
  for (;;) {
    std::erase_if(equations, [](const Scalar& e) { return e.is_zero(); });
    if (equations.empty()) break;

    for (auto& e : equations) {
      const Monomial m = monomial_content(e, fixed);
      if (!m.is_one()) {
        e = divide_monomial(e, m);
        push_unique(sol.nonzero_assumptions, Scalar(m, Rational(1)));
      }
    }

    std::optional<std::pair<std::size_t, Param>> pivot;
    for (std::size_t k = 0; k < equations.size() && !pivot; ++k) {
      const auto ps = equations[k].parameters();
      bool has_unknown = false;
      for (Param p : ps) has_unknown = has_unknown || unknown_set.count(p);
      if (!has_unknown) return std::nullopt;  // nonzero in generic fixed parameters only
      for (auto it = unknowns.rbegin(); it != unknowns.rend(); ++it) {
        if (!ps.count(*it)) continue;
        const Scalar c = derivative(equations[k], *it);
        if (c.is_constant() && !c.is_zero()) {
          pivot = {k, *it};
          break;
        }
      }
    }
    if (!pivot) throw UnsolvableSystem("no invertible pivot in linear system");

    const auto [k, u] = *pivot;
    const Rational c = derivative(equations[k], u).constant_value();
    const Scalar rest = equations[k] - Scalar(Monomial::of(u), c);
    const Scalar value = Scalar(Rational(-1) / c) * rest;
    const Bindings bind{{u, value}};

    for (auto& [p, v] : sol.values) v = substitute(v, bind);
    sol.values[u] = value;
    equations.erase(equations.begin() + static_cast<long>(k));
    for (auto& e : equations) e = substitute(e, bind);
  }
  return sol;
}

RFamily impose_primitivity(const RFamily& fam, const LieAlgebra<Scalar>& g, const LieElement<Scalar>& x) {
  const auto eqs = components(cocommutator_of(g, fam.r, x));
  const auto sol = solve_linear(eqs, fam.free_params);
  if (!sol) throw UnsolvableSystem("primitivity system is inconsistent");

  RFamily out;
  out.r = substitute(fam.r, sol->values);
  for (Param p : fam.free_params)
    if (!sol->values.count(p)) out.free_params.push_back(p);
  for (const auto& rel : fam.relations) {
    Scalar s = substitute(rel, sol->values);
    if (!s.is_zero()) out.relations.push_back(s);
  }
  out.nonzero_assumptions = fam.nonzero_assumptions;
  for (const auto& a : sol->nonzero_assumptions) push_unique(out.nonzero_assumptions, a);
  return out;
}

bool family_contains(const RFamily& fam, const Bivector<Scalar>& target) {
  return solve_linear(components(fam.r - target), fam.free_params).has_value();
}

Bivector<Scalar> family_r_formal() {
  using namespace param;
  return family_r<Scalar>({alpha1, alpha2, alpha3}, {beta1, beta2, beta3}, Scalar(kinv));
}

Bivector<Scalar> r_kappa_poincare() {
  using namespace gen;
  Bivector<Scalar> r(kDim);
  for (int a = 1; a <= 3; ++a) r.set(K(a), P(a), param::kinv);
  return r;
}

Bivector<Scalar> r_kappa_poincare_twisted() {
  auto r = r_kappa_poincare();
  r.set(gen::J3, gen::P0, param::vartheta);
  return r;
}

Bivector<Scalar> r_kads() {
  auto r = r_kappa_poincare();
  r.set(gen::J1, gen::J2, Scalar(param::kinv) * Scalar(param::eta));
  return r;
}

Bivector<Scalar> r_kads_twisted() {
  auto r = r_kads();
  r.set(gen::J3, gen::P0, param::vartheta);
  return r;
}

Bivector<Scalar> r_2plus1() {
  using namespace gen;
  Bivector<Scalar> r(kDim);
  r.set(K1, P1, param::kinv);
  r.set(K2, P2, param::kinv);
  return r;
}

const std::vector<int>& subalgebra_2plus1() {
  static const std::vector<int> h{gen::P0, gen::P1, gen::P2, gen::K1, gen::K2, gen::J3};
  return h;
}

const std::vector<int>& lorentz_subalgebra() {
  static const std::vector<int> h{gen::K1, gen::K2, gen::K3, gen::J1, gen::J2, gen::J3};
  return h;
}

CocommutatorTable<Scalar> reference_delta_kappa_poincare() {
  using namespace gen;
  const Scalar k(param::kinv);
  CocommutatorTable<Scalar> d(kDim, Bivector<Scalar>(kDim));
  for (int a = 1; a <= 3; ++a) {
    d[P(a)].add(P(a), P0, k);
    d[K(a)].add(K(a), P0, k);
  }
  d[K1].add(P2, J3, k);
  d[K1].add(P3, J2, -k);
  d[K2].add(P3, J1, k);
  d[K2].add(P1, J3, -k);
  d[K3].add(P1, J2, k);
  d[K3].add(P2, J1, -k);
  return d;
}

CocommutatorTable<Scalar> reference_delta_kads() {
  using namespace gen;
  const Scalar k(param::kinv);
  const Scalar ek = Scalar(param::eta) * k;
  const Scalar e2k = Scalar(param::eta) * ek;
  CocommutatorTable<Scalar> d(kDim, Bivector<Scalar>(kDim));
  d[J1].add(J1, J3, ek);
  d[J2].add(J2, J3, ek);

  d[P1].add(P1, P0, k);
  d[P1].add(P3, J1, -ek);
  d[P1].add(K2, J3, -e2k);
  d[P1].add(K3, J2, e2k);

  d[P2].add(P2, P0, k);
  d[P2].add(P3, J2, -ek);
  d[P2].add(K1, J3, e2k);
  d[P2].add(K3, J1, -e2k);

  d[P3].add(P3, P0, k);
  d[P3].add(P1, J1, ek);
  d[P3].add(P2, J2, ek);
  d[P3].add(K1, J2, -e2k);
  d[P3].add(K2, J1, e2k);

  d[K1].add(K1, P0, k);
  d[K1].add(P2, J3, k);
  d[K1].add(P3, J2, -k);
  d[K1].add(K3, J1, -ek);

  d[K2].add(K2, P0, k);
  d[K2].add(P1, J3, -k);
  d[K2].add(P3, J1, k);
  d[K2].add(K3, J2, -ek);

  d[K3].add(K3, P0, k);
  d[K3].add(P1, J2, k);
  d[K3].add(P2, J1, -k);
  d[K3].add(K1, J1, ek);
  d[K3].add(K2, J2, ek);
  return d;
}

std::vector<Scalar> reference_constraints() {
  using namespace param;
  const Scalar a1(alpha1), a2(alpha2), a3(alpha3), b1(beta1), b2(beta2), b3(beta3);
  const Scalar ek = Scalar(eta) * Scalar(kinv);
  return {b1 * a3 - b3 * a1, b1 * a2 - b2 * a1, b2 * a3 - b3 * a2, a1 * a1 + a2 * a2 + a3 * a3 - ek * ek};
}

std::vector<Scalar> constraint_residuals(bool eta_zero) {
  const Scalar eta(param::eta);
  const auto g = ads_algebra(eta_zero ? Scalar(0) : -(eta * eta));
  const auto r = family_r_formal();
  const std::array<Param, 2> scales{param::eta, param::kinv};
  std::vector<Scalar> out;
  for (const auto& t : mcybe_tensor(g, r)) {
    for (const auto& [i, j, k] : t.support()) {
      Scalar p = t.get(i, j, k);
      if (!eta_zero) p = divide_monomial(p, monomial_content(p, scales));
      push_unique(out, monic(p));
    }
  }
  return out;
}

IdealComparison compare_by_mutual_reduction(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  const auto ra = RewriteSystem::from_polynomials(a);
  const auto rb = RewriteSystem::from_polynomials(b);
  IdealComparison cmp;
  cmp.forward = std::all_of(a.begin(), a.end(), [&](const Scalar& p) { return rb.reduce(p).is_zero(); });
  cmp.backward = std::all_of(b.begin(), b.end(), [&](const Scalar& p) { return ra.reduce(p).is_zero(); });
  return cmp;
}

const RewriteSystem& trig_relations() {
  static const RewriteSystem rules = [] {
    using namespace param;
    const std::vector<Scalar> polys{Scalar(ct) * Scalar(ct) + Scalar(st) * Scalar(st) - 1,
                                    Scalar(cp) * Scalar(cp) + Scalar(sp) * Scalar(sp) - 1};
    return RewriteSystem::from_polynomials(polys);
  }();
  return rules;
}

Bivector<Scalar> canonicalize_symbolic(bool twisted) {
  using namespace param;
  const Scalar c_t(ct), s_t(st), c_p(cp), s_p(sp);
  const Scalar radius = Scalar(eta) * Scalar(kinv);
  const auto alpha = sphere_param(c_t, s_t, c_p, s_p, radius);
  std::array<Scalar, 3> beta{};
  if (twisted) {
    const Scalar t = -Scalar(vartheta);
    beta = {t * s_t * c_p, -(t * s_t * s_p), t * c_t};
  }
  const auto r = family_r(alpha, beta, Scalar(kinv));
  const auto phi = canonicalizing_map(c_t, s_t, c_p, s_p, &trig_relations());
  return reduce(push_forward(phi, r), trig_relations());
}

std::vector<Scalar> twisted_alignment_residuals() {
  using namespace param;
  const Scalar c_t(ct), s_t(st), c_p(cp), s_p(sp);
  // β₃ = t cθ, so cθβ₁ = β₃ sθcφ becomes β₁ = t sθcφ; t stands in for −ϑ.
  const Scalar t = -Scalar(vartheta);
  const Bindings bind{{alpha1, Scalar(eta) * Scalar(kinv) * s_t * c_p},
                      {alpha2, -(Scalar(eta) * Scalar(kinv) * s_t * s_p)},
                      {alpha3, Scalar(eta) * Scalar(kinv) * c_t},
                      {beta1, t * s_t * c_p},
                      {beta2, -(t * s_t * s_p)},
                      {beta3, t * c_t}};
  std::vector<Scalar> out;
  for (const auto& p : reference_constraints()) out.push_back(trig_relations().reduce(substitute(p, bind)));
  return out;
}

std::array<double, 4> constraint_values(const std::array<double, 3>& a, const std::array<double, 3>& b,
                                        double eta_kinv) {
  return {b[0] * a[2] - b[2] * a[0], b[0] * a[1] - b[1] * a[0], b[1] * a[2] - b[2] * a[1],
          a[0] * a[0] + a[1] * a[1] + a[2] * a[2] - eta_kinv * eta_kinv};
}

CanonicalizeResult canonicalize(const CanonicalizeInput& in, double tol) {
  const double c_t = std::cos(in.theta), s_t = std::sin(in.theta);
  const double c_p = std::cos(in.phi), s_p = std::sin(in.phi);
  if (in.beta3 != 0.0 && std::abs(c_t) < 1e-6) throw ConstraintViolated("theta too close to pi/2 for a twisted point");

  const double radius = in.eta * in.kinv;
  const auto alpha = sphere_param(c_t, s_t, c_p, s_p, radius);
  const double b = in.beta3 == 0.0 ? 0.0 : in.beta3 / c_t;
  const std::array<double, 3> beta{b * s_t * c_p, -b * s_t * s_p, b * c_t};
  for (double v : constraint_values(alpha, beta, radius))
    if (std::abs(v) > tol) throw ConstraintViolated("family point violates the quadratic constraints");

  CanonicalizeResult res;
  res.r_input = family_r(alpha, beta, in.kinv);
  res.r_rotated = push_forward(canonicalizing_map(c_t, s_t, c_p, s_p), res.r_input);
  res.vartheta = -b;

  using namespace gen;
  for (int a = 1; a <= 3; ++a) res.r_expected.set(K(a), P(a), in.kinv);
  res.r_expected.set(J1, J2, radius);
  res.r_expected.set(J3, P0, res.vartheta);

  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j)
      res.deviation = std::max(res.deviation, std::abs(res.r_rotated.get(i, j) - res.r_expected.get(i, j)));
  return res;
}

double family_mcybe_residual(const std::array<double, 3>& alpha, const std::array<double, 3>& beta, double eta,
                             double kinv) {
  static thread_local double cached_eta = std::numeric_limits<double>::quiet_NaN();
  static thread_local LieAlgebra<double> g = ads_algebra_numeric(0.0);
  if (!(cached_eta == eta)) {
    g = ads_algebra_numeric(-eta * eta);
    cached_eta = eta;
  }
  return mcybe_residual(g, family_r(alpha, beta, kinv));
}

namespace {

std::array<double, 3> random_direction(std::mt19937_64& rng) {
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

SampleStats summarize(const std::vector<std::pair<double, double>>& rows) {
  SampleStats st;
  st.count = rows.size();
  if (rows.empty()) return st;
  st.min_residual = st.max_residual = rows[0].first;
  st.min_distance = rows[0].second;
  for (const auto& [res, dist] : rows) {
    st.min_residual = std::min(st.min_residual, res);
    st.max_residual = std::max(st.max_residual, res);
    st.min_distance = std::min(st.min_distance, dist);
  }
  return st;
}

}  // namespace

SampleStats sample_satisfying(std::size_t n, std::uint64_t seed, double eta, double kinv, Exec exec) {
  const double radius = eta * kinv;
  auto rows = map_indices(
      n,
      [&](std::size_t i) {
        auto rng = sample_rng(seed, i);
        const auto dir = random_direction(rng);
        const double t = uniform(rng, -1.0, 1.0);
        const std::array<double, 3> alpha{radius * dir[0], radius * dir[1], radius * dir[2]};
        const std::array<double, 3> beta{t * dir[0], t * dir[1], t * dir[2]};
        return std::pair{family_mcybe_residual(alpha, beta, eta, kinv), 0.0};
      },
      exec);
  return summarize(rows);
}

SampleStats sample_violating(std::size_t n, std::uint64_t seed, double eta, double kinv, Exec exec) {
  const double radius = eta * kinv;
  auto rows = map_indices(
      n,
      [&](std::size_t i) {
        auto rng = sample_rng(seed, i);
        const auto dir = random_direction(rng);
        double delta = uniform(rng, 0.1, 0.5);
        // shrink only when the offset keeps the radius nonnegative
        if (rng() & 1U && radius - delta >= 0.0) delta = -delta;
        const double rad = radius + delta;
        const std::array<double, 3> alpha{rad * dir[0], rad * dir[1], rad * dir[2]};
        const std::array<double, 3> beta{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
        return std::pair{family_mcybe_residual(alpha, beta, eta, kinv), std::abs(delta)};
      },
      exec);
  return summarize(rows);
}

SampleStats sample_off_family(const RFamily& reduced, std::size_t n, std::uint64_t seed, double eta, double kinv,
                              Exec exec) {
  using namespace gen;
  const Param on_family[] = {param::ansatz(P0, J1), param::ansatz(P0, J2), param::ansatz(P0, J3),
                             param::ansatz(J1, J2), param::ansatz(J1, J3), param::ansatz(J2, J3)};
  const Param diagonal[] = {param::ansatz(P1, K1), param::ansatz(P2, K2), param::ansatz(P3, K3)};
  auto is_in = [](Param p, std::span<const Param> set) { return std::find(set.begin(), set.end(), p) != set.end(); };

  std::vector<Param> off;
  for (Param p : reduced.free_params)
    if (!is_in(p, on_family) && !is_in(p, diagonal)) off.push_back(p);

  const double radius = eta * kinv;
  const auto g = ads_algebra_numeric(-eta * eta);
  auto rows = map_indices(
      n,
      [&](std::size_t i) {
        auto rng = sample_rng(seed, i);
        const auto dir = random_direction(rng);
        const double t = uniform(rng, -1.0, 1.0);
        // α = R·dir, β = t·dir in ansatz coordinates (K_a∧P_a = −P_a∧K_a)
        NumericBindings vals{{param::Lambda, -eta * eta}};
        vals[param::ansatz(J2, J3)] = radius * dir[0];
        vals[param::ansatz(J1, J3)] = -radius * dir[1];
        vals[param::ansatz(J1, J2)] = radius * dir[2];
        vals[param::ansatz(P0, J1)] = t * dir[0];
        vals[param::ansatz(P0, J2)] = t * dir[1];
        vals[param::ansatz(P0, J3)] = t * dir[2];
        for (Param p : diagonal) vals[p] = -kinv;
        double dist = 0.0;
        if (!off.empty()) {
          const std::size_t forced = static_cast<std::size_t>(rng() % off.size());
          for (std::size_t k = 0; k < off.size(); ++k) {
            double v = uniform(rng, -0.5, 0.5);
            if (k == forced) v = (rng() & 1U ? 1.0 : -1.0) * uniform(rng, 0.1, 0.5);
            vals[off[k]] = v;
            dist = std::max(dist, std::abs(v));
          }
        }
        for (Param p : reduced.free_params)
          if (!vals.count(p)) vals[p] = 0.0;
        return std::pair{mcybe_residual(g, to_numeric(reduced.r, vals)), dist};
      },
      exec);
  return summarize(rows);
}

nlohmann::json to_json(const RFamily& fam) {
  nlohmann::json j;
  j["r"] = to_json(fam.r, names10());
  std::vector<std::string> free;
  for (Param p : fam.free_params) free.emplace_back(param_name(p));
  j["free_params"] = free;
  std::vector<std::string> rel, nz;
  for (const auto& s : fam.relations) rel.push_back(to_string(s));
  for (const auto& s : fam.nonzero_assumptions) nz.push_back(to_string(s));
  j["relations"] = rel;
  j["nonzero_assumptions"] = nz;
  return j;
}

}  // namespace kads
