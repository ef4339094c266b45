// Acceptance driver: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kads/bialgebra.hpp"
#include "kads/group_geom.hpp"
#include "kads/liealg.hpp"
#include "kads/ncalg.hpp"
#include "kads/parallel.hpp"
#include "kads/rclass.hpp"
#include "kads/sklyanin.hpp"

using namespace kads;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double mismatches(const CocommutatorTable<Scalar>& a, const CocommutatorTable<Scalar>& b) {
  double n = 0;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (int i = 0; i < a[x].dim(); ++i)
      for (int j = i + 1; j < a[x].dim(); ++j)
        if (!(a[x].get(i, j) == b[x].get(i, j))) n += 1;
  return n;
}

double max_abs_diff(const SquareMat<double>& a, const SquareMat<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

Outcome bialgebra_reproduction() {
  const Scalar eta(param::eta);
  const double flat = mismatches(cocommutator(ads_algebra(Scalar(0)), r_kappa_poincare()), reference_delta_kappa_poincare());
  const double curved = mismatches(cocommutator(ads_algebra(-(eta * eta)), r_kads()), reference_delta_kads());
  return {flat == 0 && curved == 0,
          "mismatched coefficients: kappa_poincare=" + fmt(flat) + " kappa_ads=" + fmt(curved)};
}

Outcome mcybe_certificates() {
  const Scalar eta(param::eta);
  const auto flat = ads_algebra(Scalar(0));
  const auto curved = ads_algebra(-(eta * eta));
  const auto& h = subalgebra_2plus1();
  const double r0 = mcybe_residual(flat, r_kappa_poincare(), 0.0);
  const double r0t = mcybe_residual(flat, r_kappa_poincare_twisted(), 0.0);
  const double rl = mcybe_residual(curved, r_kads(), 0.0);
  const double rlt = mcybe_residual(curved, r_kads_twisted(), 0.0);
  const double r21 = mcybe_residual(restrict_algebra(ads_algebra(), h), restrict_bivector(r_2plus1(), h), 0.0);
  return {r0 + r0t + rl + rlt + r21 == 0,
          "nonzero components: kappa_poincare=" + fmt(r0) + " twisted_kappa_poincare=" + fmt(r0t) +
              " kappa_ads=" + fmt(rl) + " twisted_kappa_ads=" + fmt(rlt) + " kappa_ads_2plus1=" + fmt(r21)};
}

Outcome constraint_surface() {
  const auto cmp = compare_by_mutual_reduction(constraint_residuals(), reference_constraints());
  const auto sat = sample_satisfying(1000, kDefaultSeed, 1.0, 1.0);
  const auto vio = sample_violating(1000, kDefaultSeed + 1, 1.0, 1.0);
  const bool pass = cmp.equal() && sat.max_residual < 1e-10 && vio.min_residual > 1e-6;
  return {pass, std::string("ideal_equal=") + (cmp.equal() ? "yes" : "no") +
                    " satisfying_max=" + fmt(sat.max_residual) + " (< 1e-10) violating_min=" +
                    fmt(vio.min_residual) + " (> 1e-6)"};
}

Outcome canonicalization() {
  const auto dev = map_indices(100, [](std::size_t i) {
    auto rng = sample_rng(kDefaultSeed ^ 0xC0FFEEULL, i);
    CanonicalizeInput in;
    in.theta = uniform(rng, 0.0, 1.3);
    in.phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    in.beta3 = i % 2 == 0 ? 0.0 : uniform(rng, -1.0, 1.0);
    return canonicalize(in).deviation;
  });
  double worst = 0.0;
  for (double d : dev) worst = std::max(worst, d);
  return {worst < 1e-12, "max component deviation=" + fmt(worst) + " over 100 samples (< 1e-12)"};
}

Outcome group_geometry() {
  double iso = 0.0, sphere = 0.0, metric = 0.0;
  for (double l : {-1.0, -0.3, 0.0, 0.3, 1.0}) {
    const auto r = map_indices(500, [l](std::size_t i) {
      auto rng = sample_rng(kDefaultSeed, i);
      const GroupPoint p = random_chart_point(rng, l, 0.5);
      const LocalPoint x{p.coords[0], p.coords[1], p.coords[2], p.coords[3]};
      const double m = (metric_at(x, l) - metric_pullback(x, l)).cwiseAbs().maxCoeff();
      return std::array<double, 3>{isometry_residual(group_element(p), l),
                                   std::abs(pseudosphere_residual(ambient_from_local(x, l), l)), m};
    });
    for (const auto& v : r) {
      iso = std::max(iso, v[0]);
      sphere = std::max(sphere, v[1]);
      metric = std::max(metric, v[2]);
    }
  }
  return {iso < 1e-10 && sphere < 1e-10 && metric < 1e-8,
          "isometry=" + fmt(iso) + " (< 1e-10) pseudosphere=" + fmt(sphere) + " (< 1e-10) metric=" + fmt(metric) +
              " (< 1e-8)"};
}

Outcome sklyanin_verification() {
  double dev = 0.0, lorentz = 0.0;
  std::string worst;
  for (double l : {-1.0, 1.0}) {
    PoissonConfig cfg;
    cfg.lambda = l;
    cfg.kinv = 1.0;
    cfg.jj = 1.0;
    cfg.vartheta = 0.25;
    cfg.samples = 200;
    for (TableKind k : {TableKind::local, TableKind::twisted_local, TableKind::ambient}) {
      const auto v = verify_table(k, cfg);
      if (v.max_deviation > dev) worst = std::string(table_name(k)) + " at lambda=" + fmt(l);
      dev = std::max(dev, v.max_deviation);
      lorentz = std::max(lorentz, v.lorentz_deviation);
    }
  }
  return {dev < 1e-8 && lorentz < 1e-8, "bracket deviation=" + fmt(dev) + " (< 1e-8) lorentz dependence=" +
                                            fmt(lorentz) + " (< 1e-8)" + (worst.empty() ? "" : " largest for " + worst)};
}

Outcome limits_and_expansions() {
  const double kinv = 0.8, theta = 0.25;
  double zeroth = 0.0, first_mismatch = 0.0, projection = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    auto rng = sample_rng(kDefaultSeed ^ 0xE7AULL, i);
    std::vector<double> x(4);
    for (auto& v : x) v = uniform(rng, -0.8, 0.8);
    const auto km = table_eval<double>(TableKind::kappa_minkowski, x, {0.0, kinv, 0.0, 0.0});
    const auto tw = table_eval<double>(TableKind::twisted_minkowski, x, {0.0, kinv, 0.0, theta});
    const auto e = eta_expansion(TableKind::local, x, kinv, 0.0);
    const auto et = eta_expansion(TableKind::twisted_local, x, kinv, theta);
    zeroth = std::max({zeroth, max_abs_diff(e.zeroth, km), max_abs_diff(et.zeroth, tw)});
    // On the η = 0 pseudosphere s4 = 1 and s0..s3 = x0..x3.
    const auto amb = table_eval<double>(TableKind::ambient, {1.0, x[0], x[1], x[2], x[3]}, {0.0, kinv, 0.0, 0.0});
    SquareMat<double> block = zero_square<double>(4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) block[a][b] = amb[a + 1][b + 1];
    zeroth = std::max(zeroth, max_abs_diff(block, km));
    const auto fo = table_eval<double>(TableKind::first_order_local, x, {0.0, 0.0, kinv, 0.0});
    for (int a = 1; a < 4; ++a)
      for (int b = 1; b < 4; ++b) first_mismatch += e.first[a][b] == fo[a][b] ? 0 : 1;
    const double eta = uniform(rng, 0.1, 1.0);
    const auto pr = project_2plus1({x[0], x[1], x[2], 0.0}, {eta * eta, kinv, eta * kinv, 0.0});
    projection = std::max(projection, std::abs(pr[1][2]));
  }
  return {zeroth < 1e-10 && first_mismatch == 0 && projection == 0.0,
          "eta->0 deviation=" + fmt(zeroth) + " (< 1e-10) first-order mismatches=" + fmt(first_mismatch) +
              " projected {x1,x2} max=" + fmt(projection)};
}

Outcome quantum_algebras() {
  int bad = 0;
  std::string failing;
  for (const auto& a : {kappa_minkowski_algebra(), twisted_kappa_minkowski_algebra(), first_order_kads_algebra(),
                        quantum_sphere_algebra(), ambient_algebra()})
    if (!certified(jacobi_certificate(a))) {
      ++bad;
      failing += " " + a.name();
    }
  auto nonzero = [](const std::vector<CasimirResult>& v) {
    int n = 0;
    for (const auto& c : v) n += c.commutator.is_zero() ? 0 : 1;
    return n;
  };
  const auto q = quantum_sphere_algebra();
  const auto amb = ambient_algebra();
  const auto s = ambient_space_casimir(amb);
  const int cas = nonzero(casimir_check(q, quantum_sphere_casimir(q), {0, 1, 2})) +
                  nonzero(casimir_check(amb, s, {amb.index("s1"), amb.index("s2"), amb.index("s3")})) +
                  nonzero(casimir_check(amb, ambient_pseudosphere_casimir(amb), {0, 1, 2, 3, 4}));
  const bool d0 = commutator(amb, s, amb.gen("s0")) == normal_form(amb, displayed_space_casimir_s0(amb));
  const bool d4 = commutator(amb, s, amb.gen("s4")) == normal_form(amb, displayed_space_casimir_s4(amb));
  return {bad == 0 && cas == 0 && d0 && d4,
          "uncertified algebras=" + std::to_string(bad) + failing + " non-central commutators=" +
              std::to_string(cas) + " displayed brackets=" + (d0 && d4 ? "match" : "differ")};
}

Outcome poisson_construction() {
  const Scalar x1(param::x1), x2(param::x2), x3(param::x3);
  const Scalar f = Scalar(Rational(-1, 2)) * Scalar(param::eta) * Scalar(param::kinv) * x3;
  const auto b = poisson_3d_symbolic(f, x1 * x1 + x2 * x2 + x3 * x3);
  const auto t = symbolic_table(TableKind::quadratic_su2);
  int mism = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mism += b[i][j] == t.b[i][j] ? 0 : 1;
  const auto flow = leaf_conservation(1.0, 64, 1.0, kDefaultSeed);
  return {mism == 0 && flow.max_drift < 1e-8,
          "bracket mismatches=" + std::to_string(mism) + " sphere drift=" + fmt(flow.max_drift) + " (< 1e-8)"};
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

Outcome determinism() {
  const std::string cli = KADS_CLI_PATH;
  const std::vector<std::string> runs{"classify --samples 50", "poisson --samples 20", "poisson --samples 20 --format csv",
                                      "check-bialgebra --lambda -0.5"};
  int differing = 0;
  std::string detail;
  for (const auto& args : runs) {
    int s1 = 0, s2 = 0;
    const auto a = capture(cli + " " + args, s1);
    const auto b = capture(cli + " " + args, s2);
    if (a != b || a.empty() || s1 != s2) {
      ++differing;
      detail += " [" + args + "]";
    }
  }
  return {differing == 0, std::to_string(runs.size()) + " configurations, differing=" + std::to_string(differing) + detail};
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact_bialgebra_reproduction", 1.0, bialgebra_reproduction},
      {2, "mcybe_certificates", 10.0, mcybe_certificates},
      {3, "constraint_surface_equivalence", 0.0, constraint_surface},
      {4, "canonicalization", 0.0, canonicalization},
      {5, "group_geometry", 0.0, group_geometry},
      {6, "sklyanin_verification", 60.0, sklyanin_verification},
      {7, "limits_and_expansions", 0.0, limits_and_expansions},
      {8, "quantum_algebra_certificates", 30.0, quantum_algebras},
      {9, "poisson_3d_construction", 0.0, poisson_construction},
      {10, "determinism", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit == 0.0 || secs < c.limit;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << " " << c.name << ": " << o.summary
              << "; runtime " << fmt(secs) << " s";
    if (c.limit > 0.0) std::cout << " (limit " << c.limit << " s)";
    std::cout << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
