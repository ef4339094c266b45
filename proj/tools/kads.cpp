// Command-line driver: runs the verification suites and exports tables.
//
// Exit codes: 0 all checks pass, 2 a check failed, 3 bad configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
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

namespace {

using nlohmann::json;
using namespace kads;

constexpr int kExitPass = 0;
constexpr int kExitFail = 2;
constexpr int kExitConfig = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A parameter that is either a number or formal (nullopt).
using Value = std::optional<double>;

Value parse_value(const std::string& text, const char* flag) {
  if (text == "formal") return std::nullopt;
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(std::string(flag) + ": expected a number or \"formal\", got \"" + text + "\"");
  return v;
}

struct RunConfig {
  std::string lambda_text = "formal";
  std::string kinv_text;  // empty: formal with a formal --lambda, else 1
  double twist = 0.25;
  std::optional<std::size_t> samples;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-8;
  std::string out;
  std::string format = "json";
  bool inject_fault = false;

  Value lambda;
  Value kinv;

  void resolve() {
    lambda = parse_value(lambda_text, "--lambda");
    if (kinv_text.empty())
      kinv = lambda ? Value(1.0) : std::nullopt;
    else
      kinv = parse_value(kinv_text, "--kappa-inv");
    if (lambda && !kinv) throw ConfigError("--kappa-inv formal needs --lambda formal");
    if (samples && *samples == 0) throw ConfigError("--samples must be at least 1");
    if (!(tol > 0.0)) throw ConfigError("--tol must be positive");
  }

  std::size_t sample_count(std::size_t fallback) const { return samples.value_or(fallback); }
};

json value_json(const Value& v) { return v ? json(*v) : json("formal"); }

struct Check {
  std::string name;
  std::string tag;
  bool pass = false;
  double residual = 0.0;
  json detail = json::object();
  bool counted = true;
};

class Report {
 public:
  Report(std::string command, const RunConfig& cfg) : command_(std::move(command)), cfg_(cfg) {}

  Check& add(Check c) { return checks_.emplace_back(std::move(c)); }
  json& meta() { return meta_; }

  bool pass() const {
    for (const auto& c : checks_)
      if (c.counted && !c.pass) return false;
    return true;
  }

  json to_json() const {
    json cfg{{"lambda", value_json(cfg_.lambda)},
             {"kappa_inv", value_json(cfg_.kinv)},
             {"twist", cfg_.twist},
             {"seed", cfg_.seed},
             {"tolerance", cfg_.tol},
             {"inject_fault", cfg_.inject_fault}};
    if (cfg_.samples) cfg["samples"] = *cfg_.samples;
    json checks = json::array();
    for (const auto& c : checks_) {
      json j{{"name", c.name}, {"tag", c.tag}, {"pass", c.pass}, {"residual", c.residual}};
      if (!c.counted) j["informational"] = true;
      if (!c.detail.empty()) j["detail"] = c.detail;
      checks.push_back(std::move(j));
    }
    json out{{"schema", "report_v1"}, {"command", command_}, {"config", cfg}, {"checks", checks}, {"pass", pass()}};
    if (!meta_.empty()) out["metadata"] = meta_;
    return out;
  }

  std::string to_csv() const {
    std::ostringstream os;
    os << "command,name,tag,pass,residual,informational\n";
    for (const auto& c : checks_)
      os << command_ << ',' << c.name << ',' << c.tag << ',' << (c.pass ? "true" : "false") << ','
         << format_double(c.residual) << ',' << (c.counted ? "false" : "true") << '\n';
    return os.str();
  }

  static std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

 private:
  std::string command_;
  const RunConfig& cfg_;
  std::vector<Check> checks_;
  json meta_ = json::object();
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  f << text;
}

void emit(const Report& r, const RunConfig& cfg) {
  write_text(cfg.out, cfg.format == "csv" ? r.to_csv() : r.to_json().dump(2) + "\n");
}

Check numeric_check(std::string name, std::string tag, double residual, double tol) {
  Check c{std::move(name), std::move(tag)};
  c.residual = residual;
  c.pass = std::isfinite(residual) && residual <= tol;
  return c;
}

/// Exact checks count nonzero components; pass only at zero.
Check exact_check(std::string name, std::string tag, double nonzero) {
  Check c{std::move(name), std::move(tag)};
  c.residual = nonzero;
  c.pass = nonzero == 0.0;
  return c;
}

Check flag_check(std::string name, std::string tag, bool ok) { return exact_check(std::move(name), std::move(tag), ok ? 0 : 1); }

std::vector<std::string> strings(const std::vector<Scalar>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(to_string(s));
  return out;
}

// ---------------------------------------------------------------------------
// check-bialgebra

template <class T>
void corrupt(LieAlgebra<T>& g) {
  auto v = g.bracket_basis(gen::K1, gen::K2);
  v.push_back({gen::P0, T(1)});
  g.set_bracket(gen::K1, gen::K2, v);
}

double mismatches(const CocommutatorTable<Scalar>& a, const CocommutatorTable<Scalar>& b) {
  double n = 0;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (int i = 0; i < a[x].dim(); ++i)
      for (int j = i + 1; j < a[x].dim(); ++j)
        if (!(a[x].get(i, j) == b[x].get(i, j))) n += 1;
  return n;
}

double mismatches(const CocommutatorTable<double>& a, const CocommutatorTable<double>& b) {
  double m = 0;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (int i = 0; i < a[x].dim(); ++i)
      for (int j = i + 1; j < a[x].dim(); ++j) m = std::max(m, std::abs(a[x].get(i, j) - b[x].get(i, j)));
  return m;
}

template <class T>
struct BialgebraCase {
  std::string tag;
  LieAlgebra<T> g;
  Bivector<T> r;
  std::vector<int> coisotropic;
  std::optional<CocommutatorTable<T>> reference;
};

template <class T>
void run_case(Report& rep, const BialgebraCase<T>& c, double tol) {
  constexpr bool exact = std::is_same_v<T, Scalar>;
  auto make = [&](const char* name, double residual) {
    return exact ? exact_check(name, c.tag, residual) : numeric_check(name, c.tag, residual, tol);
  };
  const auto delta = cocommutator(c.g, c.r);
  if (c.reference) rep.add(make("cocommutator_table", mismatches(delta, *c.reference)));
  rep.add(make("mcybe", mcybe_residual(c.g, c.r, exact ? 0.0 : tol)));
  bool co = false;
  std::string why;
  try {
    co = coisotropy_check(c.g, delta, c.coisotropic, exact ? 0.0 : tol);
  } catch (const NotSubalgebra& e) {
    why = e.what();
  }
  auto& ck = rep.add(flag_check("coisotropy", c.tag, co));
  if (!why.empty()) ck.detail["error"] = why;
  rep.add(make("dual_jacobi", dual_jacobi_residual(delta, c.g.names())));
}

std::vector<int> lorentz_2plus1() { return {3, 4, 5}; }  // K1, K2, J3 inside the restricted algebra

int cmd_bialgebra(const RunConfig& cfg) {
  Report rep("check-bialgebra", cfg);
  const std::vector<int> lorentz = lorentz_subalgebra();
  if (!cfg.lambda) {
    const Scalar eta(param::eta);
    Bindings kb;
    if (cfg.kinv) kb[param::kinv] = Scalar(Rational(*cfg.kinv));
    auto sub = [&](Bivector<Scalar> r) { return kb.empty() ? r : substitute(r, kb); };
    auto sub_table = [&](CocommutatorTable<Scalar> t) {
      for (auto& b : t) b = sub(b);
      return t;
    };
    auto flat = ads_algebra(Scalar(0));
    auto curved = ads_algebra(-(eta * eta));
    auto generic = ads_algebra();
    if (cfg.inject_fault) {
      corrupt(flat);
      corrupt(curved);
      corrupt(generic);
    }
    std::vector<BialgebraCase<Scalar>> cases;
    cases.push_back({"kappa_poincare", flat, sub(r_kappa_poincare()), lorentz,
                     sub_table(reference_delta_kappa_poincare())});
    cases.push_back({"twisted_kappa_poincare", flat, sub(r_kappa_poincare_twisted()), lorentz, std::nullopt});
    cases.push_back({"kappa_ads", curved, sub(r_kads()), lorentz, sub_table(reference_delta_kads())});
    cases.push_back({"twisted_kappa_ads", curved, sub(r_kads_twisted()), lorentz, std::nullopt});
    const auto& h = subalgebra_2plus1();
    cases.push_back({"kappa_ads_2plus1", restrict_algebra(generic, h), restrict_bivector(sub(r_2plus1()), h),
                     lorentz_2plus1(), std::nullopt});
    for (const auto& c : cases) run_case(rep, c, cfg.tol);
  } else {
    const double lambda = *cfg.lambda;
    const double kinv = *cfg.kinv;
    auto g = ads_algebra_numeric(lambda);
    if (cfg.inject_fault) corrupt(g);
    NumericBindings vals{{param::kinv, kinv}, {param::vartheta, cfg.twist}, {param::Lambda, lambda}};
    if (lambda <= 0) vals[param::eta] = std::sqrt(-lambda);
    auto num_table = [&](const CocommutatorTable<Scalar>& t) {
      CocommutatorTable<double> out;
      for (const auto& b : t) out.push_back(to_numeric(b, vals));
      return out;
    };

    std::vector<BialgebraCase<double>> cases;
    auto skipped = [&](const char* tag, const char* reason) {
      Check c{"skipped", tag, true};
      c.counted = false;
      c.detail["reason"] = reason;
      rep.add(std::move(c));
    };
    if (lambda == 0.0) {
      cases.push_back({"kappa_poincare", g, to_numeric(r_kappa_poincare(), vals), lorentz,
                       num_table(reference_delta_kappa_poincare())});
      cases.push_back({"twisted_kappa_poincare", g, to_numeric(r_kappa_poincare_twisted(), vals), lorentz,
                       std::nullopt});
    } else {
      skipped("kappa_poincare", "the undeformed-space r-matrix solves the mCYBE only at lambda = 0");
      skipped("twisted_kappa_poincare", "the undeformed-space r-matrix solves the mCYBE only at lambda = 0");
    }
    if (lambda <= 0.0) {
      cases.push_back({"kappa_ads", g, to_numeric(r_kads(), vals), lorentz, num_table(reference_delta_kads())});
      cases.push_back({"twisted_kappa_ads", g, to_numeric(r_kads_twisted(), vals), lorentz, std::nullopt});
    } else {
      skipped("kappa_ads", "eta = sqrt(-lambda) is imaginary, so the r-matrix is not real");
      skipped("twisted_kappa_ads", "eta = sqrt(-lambda) is imaginary, so the r-matrix is not real");
    }
    const auto& h = subalgebra_2plus1();
    cases.push_back({"kappa_ads_2plus1", restrict_algebra(g, h), restrict_bivector(to_numeric(r_2plus1(), vals), h),
                     lorentz_2plus1(), std::nullopt});
    for (const auto& c : cases) run_case(rep, c, cfg.tol);
  }
  emit(rep, cfg);
  return rep.pass() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// classify

json bivector_json(const Bivector<double>& r) {
  json j = json::object();
  const auto& names = kinematical_names();
  for (auto [i, k] : r.support()) j[names[i] + "^" + names[k]] = r.get(i, k);
  return j;
}

int cmd_classify(const RunConfig& cfg) {
  double eta = 1.0;
  if (cfg.lambda) {
    if (*cfg.lambda >= 0.0) throw ConfigError("classify samples the anti-de Sitter family; use --lambda < 0 or formal");
    eta = std::sqrt(-*cfg.lambda);
  }
  const double kinv = cfg.kinv.value_or(1.0);
  const std::size_t n = cfg.sample_count(1000);
  Report rep("classify", cfg);
  rep.meta() = {{"eta", eta}, {"kappa_inv", kinv}, {"samples", n}};

  const auto found = constraint_residuals();
  const auto expected = reference_constraints();
  const auto cmp = compare_by_mutual_reduction(found, expected);
  auto& ideal = rep.add(flag_check("constraint_ideal", "family_constraints", cmp.equal()));
  ideal.detail = {{"extracted", strings(found)},
                  {"reference", strings(expected)},
                  {"extracted_in_reference", cmp.forward},
                  {"reference_in_extracted", cmp.backward}};

  // At η = 0 every constraint vanishes with α = 0, leaving β free.
  const auto flat = constraint_residuals(true);
  Bindings alpha_zero;
  for (Param p : param::alpha) alpha_zero[p] = Scalar(0);
  bool twist_free = true;
  for (const auto& s : flat) twist_free = twist_free && substitute(s, alpha_zero).is_zero();
  rep.add(flag_check("flat_limit_twist_free", "family_constraints_eta0", twist_free)).detail["extracted"] =
      strings(flat);

  const auto reduced =
      impose_primitivity(generic_ansatz(), ads_algebra(), LieElement<Scalar>::basis(gen::P0));
  auto& prim = rep.add(flag_check("primitive_time_translation", "generic_ansatz_reduction",
                                  family_contains(reduced, family_r_formal())));
  prim.detail = {{"free_parameters", reduced.free_params.size()}, {"family", to_json(reduced)}};

  const auto off = sample_off_family(reduced, n, cfg.seed, eta, kinv);
  auto& offc = rep.add(flag_check("off_family_falsification", "generic_ansatz_reduction", off.min_residual > 1e-6));
  offc.residual = off.min_residual;
  offc.detail = {{"count", off.count}, {"min_residual", off.min_residual}, {"min_distance", off.min_distance}};

  const auto sat = sample_satisfying(n, cfg.seed, eta, kinv);
  rep.add(numeric_check("satisfying_samples", "family_constraints", sat.max_residual, 1e-10)).detail = {
      {"count", sat.count}, {"max_residual", sat.max_residual}};
  const auto vio = sample_violating(n, cfg.seed + 1, eta, kinv);
  auto& vc = rep.add(flag_check("violating_samples", "family_constraints", vio.min_residual > 1e-6));
  vc.residual = vio.min_residual;
  vc.detail = {{"count", vio.count}, {"min_residual", vio.min_residual}, {"min_distance", vio.min_distance}};

  const auto canon = canonicalize_symbolic(false);
  const auto canon_tw = canonicalize_symbolic(true);
  const auto align = twisted_alignment_residuals();
  bool align_ok = true;
  for (const auto& s : align) align_ok = align_ok && s.is_zero();
  rep.add(flag_check("canonical_form", "sphere_family_rotated", canon == r_kads())).detail["rotated"] =
      to_json(canon, std::vector<std::string>(kinematical_names().begin(), kinematical_names().end()));
  rep.add(flag_check("canonical_form", "twisted_sphere_family_rotated", canon_tw == r_kads_twisted()))
      .detail["rotated"] =
      to_json(canon_tw, std::vector<std::string>(kinematical_names().begin(), kinematical_names().end()));
  rep.add(flag_check("twisted_alignment", "twisted_sphere_family", align_ok)).detail["residuals"] = strings(align);

  const std::size_t m = cfg.sample_count(100);
  const auto results = map_indices(m, [&](std::size_t i) {
    auto rng = sample_rng(cfg.seed ^ 0xC0FFEEULL, i);
    CanonicalizeInput in;
    in.theta = uniform(rng, 0.0, 1.3);
    in.phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    in.beta3 = i % 2 == 0 ? 0.0 : uniform(rng, -1.0, 1.0);
    in.eta = eta;
    in.kinv = kinv;
    return std::pair{in, canonicalize(in)};
  });
  double worst = 0.0;
  json transcripts = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& [in, res] = results[i];
    worst = std::max(worst, res.deviation);
    if (i < 4)
      transcripts.push_back({{"theta", in.theta},
                             {"phi", in.phi},
                             {"beta3", in.beta3},
                             {"vartheta", res.vartheta},
                             {"input", bivector_json(res.r_input)},
                             {"rotated", bivector_json(res.r_rotated)},
                             {"deviation", res.deviation}});
  }
  auto& cn = rep.add(numeric_check("canonicalize_samples", "sphere_family_rotated", worst, 1e-12));
  cn.detail = {{"count", m}, {"transcripts", transcripts}};

  emit(rep, cfg);
  return rep.pass() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// poisson

std::string lambda_tag(double lambda) {
  std::ostringstream os;
  os << "lambda=" << lambda;
  return os.str();
}

double max_abs_diff(const SquareMat<double>& a, const SquareMat<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

void poisson_at(Report& rep, const RunConfig& cfg, double lambda, std::size_t n) {
  PoissonConfig pc;
  pc.lambda = lambda;
  pc.kinv = *cfg.kinv;
  pc.jj = std::sqrt(std::abs(lambda)) * pc.kinv;
  pc.vartheta = cfg.twist;
  pc.samples = n;
  pc.seed = cfg.seed;
  const std::string lt = lambda_tag(lambda);

  std::vector<TableKind> kinds;
  if (lambda == 0.0)
    kinds = {TableKind::kappa_minkowski, TableKind::twisted_minkowski};
  else
    kinds = {TableKind::local, TableKind::twisted_local, TableKind::ambient};
  for (TableKind k : kinds) {
    const auto v = verify_table(k, pc);
    auto& c = rep.add(numeric_check("sklyanin_vs_closed_form", std::string(table_name(k)) + ":" + lt,
                                    v.max_deviation, cfg.tol));
    c.detail = to_json(v);
    rep.add(numeric_check("lorentz_independence", std::string(table_name(k)) + ":" + lt, v.lorentz_deviation,
                          cfg.tol));
    rep.add(numeric_check("table_jacobi", std::string(table_name(k)) + ":" + lt, table_jacobi_residual(k, pc),
                          cfg.tol));
  }
  if (lambda != 0.0)
    rep.add(numeric_check("ambient_local_consistency", "ambient_vs_local:" + lt, ambient_local_consistency(pc),
                          cfg.tol));
}

int cmd_poisson(const RunConfig& cfg) {
  Report rep("poisson", cfg);
  const std::size_t n = cfg.sample_count(200);
  std::vector<double> lambdas = cfg.lambda ? std::vector<double>{*cfg.lambda} : std::vector<double>{-1.0, 1.0};
  RunConfig numeric = cfg;
  if (!numeric.kinv) numeric.kinv = 1.0;
  for (double l : lambdas) {
    const double bound = 0.5 * std::numbers::pi / std::sqrt(std::max(std::abs(l), 1e-300));
    rep.meta()["charts"].push_back({{"lambda", l},
                                    {"sample_box", 0.8 / std::max(1.0, std::sqrt(std::abs(l)))},
                                    {"chart_bound", l == 0.0 ? json("none") : json(bound)}});
    poisson_at(rep, numeric, l, n);
  }
  rep.meta()["seed"] = cfg.seed;
  rep.meta()["samples"] = n;

  // η → 0 limits and first-order expansion at random points.
  const double kinv = *numeric.kinv;
  double zeroth = 0.0, first = 0.0, twisted_zeroth = 0.0, projection = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = sample_rng(cfg.seed ^ 0xE7AULL, i);
    std::vector<double> x(4);
    for (auto& v : x) v = uniform(rng, -0.8, 0.8);
    const auto e = eta_expansion(TableKind::local, x, kinv, 0.0);
    zeroth = std::max(zeroth, max_abs_diff(e.zeroth, table_eval<double>(TableKind::kappa_minkowski, x,
                                                                         {0.0, kinv, 0.0, 0.0})));
    first = std::max(first, max_abs_diff(e.first, table_eval<double>(TableKind::first_order_local, x,
                                                                       {0.0, 0.0, kinv, 0.0})));
    const auto et = eta_expansion(TableKind::twisted_local, x, kinv, cfg.twist);
    twisted_zeroth = std::max(
        twisted_zeroth,
        max_abs_diff(et.zeroth, table_eval<double>(TableKind::twisted_minkowski, x, {0.0, kinv, 0.0, cfg.twist})));
    const double eta = uniform(rng, 0.1, 1.0);
    const auto b = project_2plus1({x[0], x[1], x[2], 0.0}, {eta * eta, kinv, eta * kinv, 0.0});
    projection = std::max(projection, std::abs(b[1][2]));
  }
  rep.add(numeric_check("eta_zero_limit", "local_to_kappa_minkowski", zeroth, 1e-10));
  rep.add(numeric_check("eta_zero_limit", "twisted_local_to_twisted_kappa_minkowski", twisted_zeroth, 1e-10));
  rep.add(numeric_check("eta_first_order", "local_space_space_sector", first, 0.0));
  rep.add(numeric_check("projection_2plus1", "x3_zero_space_bracket", projection, 0.0));

  for (TableKind k : {TableKind::ambient, TableKind::kappa_minkowski, TableKind::twisted_minkowski,
                      TableKind::first_order_local, TableKind::quadratic_su2}) {
    double nonzero = 0;
    for (const auto& s : symbolic_jacobi(symbolic_table(k))) nonzero += s.is_zero() ? 0 : 1;
    rep.add(exact_check("symbolic_jacobi", std::string(table_name(k)), nonzero));
  }

  // {x_a, x_b} = f ∂F/∂x_c with F the sphere and f = −(η/2κ) x3.
  const Scalar x1(param::x1), x2(param::x2), x3(param::x3);
  const Scalar f = Scalar(Rational(-1, 2)) * Scalar(param::eta) * Scalar(param::kinv) * x3;
  const auto b3 = poisson_3d_symbolic(f, x1 * x1 + x2 * x2 + x3 * x3);
  const auto su2 = symbolic_table(TableKind::quadratic_su2);
  double mism = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mism += b3[i][j] == su2.b[i][j] ? 0 : 1;
  rep.add(exact_check("poisson_3d_construction", "sphere_casimir_quadratic_algebra", mism));

  const auto flow = leaf_conservation(kinv, std::min<std::size_t>(n, 64), 1.0, cfg.seed);
  auto& fc = rep.add(numeric_check("leaf_conservation", "quadratic_su2_sphere", flow.max_drift, cfg.tol));
  fc.detail = {{"curves", flow.curves}, {"time", flow.time}};

  emit(rep, cfg);
  return rep.pass() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// nc

double count_nonzero(const std::vector<CasimirResult>& v) {
  double n = 0;
  for (const auto& r : v) n += r.commutator.is_zero() ? 0 : 1;
  return n;
}

int cmd_nc(const RunConfig& cfg) {
  if (cfg.lambda || cfg.kinv) throw ConfigError("nc works with formal parameters only; use --lambda formal");
  Report rep("nc", cfg);

  struct Entry {
    NCAlgebra a;
    TableKind semiclassical;
  };
  std::vector<Entry> algebras{{kappa_minkowski_algebra(), TableKind::kappa_minkowski},
                              {twisted_kappa_minkowski_algebra(), TableKind::twisted_minkowski},
                              {first_order_kads_algebra(), TableKind::first_order_local},
                              {quantum_sphere_algebra(), TableKind::quadratic_su2},
                              {ambient_algebra(), TableKind::ambient}};
  for (const auto& [a, kind] : algebras) {
    const auto cert = jacobi_certificate(a);
    double bad = 0;
    for (const auto& t : cert) bad += t.zero() ? 0 : 1;
    rep.add(exact_check("jacobi_certificate", a.name(), bad)).detail = to_json(a, cert);
    const auto diff = semiclassical_diff(a, symbolic_table(kind));
    auto& sc = rep.add(exact_check("semiclassical_limit", a.name(), static_cast<double>(diff.size())));
    for (const auto& d : diff) sc.detail["differences"].push_back({{"a", d.a}, {"b", d.b}, {"difference", d.difference}});
  }

  const auto km = kappa_minkowski_algebra();
  const auto first = first_order_kads_algebra();
  const auto amb = ambient_algebra();
  auto limit = [&](const char* tag, const std::vector<LimitDiff>& diff) {
    auto& c = rep.add(exact_check("eta_zero_limit", tag, static_cast<double>(diff.size())));
    for (const auto& d : diff) c.detail["differences"].push_back({{"a", d.a}, {"b", d.b}, {"difference", d.difference}});
  };
  limit("first_order_to_kappa_minkowski", eta_limit_diff(first, km));
  limit("ambient_to_kappa_minkowski",
        eta_limit_diff(amb, km, {{"s0", "x0"}, {"s1", "x1"}, {"s2", "x2"}, {"s3", "x3"}}, {"s4"}));

  const auto q = quantum_sphere_algebra();
  rep.add(exact_check("casimir_central", "quantum_sphere_casimir",
                      count_nonzero(casimir_check(q, quantum_sphere_casimir(q), {0, 1, 2}))));
  const auto s = ambient_space_casimir(amb);
  const auto sigma = ambient_pseudosphere_casimir(amb);
  const std::vector<int> space{amb.index("s1"), amb.index("s2"), amb.index("s3")};
  rep.add(exact_check("casimir_central", "ambient_space_casimir_on_space_sector",
                      count_nonzero(casimir_check(amb, s, space))));
  rep.add(exact_check("casimir_central", "ambient_pseudosphere_casimir",
                      count_nonzero(casimir_check(amb, sigma, {0, 1, 2, 3, 4}))));
  rep.add(flag_check("casimir_central", "pseudosphere_with_space_casimir", commutator(amb, sigma, s).is_zero()));
  const auto d0 = commutator(amb, s, amb.gen("s0")) - normal_form(amb, displayed_space_casimir_s0(amb));
  const auto d4 = commutator(amb, s, amb.gen("s4")) - normal_form(amb, displayed_space_casimir_s4(amb));
  rep.add(flag_check("displayed_bracket", "space_casimir_with_s0", d0.is_zero())).detail["bracket"] =
      to_string(amb, commutator(amb, s, amb.gen("s0")));
  rep.add(flag_check("displayed_bracket", "space_casimir_with_s4", d4.is_zero())).detail["bracket"] =
      to_string(amb, commutator(amb, s, amb.gen("s4")));

  const std::size_t n = cfg.sample_count(200);
  const auto agree = map_indices(n, [&](std::size_t i) {
    auto rng = sample_rng(cfg.seed, i);
    Word w(1 + rng() % 6);
    for (auto& g : w) g = static_cast<int>(rng() % static_cast<std::uint64_t>(amb.size()));
    const auto p = NCPoly::word(w);
    return normal_form(amb, p, Strategy::leftmost) == normal_form(amb, p, Strategy::rightmost) ? 0 : 1;
  });
  double disagree = 0;
  for (int v : agree) disagree += v;
  rep.add(exact_check("strategy_independence", "ambient_random_words", disagree)).detail["words"] = n;

  // The printed orders do not terminate; record the behaviour without counting it.
  for (auto [tag, word] : {std::pair{"ambient_printed_order", std::vector<std::string>{"s1", "s4", "s3"}},
                           std::pair{"first_order_printed_order", std::vector<std::string>{"x3", "x1", "x3"}}}) {
    const auto a = std::string(tag).starts_with("ambient") ? ambient_algebra(MonomialOrder::printed)
                                                           : first_order_kads_algebra(MonomialOrder::printed);
    NCPoly p = NCPoly::constant(Scalar(1));
    std::string w;
    for (const auto& g : word) {
      p = p * a.gen(g);
      w += (w.empty() ? "" : " ") + g;
    }
    Check c{"rewriting_terminates", tag, true};
    c.counted = false;
    c.detail["word"] = w;
    try {
      normal_form(a, p);
      c.detail["result"] = "terminated";
    } catch (const NonTerminating& e) {
      c.pass = false;
      c.detail["result"] = "non_terminating";
    }
    rep.add(std::move(c));
  }

  emit(rep, cfg);
  return rep.pass() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------
// export

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_table(const std::filesystem::path& dir, const std::string& name, const Table& t, const RunConfig& cfg,
                 json& written) {
  const bool csv = cfg.format == "csv";
  const auto path = dir / (name + (csv ? ".csv" : ".json"));
  std::ostringstream os;
  if (csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << Report::format_double(r[i]);
      os << '\n';
    }
  } else {
    os << json{{"schema", "report_v1"}, {"table", name}, {"columns", t.columns}, {"rows", t.rows}}.dump(1) << '\n';
  }
  write_text(path.string(), os.str());
  written.push_back(path.filename().string());
}

std::vector<LocalPoint> grid_points(double lambda, int n) {
  const double box = 0.8 / std::max(1.0, std::sqrt(std::abs(lambda)));
  std::vector<LocalPoint> pts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double u = -box + 2.0 * box * i / (n - 1);
      const double v = -box + 2.0 * box * j / (n - 1);
      pts.push_back({0.3 * box, u, -0.2 * box, v});
    }
  return pts;
}

int cmd_export(const RunConfig& cfg) {
  const double lambda = cfg.lambda.value_or(-1.0);
  const double kinv = cfg.kinv.value_or(1.0);
  const std::filesystem::path dir = cfg.out.empty() ? "kads_export" : cfg.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir.string() + ": " + ec.message());

  const int n = static_cast<int>(std::clamp<std::size_t>(cfg.sample_count(11), 2, 201));
  const auto pts = grid_points(lambda, n);
  const TableParams<double> tp{-lambda, kinv, std::sqrt(std::abs(lambda)) * kinv, cfg.twist};
  json written = json::array();

  std::vector<TableKind> kinds = lambda == 0.0
                                     ? std::vector<TableKind>{TableKind::kappa_minkowski, TableKind::twisted_minkowski}
                                     : std::vector<TableKind>{TableKind::local, TableKind::twisted_local,
                                                              TableKind::ambient, TableKind::first_order_local};
  for (TableKind k : kinds) {
    const auto& names = table_coordinates(k);
    Table t;
    t.columns = {"x0", "x1", "x2", "x3"};
    for (std::size_t a = 0; a < names.size(); ++a)
      for (std::size_t b = a + 1; b < names.size(); ++b) t.columns.push_back("{" + names[a] + "," + names[b] + "}");
    for (const auto& x : pts) {
      std::vector<double> at;
      if (k == TableKind::ambient) {
        const auto s = ambient_from_local(x, lambda);
        at.assign(s.begin(), s.end());
      } else {
        at.assign(x.begin(), x.end());
      }
      const auto b = table_eval(k, at, tp);
      std::vector<double> row(x.begin(), x.end());
      for (std::size_t a = 0; a < names.size(); ++a)
        for (std::size_t c = a + 1; c < names.size(); ++c) row.push_back(b[a][c]);
      t.rows.push_back(std::move(row));
    }
    write_table(dir, "brackets_" + std::string(table_name(k)), t, cfg, written);
  }

  Table coords{{"x0", "x1", "x2", "x3", "s4", "s0", "s1", "s2", "s3", "pseudosphere_residual", "roundtrip_error"}, {}};
  Table metric{{"x0", "x1", "x2", "x3", "g00", "g11", "g22", "g33", "pullback_deviation"}, {}};
  for (const auto& x : pts) {
    const auto s = ambient_from_local(x, lambda);
    const auto back = local_from_ambient(s, lambda);
    double rt = 0.0;
    for (int k = 0; k < 4; ++k) rt = std::max(rt, std::abs(back[k] - x[k]));
    std::vector<double> row(x.begin(), x.end());
    row.insert(row.end(), s.begin(), s.end());
    row.push_back(pseudosphere_residual(s, lambda));
    row.push_back(rt);
    coords.rows.push_back(std::move(row));

    const Mat4 g = metric_at(x, lambda);
    const Mat4 pb = metric_pullback(x, lambda);
    std::vector<double> mrow(x.begin(), x.end());
    for (int k = 0; k < 4; ++k) mrow.push_back(g(k, k));
    mrow.push_back((g - pb).cwiseAbs().maxCoeff());
    metric.rows.push_back(std::move(mrow));
  }
  write_table(dir, "ambient_local_coordinates", coords, cfg, written);
  write_table(dir, "metric_samples", metric, cfg, written);

  if (!cfg.lambda) {
    json sym = json::array();
    for (TableKind k : {TableKind::ambient, TableKind::kappa_minkowski, TableKind::twisted_minkowski,
                        TableKind::first_order_local, TableKind::quadratic_su2})
      sym.push_back(to_json(symbolic_table(k)));
    write_text((dir / "symbolic_tables.json").string(),
               json{{"schema", "report_v1"}, {"tables", sym}}.dump(2) + "\n");
    written.push_back("symbolic_tables.json");
  }

  json summary{{"schema", "report_v1"},
               {"command", "export"},
               {"config", {{"lambda", lambda}, {"kappa_inv", kinv}, {"twist", cfg.twist}, {"grid", n}}},
               {"files", written}};
  std::cout << summary.dump(2) << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for kappa-deformed (A)dS bialgebras, Poisson structures and quantum spaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda", cfg.lambda_text, "Cosmological constant, a number or \"formal\"")
        ->capture_default_str();
    sub->add_option("--kappa-inv", cfg.kinv_text,
                    "Deformation parameter 1/kappa, a number or \"formal\" (default: formal when --lambda is "
                    "formal, else 1)");
    sub->add_option("--twist", cfg.twist, "Numeric twist parameter")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "Sample count (default depends on the subcommand)");
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "Tolerance for numeric residuals")->capture_default_str();
    sub->add_option("--out", cfg.out, "Report path (export: output directory)");
    sub->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  auto* bialg = app.add_subcommand("check-bialgebra", "Cocommutator, mCYBE, coisotropy and dual-Jacobi suites");
  add_common(bialg);
  bialg->add_flag("--inject-fault", cfg.inject_fault, "Corrupt one algebra relation before checking");
  auto* classify = app.add_subcommand("classify", "Constraint ideal, primitivity reduction and canonical forms");
  add_common(classify);
  auto* poisson = app.add_subcommand("poisson", "Sklyanin brackets against the closed-form tables");
  add_common(poisson);
  auto* nc = app.add_subcommand("nc", "Quantum algebra certificates and Casimirs");
  add_common(nc);
  auto* exp = app.add_subcommand("export", "Write bracket, coordinate and metric tables");
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    cfg.resolve();
    if (bialg->parsed()) return cmd_bialgebra(cfg);
    if (classify->parsed()) return cmd_classify(cfg);
    if (poisson->parsed()) return cmd_poisson(cfg);
    if (nc->parsed()) return cmd_nc(cfg);
    if (exp->parsed()) return cmd_export(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitConfig;
}
