#include "kads/ncalg.hpp"

#include <algorithm>
#include <string>

namespace kads {

bool is_normal_ordered(const Word& w) { return std::is_sorted(w.begin(), w.end()); }

NCPoly NCPoly::word(Word w, const Scalar& coef) {
  NCPoly p;
  p.add(w, coef);
  return p;
}

std::size_t NCPoly::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

bool NCPoly::normal_ordered() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return is_normal_ordered(t.first); });
}

void NCPoly::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, ca * cb);
    }
  return out;
}

NCPoly operator*(const Scalar& s, const NCPoly& a) {
  NCPoly out;
  for (const auto& [w, c] : a.terms_) out.add(w, s * c);
  return out;
}

NCPoly substitute(const NCPoly& p, const Bindings& b) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) out.add(w, substitute(c, b));
  return out;
}

NCAlgebra::NCAlgebra(std::string name, std::vector<std::string> generators, std::vector<Param> images)
    : name_(std::move(name)), names_(std::move(generators)), images_(std::move(images)) {
  if (images_.size() != names_.size()) throw Error("NCAlgebra: one commutative image per generator");
  swap_.assign(names_.size(), std::vector<NCPoly>(names_.size()));
  declared_.assign(names_.size(), std::vector<bool>(names_.size(), false));
}

int NCAlgebra::index(std::string_view generator) const {
  for (int g = 0; g < size(); ++g)
    if (names_[g] == generator) return g;
  throw Error("NCAlgebra: unknown generator " + std::string(generator));
}

void NCAlgebra::set_commutator(int a, int b, const NCPoly& rhs) {
  if (a == b) throw Error("NCAlgebra: commutator of a generator with itself");
  if (!rhs.normal_ordered())
    throw NotNormalOrdered("relation [" + names_[a] + "," + names_[b] + "] is not in normal order");
  if (a > b)
    swap_[a][b] = rhs;
  else
    swap_[b][a] = -rhs;
  declared_[std::max(a, b)][std::min(a, b)] = true;
}

void NCAlgebra::set_commutator_normalized(std::string_view a, std::string_view b, const NCPoly& rhs) {
  set_commutator(a, b, reduce(rhs, Strategy::leftmost, 1'000'000, true));
}

NCPoly NCAlgebra::relation(int a, int b) const {
  if (a == b) return {};
  return a > b ? swap_[a][b] : -swap_[b][a];
}

NCAlgebra NCAlgebra::map_coefficients(const Bindings& b, std::string new_name) const {
  NCAlgebra out = *this;
  out.name_ = std::move(new_name);
  for (auto& row : out.swap_)
    for (auto& p : row) p = substitute(p, b);
  return out;
}

NCPoly normal_form(const NCAlgebra& a, const NCPoly& p, Strategy s, std::size_t max_steps) {
  return a.reduce(p, s, max_steps, false);
}

NCPoly NCAlgebra::reduce(const NCPoly& p, Strategy s, std::size_t max_steps, bool declared_only) const {
  const NCAlgebra& a = *this;
  std::map<Word, Scalar> todo(p.terms().begin(), p.terms().end());
  NCPoly out;
  std::size_t steps = 0;
  while (!todo.empty()) {
    auto node = todo.extract(todo.begin());
    const Word& w = node.key();
    const Scalar& c = node.mapped();
    if (c.is_zero()) continue;
    std::ptrdiff_t k = -1;
    const auto len = static_cast<std::ptrdiff_t>(w.size());
    if (s == Strategy::leftmost) {
      for (std::ptrdiff_t i = 0; i + 1 < len; ++i)
        if (w[i] > w[i + 1]) {
          k = i;
          break;
        }
    } else {
      for (std::ptrdiff_t i = len - 2; i >= 0; --i)
        if (w[i] > w[i + 1]) {
          k = i;
          break;
        }
    }
    if (k < 0) {
      out.add(w, c);
      continue;
    }
    if (++steps > max_steps) throw NonTerminating("normal_form: step limit exceeded");
    if (declared_only && !declared_[w[k]][w[k + 1]])
      throw NotNormalOrdered("normal_form: [" + names_[w[k]] + "," + names_[w[k + 1]] + "] not declared yet");
    auto accumulate = [&](Word nw, const Scalar& nc) {
      if (nw.size() > w.size()) throw Error("normal_form: rewrite raised the degree");
      auto [it, inserted] = todo.try_emplace(std::move(nw), nc);
      if (!inserted) {
        it->second += nc;
        if (it->second.is_zero()) todo.erase(it);
      }
    };
    Word swapped = w;
    std::swap(swapped[k], swapped[k + 1]);
    accumulate(std::move(swapped), c);
    for (const auto& [rw, rc] : a.swap_[w[k]][w[k + 1]].terms()) {
      Word nw(w.begin(), w.begin() + k);
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), w.begin() + k + 2, w.end());
      Scalar nc;
      try {
        nc = c * rc;
      } catch (const ExponentOverflow&) {
        throw NonTerminating("normal_form: rewrite cycle in algebra " + a.name());
      }
      accumulate(std::move(nw), nc);
    }
  }
  return out;
}

NCPoly commutator(const NCAlgebra& a, const NCPoly& p, const NCPoly& q) { return normal_form(a, p * q - q * p); }

std::vector<TripleCertificate> jacobi_certificate(const NCAlgebra& a) {
  std::vector<TripleCertificate> out;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j)
      for (int k = j + 1; k < a.size(); ++k) {
        const NCPoly x = NCPoly::generator(i), y = NCPoly::generator(j), z = NCPoly::generator(k);
        TripleCertificate c;
        c.generators = {i, j, k};
        c.jacobi = commutator(a, x, commutator(a, y, z)) + commutator(a, y, commutator(a, z, x)) +
                   commutator(a, z, commutator(a, x, y));
        const NCPoly descending = NCPoly::word({k, j, i});
        c.overlap = normal_form(a, descending, Strategy::leftmost) - normal_form(a, descending, Strategy::rightmost);
        out.push_back(std::move(c));
      }
  return out;
}

bool certified(const std::vector<TripleCertificate>& cert) {
  return std::all_of(cert.begin(), cert.end(), [](const auto& c) { return c.zero(); });
}

std::vector<CasimirResult> casimir_check(const NCAlgebra& a, const NCPoly& c, const std::vector<int>& subset) {
  std::vector<CasimirResult> out;
  for (int g : subset) out.push_back({g, commutator(a, c, NCPoly::generator(g))});
  return out;
}

namespace {

const Scalar& kinv() {
  static const Scalar v(param::kinv);
  return v;
}
Scalar eta_over_kappa() { return Scalar(param::eta) * kinv(); }
Scalar eta2() { return Scalar(param::eta) * Scalar(param::eta); }

struct PrintedRelation {
  std::string a, b;
  NCPoly rhs;
};

/// Declares the relations, each reduced to the algebra's normal order.  A
/// relation whose reduction needs a pair not yet declared is retried after
/// the others.
void declare(NCAlgebra& alg, const std::vector<PrintedRelation>& rels) {
  std::vector<bool> done(rels.size(), false);
  for (std::size_t pass = 0; pass <= rels.size(); ++pass) {
    bool progress = false;
    for (std::size_t r = 0; r < rels.size(); ++r) {
      if (done[r]) continue;
      try {
        alg.set_commutator_normalized(rels[r].a, rels[r].b, rels[r].rhs);
        done[r] = progress = true;
      } catch (const NotNormalOrdered&) {
      }
    }
    if (!progress) break;
  }
  if (std::find(done.begin(), done.end(), false) != done.end())
    throw NotNormalOrdered("relations of " + alg.name() + " cannot be reduced to the normal order");
}

NCAlgebra make_algebra(const std::string& name, const std::vector<std::string>& order) {
  std::vector<Param> images;
  for (const auto& n : order) images.push_back(*param_from_name(n));
  return NCAlgebra(name, order, images);
}

std::vector<PrintedRelation> space_sector(const NCAlgebra& a, const std::string& p) {
  const auto x1 = a.gen(p + "1"), x2 = a.gen(p + "2"), x3 = a.gen(p + "3");
  const Scalar ek = eta_over_kappa();
  return {{p + "1", p + "2", -ek * (x3 * x3)}, {p + "1", p + "3", ek * (x3 * x2)}, {p + "2", p + "3", -ek * (x1 * x3)}};
}

NCAlgebra minkowski(bool twisted) {
  NCAlgebra a = make_algebra(twisted ? "twisted_kappa_minkowski" : "kappa_minkowski", {"x0", "x1", "x2", "x3"});
  const Scalar th = twisted ? Scalar(param::vartheta) : Scalar();
  const auto x1 = a.gen("x1"), x2 = a.gen("x2"), x3 = a.gen("x3");
  declare(a, {{"x0", "x1", -kinv() * x1 - th * x2}, {"x0", "x2", -kinv() * x2 + th * x1}, {"x0", "x3", -kinv() * x3}});
  return a;
}

std::string suffix(MonomialOrder order) { return order == MonomialOrder::printed ? "_printed_order" : ""; }

}  // namespace

NCAlgebra kappa_minkowski_algebra() { return minkowski(false); }
NCAlgebra twisted_kappa_minkowski_algebra() { return minkowski(true); }

NCAlgebra first_order_kads_algebra(MonomialOrder order) {
  NCAlgebra a = make_algebra("first_order_kads" + suffix(order), order == MonomialOrder::printed
                                                                     ? std::vector<std::string>{"x0", "x1", "x3", "x2"}
                                                                     : std::vector<std::string>{"x0", "x1", "x2", "x3"});
  auto rels = space_sector(a, "x");
  for (const char* x : {"x1", "x2", "x3"}) rels.push_back({"x0", x, -kinv() * a.gen(x)});
  declare(a, rels);
  return a;
}

NCAlgebra quantum_sphere_algebra(MonomialOrder order) {
  NCAlgebra a = make_algebra("quantum_sphere" + suffix(order), order == MonomialOrder::printed
                                                                   ? std::vector<std::string>{"x1", "x3", "x2"}
                                                                   : std::vector<std::string>{"x1", "x2", "x3"});
  declare(a, space_sector(a, "x"));
  return a;
}

NCAlgebra ambient_algebra(MonomialOrder order) {
  NCAlgebra a = make_algebra("ambient" + suffix(order), order == MonomialOrder::printed
                                                            ? std::vector<std::string>{"s0", "s1", "s3", "s2", "s4"}
                                                            : std::vector<std::string>{"s4", "s0", "s1", "s2", "s3"});
  const auto s0 = a.gen("s0"), s4 = a.gen("s4");
  auto rels = space_sector(a, "s");
  for (const char* s : {"s1", "s2", "s3"}) {
    const auto sa = a.gen(s);
    rels.push_back({"s0", s, -kinv() * (sa * s4)});
    rels.push_back({"s4", s, eta2() * kinv() * (s0 * sa)});
  }
  rels.push_back({"s0", "s4", -eta2() * kinv() * ambient_space_casimir(a)});
  declare(a, rels);
  return a;
}

namespace {

NCPoly sphere_casimir(const NCAlgebra& a, const std::string& p) {
  const auto x1 = a.gen(p + "1"), x2 = a.gen(p + "2"), x3 = a.gen(p + "3");
  return x1 * x1 + x2 * x2 + x3 * x3 + eta_over_kappa() * (x1 * x2);
}

}  // namespace

NCPoly quantum_sphere_casimir(const NCAlgebra& a) { return sphere_casimir(a, "x"); }
NCPoly ambient_space_casimir(const NCAlgebra& a) { return sphere_casimir(a, "s"); }

NCPoly ambient_pseudosphere_casimir(const NCAlgebra& a) {
  const auto s0 = a.gen("s0"), s4 = a.gen("s4");
  return s4 * s4 + eta2() * (s0 * s0) - eta2() * kinv() * (s0 * s4) - eta2() * ambient_space_casimir(a);
}

NCPoly displayed_space_casimir_s0(const NCAlgebra& a) {
  const auto s0 = a.gen("s0"), s4 = a.gen("s4"), c = ambient_space_casimir(a);
  return kinv() * (s4 * c + c * s4) - eta2() * kinv() * kinv() * (s0 * c);
}

NCPoly displayed_space_casimir_s4(const NCAlgebra& a) {
  const auto s0 = a.gen("s0"), s4 = a.gen("s4"), c = ambient_space_casimir(a);
  return -eta2() * kinv() * (s0 * c + c * s0) + eta2() * kinv() * kinv() * (c * s4);
}

namespace {

/// Maps a polynomial of one algebra into another by generator name,
/// dropping the listed unit generators from every word.
NCPoly transport(const NCAlgebra& from, const NCAlgebra& to, const NCPoly& p,
                 const std::map<std::string, std::string>& rename, const std::vector<std::string>& units) {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    Word nw;
    for (int g : w) {
      const std::string& n = from.generator_name(g);
      if (std::find(units.begin(), units.end(), n) != units.end()) continue;
      auto it = rename.find(n);
      nw.push_back(to.index(it == rename.end() ? n : it->second));
    }
    out.add(nw, c);
  }
  return normal_form(to, out);
}

}  // namespace

std::vector<LimitDiff> eta_limit_diff(const NCAlgebra& algebra, const NCAlgebra& target,
                                      const std::map<std::string, std::string>& rename,
                                      const std::vector<std::string>& unit_generators) {
  const NCAlgebra limit = algebra.map_coefficients({{param::eta, Scalar()}}, algebra.name() + "_eta0");
  auto target_name = [&](int g) {
    const auto& n = limit.generator_name(g);
    auto it = rename.find(n);
    return it == rename.end() ? n : it->second;
  };
  auto is_unit = [&](int g) {
    return std::find(unit_generators.begin(), unit_generators.end(), limit.generator_name(g)) !=
           unit_generators.end();
  };
  std::vector<LimitDiff> out;
  for (int i = 0; i < limit.size(); ++i)
    for (int j = i + 1; j < limit.size(); ++j) {
      if (is_unit(i) || is_unit(j)) {
        // a unit generator must become central in the limit
        const NCPoly rel = limit.relation(i, j);
        if (!rel.is_zero())
          out.push_back({limit.generator_name(i), limit.generator_name(j), to_string(limit, rel)});
        continue;
      }
      const NCPoly got = transport(limit, target, limit.relation(i, j), rename, unit_generators);
      const NCPoly want = target.relation(target.index(target_name(i)), target.index(target_name(j)));
      const NCPoly diff = got - want;
      if (!diff.is_zero()) out.push_back({limit.generator_name(i), limit.generator_name(j), to_string(target, diff)});
    }
  return out;
}

Scalar deformation_degree_one(const Scalar& p) {
  std::vector<Term> keep;
  for (const auto& t : p.terms())
    if (t.mono.exponent(param::kinv) + t.mono.exponent(param::vartheta) == 1) keep.push_back(t);
  return Scalar::from_terms(std::move(keep));
}

Scalar commutative_image(const NCAlgebra& a, const NCPoly& p) {
  Scalar out;
  for (const auto& [w, c] : p.terms()) {
    Scalar m = c;
    for (int g : w) m *= Scalar(a.image(g));
    out += m;
  }
  return out;
}

std::vector<LimitDiff> semiclassical_diff(const NCAlgebra& a, const SymbolicTable& table) {
  auto table_index = [&](Param p) {
    for (std::size_t k = 0; k < table.coords.size(); ++k)
      if (table.coords[k] == p) return static_cast<int>(k);
    throw Error("semiclassical_diff: generator has no coordinate in the table");
  };
  std::vector<LimitDiff> out;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j) {
      const Scalar quantum = deformation_degree_one(commutative_image(a, a.relation(i, j)));
      const Scalar classical = table.b[table_index(a.image(i))][table_index(a.image(j))];
      const Scalar diff = quantum - classical;
      if (!diff.is_zero()) out.push_back({a.generator_name(i), a.generator_name(j), to_string(diff)});
    }
  return out;
}

std::string to_string(const NCAlgebra& a, const NCPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    std::string word;
    for (std::size_t k = 0; k < w.size();) {
      std::size_t run = k;
      while (run < w.size() && w[run] == w[k]) ++run;
      if (!word.empty()) word += ' ';
      word += a.generator_name(w[k]) + "^" + std::to_string(run - k);
      k = run;
    }
    out += (word.empty() ? "1" : word) + " * (" + to_string(c) + ")";
  }
  return out;
}

nlohmann::json to_json(const NCAlgebra& a, const std::vector<TripleCertificate>& cert) {
  nlohmann::json triples = nlohmann::json::array();
  for (const auto& c : cert) {
    const std::string name = a.generator_name(c.generators[0]) + "," + a.generator_name(c.generators[1]) + "," +
                             a.generator_name(c.generators[2]);
    triples.push_back({{"triple", name},
                       {"jacobi", to_string(a, c.jacobi)},
                       {"overlap", to_string(a, c.overlap)},
                       {"zero", c.zero()}});
  }
  nlohmann::json gens = nlohmann::json::array();
  for (int g = 0; g < a.size(); ++g) gens.push_back(a.generator_name(g));
  return {{"algebra", a.name()}, {"normal_order", gens}, {"triples", triples}, {"certified", certified(cert)}};
}

}  // namespace kads
