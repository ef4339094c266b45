#include "kads/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace kads {

namespace {

constexpr std::array<std::string_view, param::kNumNamed> kNamedParams = {
    "eta", "kinv", "vartheta", "alpha1", "alpha2", "alpha3", "beta1", "beta2", "beta3",
    "Lambda", "R", "a1", "a2", "a3", "ct", "st", "cp", "sp",
    "x0", "x1", "x2", "x3", "s4", "s0", "s1", "s2", "s3"};

const std::array<std::string, param::kNumAnsatz>& ansatz_names() {
  static const auto names = [] {
    std::array<std::string, param::kNumAnsatz> out;
    int idx = 0;
    for (int i = 0; i < param::kAnsatzDim; ++i)
      for (int j = i + 1; j < param::kAnsatzDim; ++j)
        out[idx++] = "r" + std::to_string(i) + std::to_string(j);
    return out;
  }();
  return names;
}

// Merge two term lists sorted in decreasing monomial order.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    if (i == a.size()) {
      out.push_back({b[j].mono, negate_b ? Rational(-b[j].coef) : b[j].coef});
      ++j;
      continue;
    }
    const auto c = compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].mono, negate_b ? Rational(-b[j].coef) : b[j].coef});
      ++j;
    } else {
      Rational s = negate_b ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
      if (s != 0) out.push_back({a[i].mono, s});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Param param::ansatz(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= kAnsatzDim || i == j) throw Error("ansatz index out of range");
  // row-major index of (i, j) in the strict upper triangle
  const int idx = i * kAnsatzDim - i * (i + 1) / 2 + (j - i - 1);
  return Param{static_cast<std::uint8_t>(kNumNamed + idx)};
}

std::string_view param_name(Param p) {
  if (p.id < param::kNumNamed) return kNamedParams[p.id];
  return ansatz_names().at(p.id - param::kNumNamed);
}

std::optional<Param> param_from_name(std::string_view name) {
  for (int i = 0; i < param::kCount; ++i) {
    Param p{static_cast<std::uint8_t>(i)};
    if (param_name(p) == name) return p;
  }
  return std::nullopt;
}

int param_weight(Param p) {
  using namespace param;
  if (p == eta || p == kinv || p == vartheta || p == Lambda || p == R) return 0;
  return 1;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Param p, unsigned power) {
  Monomial m;
  m.set_exponent(p, power);
  return m;
}

void Monomial::set_exponent(Param p, unsigned e) {
  if (e > 255) throw ExponentOverflow("exponent exceeds 255");
  exp_[p.id] = static_cast<std::uint8_t>(e);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exp_) d += e;
  return d;
}

unsigned Monomial::weighted_degree() const {
  unsigned d = 0;
  for (int i = 0; i < param::kCount; ++i)
    d += exp_[i] * static_cast<unsigned>(param_weight(Param{static_cast<std::uint8_t>(i)}));
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exp_.begin(), exp_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divisible_by(const Monomial& d) const {
  for (int i = 0; i < param::kCount; ++i)
    if (exp_[i] < d.exp_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  for (int i = 0; i < param::kCount; ++i) {
    const unsigned e = exp_[i] + o.exp_[i];
    if (e > 255) throw ExponentOverflow("exponent exceeds 255");
    m.exp_[i] = static_cast<std::uint8_t>(e);
  }
  return m;
}

Monomial Monomial::operator/(const Monomial& d) const {
  Monomial m;
  for (int i = 0; i < param::kCount; ++i) m.exp_[i] = static_cast<std::uint8_t>(exp_[i] - d.exp_[i]);
  return m;
}

std::strong_ordering compare(const Monomial& a, const Monomial& b) {
  if (auto c = a.weighted_degree() <=> b.weighted_degree(); c != 0) return c;
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.exponents() <=> b.exponents();
}

// ------------------------------------------------------------------ Scalar

Scalar::Scalar(long v) {
  if (v != 0) terms_.push_back({Monomial{}, Rational(v)});
}

Scalar::Scalar(const Rational& v) {
  if (v != 0) terms_.push_back({Monomial{}, v});
}

Scalar::Scalar(Param p) { terms_.push_back({Monomial::of(p), Rational(1)}); }

Scalar::Scalar(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.push_back({m, c});
}

Scalar Scalar::rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
  Scalar s;
  for (auto& t : terms) {
    if (!s.terms_.empty() && s.terms_.back().mono == t.mono) {
      s.terms_.back().coef += t.coef;
      if (s.terms_.back().coef == 0) s.terms_.pop_back();
    } else if (t.coef != 0) {
      s.terms_.push_back(std::move(t));
    }
  }
  return s;
}

bool Scalar::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

Rational Scalar::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw UnboundParameter("Scalar is not constant: " + to_string(*this));
  return terms_[0].coef;
}

const Term& Scalar::leading_term() const {
  if (terms_.empty()) throw Error("leading term of zero");
  return terms_.front();
}

unsigned Scalar::degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::set<Param> Scalar::parameters() const {
  std::set<Param> out;
  for (const auto& t : terms_)
    for (int i = 0; i < param::kCount; ++i)
      if (t.mono.exponents()[i] != 0) out.insert(Param{static_cast<std::uint8_t>(i)});
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.terms_.empty() || b.terms_.empty()) return {};
  if (b.terms_.size() == 1 && b.terms_[0].mono.is_one()) {
    Scalar r = a;
    for (auto& t : r.terms_) t.coef *= b.terms_[0].coef;
    return r;
  }
  if (a.terms_.size() == 1 && a.terms_[0].mono.is_one()) return b * a;
  std::vector<Term> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prods.push_back({x.mono * y.mono, x.coef * y.coef});
  return Scalar::from_terms(std::move(prods));
}

Scalar operator-(const Scalar& a) {
  Scalar r = a;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coef != o.terms_[i].coef) return false;
  return true;
}

Scalar pow(const Scalar& base, unsigned e) {
  Scalar result(1L);
  Scalar b = base;
  while (e) {
    if (e & 1u) result *= b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return result;
}

bool is_zero(const Scalar& s) { return s.is_zero(); }

Scalar substitute(const Scalar& p, const Bindings& bindings) {
  if (bindings.empty()) return p;
  for (const auto& [key, value] : bindings) {
    const auto used = value.parameters();
    for (const auto& [other, unused] : bindings) {
      if (used.count(other))
        throw CyclicSubstitution("binding for " + std::string(param_name(key)) + " uses bound parameter " +
                                 std::string(param_name(other)));
    }
  }
  Scalar out;
  for (const auto& t : p.terms()) {
    Monomial rest = t.mono;
    Scalar factor(t.coef);
    for (const auto& [key, value] : bindings) {
      const unsigned e = rest.exponent(key);
      if (e == 0) continue;
      rest.set_exponent(key, 0);
      factor *= pow(value, e);
    }
    out += factor * Scalar(rest, Rational(1));
  }
  return out;
}

double eval_numeric(const Scalar& p, const NumericBindings& values) {
  double sum = 0.0;
  for (const auto& t : p.terms()) {
    double v = t.coef.get_d();
    for (int i = 0; i < param::kCount; ++i) {
      const unsigned e = t.mono.exponents()[i];
      if (e == 0) continue;
      const Param key{static_cast<std::uint8_t>(i)};
      auto it = values.find(key);
      if (it == values.end()) throw UnboundParameter("unbound parameter " + std::string(param_name(key)));
      double pw = 1.0;
      for (unsigned k = 0; k < e; ++k) pw *= it->second;
      v *= pw;
    }
    sum += v;
  }
  return sum;
}

Scalar derivative(const Scalar& p, Param x) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    const unsigned e = t.mono.exponent(x);
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set_exponent(x, e - 1);
    out.push_back({m, t.coef * e});
  }
  return Scalar::from_terms(std::move(out));
}

Scalar monic(const Scalar& p) {
  if (p.is_zero()) return p;
  const Rational lc = p.leading_term().coef;
  return p * Scalar(Rational(1 / lc));
}

Monomial monomial_content(const Scalar& p, std::span<const Param> params) {
  Monomial m;
  if (p.is_zero()) return m;
  for (Param x : params) {
    unsigned e = 255;
    for (const auto& t : p.terms()) e = std::min(e, t.mono.exponent(x));
    m.set_exponent(x, e);
  }
  return m;
}

Scalar divide_monomial(const Scalar& p, const Monomial& m) {
  std::vector<Term> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    if (!t.mono.divisible_by(m)) throw Error("divide_monomial: not divisible");
    out.push_back({t.mono / m, t.coef});
  }
  return Scalar::from_terms(std::move(out));
}

// ------------------------------------------------------------ text format

std::string to_string(const Monomial& m) {
  std::string out;
  for (int i = 0; i < param::kCount; ++i) {
    const unsigned e = m.exponents()[i];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += param_name(Param{static_cast<std::uint8_t>(i)});
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

std::string to_string(const Scalar& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool neg = t.coef < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(t.coef);
    if (t.mono.is_one()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += to_string(t.mono);
    } else {
      out += mag.get_str() + '*' + to_string(t.mono);
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  Scalar expression() {
    skip();
    Scalar acc;
    bool first = true;
    while (pos_ < s_.size()) {
      bool neg = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        neg = s_[pos_] == '-';
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Scalar t = term();
      acc += neg ? -t : t;
      first = false;
      skip();
    }
    if (first) fail("empty expression");
    return acc;
  }

 private:
  Scalar term() {
    Scalar t = factor();
    skip();
    while (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      skip();
      t *= factor();
      skip();
    }
    return t;
  }

  Scalar factor() {
    if (pos_ >= s_.size()) fail("unexpected end");
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::string num = digits();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        num += '/' + digits();
      }
      Rational q(num);
      q.canonicalize();
      return Scalar(q);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected number or parameter");
    const std::string name = s_.substr(start, pos_ - start);
    auto p = param_from_name(name);
    if (!p) fail("unknown parameter '" + name + "'");
    skip();
    unsigned e = 1;
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      e = static_cast<unsigned>(std::stoul(digits()));
    }
    return Scalar(Monomial::of(*p, e), Rational(1));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text) {
  // accept the typographic minus sign U+2212
  std::string normalized;
  normalized.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      normalized += '-';
      i += 2;
    } else {
      normalized += text[i];
    }
  }
  return Parser(std::move(normalized)).expression();
}

// --------------------------------------------------------- RewriteSystem

RewriteSystem::RewriteSystem(std::vector<Rule> rules) : rules_(std::move(rules)) {
  for (const auto& r : rules_) {
    if (r.lhs.is_one()) throw NonTerminating("rule with constant left-hand side");
    for (const auto& t : r.rhs.terms()) {
      if (compare(t.mono, r.lhs) >= 0)
        throw NonTerminating("rule " + to_string(r.lhs) + " -> " + to_string(r.rhs) +
                             " does not decrease the monomial order");
    }
  }
}

RewriteSystem RewriteSystem::from_polynomials(std::span<const Scalar> polys) {
  std::vector<Rule> rules;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    const Scalar m = monic(p);
    const Monomial lm = m.leading_term().mono;
    rules.push_back({lm, Scalar(lm, Rational(1)) - m});
  }
  return RewriteSystem(std::move(rules));
}

Scalar RewriteSystem::reduce(const Scalar& p) const {
  Scalar cur = p;
  // Each step replaces the largest reducible monomial by strictly smaller
  // ones, so the multiset of monomials decreases in a well-order.
  for (;;) {
    bool changed = false;
    for (const auto& t : cur.terms()) {
      const Rule* hit = nullptr;
      for (const auto& r : rules_)
        if (t.mono.divisible_by(r.lhs)) {
          hit = &r;
          break;
        }
      if (!hit) continue;
      const Monomial q = t.mono / hit->lhs;
      const Rational c = t.coef;
      Scalar replacement = hit->rhs * Scalar(q, c);
      cur -= Scalar(t.mono, c);
      cur += replacement;
      changed = true;
      break;
    }
    if (!changed) return cur;
  }
}

Scalar reduce_mod(const Scalar& p, const RewriteSystem& rules) { return rules.reduce(p); }

}  // namespace kads
