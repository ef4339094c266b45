#include "kads/liealg.hpp"

namespace kads {

const std::array<std::string, gen::kDim>& kinematical_names() {
  static const std::array<std::string, gen::kDim> names{"P0", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"};
  return names;
}

namespace {

std::vector<std::string> name_vector() {
  const auto& n = kinematical_names();
  return {n.begin(), n.end()};
}

// Cyclic triples (a, b, c) with epsilon_abc = +1.
constexpr std::array<std::array<int, 3>, 3> kCyclic{{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};

template <class T>
LieAlgebra<T> build_ads(const T& lambda) {
  using namespace gen;
  LieAlgebra<T> g(name_vector());
  for (const auto& [a, b, c] : kCyclic) {
    // [J_a, J_b] = J_c, [K_a, K_b] = -J_c, [P_a, P_b] = Lambda J_c
    g.set_bracket(J(a), J(b), {{J(c), T(1)}});
    g.set_bracket(K(a), K(b), {{J(c), T(-1)}});
    g.set_bracket(P(a), P(b), {{J(c), lambda}});
    // [J_a, P_b] = P_c, [J_b, P_a] = -P_c, same for K
    g.set_bracket(J(a), P(b), {{P(c), T(1)}});
    g.set_bracket(J(b), P(a), {{P(c), T(-1)}});
    g.set_bracket(J(a), K(b), {{K(c), T(1)}});
    g.set_bracket(J(b), K(a), {{K(c), T(-1)}});
  }
  for (int a = 1; a <= 3; ++a) {
    g.set_bracket(K(a), P0, {{P(a), T(1)}});
    g.set_bracket(K(a), P(a), {{P0, T(1)}});
    g.set_bracket(P0, P(a), {{K(a), -lambda}});
  }
  return g;
}

}  // namespace

LieAlgebra<Scalar> ads_algebra(const Scalar& lambda) { return build_ads<Scalar>(lambda); }

LieAlgebra<double> ads_algebra_numeric(double lambda) { return build_ads<double>(lambda); }

LieAlgebra<Scalar> poincare_algebra() {
  using namespace gen;
  LieAlgebra<Scalar> g(name_vector());
  // rotations
  g.set_bracket(J1, J2, {{J3, 1}});
  g.set_bracket(J2, J3, {{J1, 1}});
  g.set_bracket(J3, J1, {{J2, 1}});
  g.set_bracket(J1, P2, {{P3, 1}});
  g.set_bracket(J2, P3, {{P1, 1}});
  g.set_bracket(J3, P1, {{P2, 1}});
  g.set_bracket(J2, P1, {{P3, -1}});
  g.set_bracket(J3, P2, {{P1, -1}});
  g.set_bracket(J1, P3, {{P2, -1}});
  g.set_bracket(J1, K2, {{K3, 1}});
  g.set_bracket(J2, K3, {{K1, 1}});
  g.set_bracket(J3, K1, {{K2, 1}});
  g.set_bracket(J2, K1, {{K3, -1}});
  g.set_bracket(J3, K2, {{K1, -1}});
  g.set_bracket(J1, K3, {{K2, -1}});
  // boosts
  g.set_bracket(K1, K2, {{J3, -1}});
  g.set_bracket(K2, K3, {{J1, -1}});
  g.set_bracket(K3, K1, {{J2, -1}});
  g.set_bracket(K1, P0, {{P1, 1}});
  g.set_bracket(K2, P0, {{P2, 1}});
  g.set_bracket(K3, P0, {{P3, 1}});
  g.set_bracket(K1, P1, {{P0, 1}});
  g.set_bracket(K2, P2, {{P0, 1}});
  g.set_bracket(K3, P3, {{P0, 1}});
  return g;
}

LieAlgebra<Scalar> substitute(const LieAlgebra<Scalar>& g, const Bindings& b) {
  return g.map_coefficients([&](const Scalar& s) { return substitute(s, b); });
}

LieAlgebra<double> to_numeric(const LieAlgebra<Scalar>& g, const NumericBindings& values) {
  return g.map_coefficients([&](const Scalar& s) { return eval_numeric(s, values); });
}

nlohmann::json to_json(const LieAlgebra<Scalar>& g) {
  nlohmann::json out = nlohmann::json::object();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) {
      const auto& v = g.bracket_basis(i, j);
      if (v.empty()) continue;
      nlohmann::json entry = nlohmann::json::object();
      for (const auto& t : v) entry[g.names()[t.index]] = to_string(t.coef);
      out["[" + g.names()[i] + "," + g.names()[j] + "]"] = entry;
    }
  return out;
}

}  // namespace kads
