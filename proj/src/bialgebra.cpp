#include "kads/bialgebra.hpp"

namespace kads {

nlohmann::json to_json(const Bivector<Scalar>& r, const std::vector<std::string>& names) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [i, j] : r.support()) out[names[i] + "^" + names[j]] = to_string(r.get(i, j));
  return out;
}

nlohmann::json to_json(const Trivector<Scalar>& t, const std::vector<std::string>& names) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [i, j, k] : t.support()) out[names[i] + "^" + names[j] + "^" + names[k]] = to_string(t.get(i, j, k));
  return out;
}

nlohmann::json to_json(const CocommutatorTable<Scalar>& delta, const std::vector<std::string>& names) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t x = 0; x < delta.size(); ++x) out[names[x]] = to_json(delta[x], names);
  return out;
}

Bivector<double> to_numeric(const Bivector<Scalar>& r, const NumericBindings& values) {
  return r.map([&](const Scalar& s) { return eval_numeric(s, values); });
}

Bivector<Scalar> substitute(const Bivector<Scalar>& r, const Bindings& b) {
  return r.map([&](const Scalar& s) { return substitute(s, b); });
}

Bivector<Scalar> reduce(const Bivector<Scalar>& r, const RewriteSystem& rules) {
  return r.map([&](const Scalar& s) { return rules.reduce(s); });
}

}  // namespace kads
