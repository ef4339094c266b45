#pragma once

#include <random>
#include <vector>

#include "kads/parallel.hpp"
#include "kads/scalar.hpp"

namespace testing {

/// Random polynomial over `params` with small integer coefficients.
inline kads::Scalar random_scalar(std::mt19937_64& rng, const std::vector<kads::Param>& params, int terms = 4,
                                  unsigned max_exp = 2) {
  kads::Scalar out;
  for (int t = 0; t < terms; ++t) {
    kads::Monomial m;
    for (auto p : params) m.set_exponent(p, static_cast<unsigned>(rng() % (max_exp + 1)));
    const long num = static_cast<long>(rng() % 11) - 5;
    const long den = 1 + static_cast<long>(rng() % 3);
    kads::Rational c(num, den);
    c.canonicalize();
    out += kads::Scalar(m, c);
  }
  return out;
}

}  // namespace testing
