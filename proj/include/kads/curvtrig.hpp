#pragma once

// Curvature-dependent trigonometric primitives, real-analytic in η² = −Λ.
//   Ch(x) = cosh(ηx)   Sh(x) = sinh(ηx)/η   Ct(x) = cos(ηx)   St(x) = sin(ηx)/η
// For η² < 0 (Λ > 0) the hyperbolic and circular forms swap; no complex
// arithmetic is ever formed.

#include <cmath>

#include "kads/dual.hpp"

namespace kads {

template <class T>
class CurvTrig {
 public:
  /// Below this |η²x²| the 4-term Taylor series is used.
  static constexpr double kSeriesThreshold = 1e-8;

  explicit CurvTrig(const T& eta2) : eta2_(eta2) {
    using std::sqrt;
    const double e2 = value(eta2);
    sign_ = e2 > 0 ? 1 : (e2 < 0 ? -1 : 0);
    if (sign_ > 0) root_ = sqrt(eta2);
    if (sign_ < 0) root_ = sqrt(-eta2);
  }

  const T& eta2() const { return eta2_; }

  T Ch(const T& x) const {
    using std::cos, std::cosh;
    if (series(x)) {
      const T u = eta2_ * x * x;
      return 1.0 + u * (1.0 / 2 + u * (1.0 / 24 + u * (1.0 / 720)));
    }
    return sign_ > 0 ? cosh(root_ * x) : cos(root_ * x);
  }
  T Sh(const T& x) const {
    using std::sin, std::sinh;
    if (series(x)) {
      const T u = eta2_ * x * x;
      return x * (1.0 + u * (1.0 / 6 + u * (1.0 / 120 + u * (1.0 / 5040))));
    }
    return sign_ > 0 ? sinh(root_ * x) / root_ : sin(root_ * x) / root_;
  }
  T Ct(const T& x) const {
    using std::cos, std::cosh;
    if (series(x)) {
      const T u = eta2_ * x * x;
      return 1.0 + u * (-1.0 / 2 + u * (1.0 / 24 + u * (-1.0 / 720)));
    }
    return sign_ > 0 ? cos(root_ * x) : cosh(root_ * x);
  }
  T St(const T& x) const {
    using std::sin, std::sinh;
    if (series(x)) {
      const T u = eta2_ * x * x;
      return x * (1.0 + u * (-1.0 / 6 + u * (1.0 / 120 + u * (-1.0 / 5040))));
    }
    return sign_ > 0 ? sin(root_ * x) / root_ : sinh(root_ * x) / root_;
  }
  /// Inverse of Sh.
  T Sh_inv(const T& y) const {
    using std::asin, std::asinh;
    if (series(y)) {
      const T z2 = eta2_ * y * y;
      return y * (1.0 + z2 * (-1.0 / 6 + z2 * (3.0 / 40 + z2 * (-15.0 / 336))));
    }
    return sign_ > 0 ? asinh(root_ * y) / root_ : asin(root_ * y) / root_;
  }
  /// Inverse of St/Ct.
  T Tt_inv(const T& y) const {
    using std::atan, std::atanh;
    if (series(y)) {
      const T z2 = eta2_ * y * y;
      return y * (1.0 + z2 * (-1.0 / 3 + z2 * (1.0 / 5 + z2 * (-1.0 / 7))));
    }
    return sign_ > 0 ? atan(root_ * y) / root_ : atanh(root_ * y) / root_;
  }

 private:
  bool series(const T& x) const {
    const double v = value(x);
    return sign_ == 0 || std::abs(value(eta2_) * v * v) < kSeriesThreshold;
  }

  T eta2_;
  T root_{};
  int sign_ = 0;
};

}  // namespace kads
