#pragma once

// Forward-mode dual numbers; nest Dual<Dual<double>> for mixed second derivatives.

#include <cmath>
#include <type_traits>

namespace kads {

template <class T>
struct Dual {
  T v{};  // value
  T d{};  // derivative

  constexpr Dual() = default;
  constexpr Dual(T value, T deriv) : v(value), d(deriv) {}
  template <class A, std::enable_if_t<std::is_arithmetic_v<A>, int> = 0>
  constexpr Dual(A a) : v(static_cast<double>(a)), d(0.0) {}  // NOLINT(google-explicit-constructor)
  template <class U = T, std::enable_if_t<!std::is_arithmetic_v<U>, int> = 0>
  constexpr Dual(const T& value) : v(value), d(0.0) {}  // NOLINT(google-explicit-constructor)

  static Dual variable(T value) { return {value, T(1.0)}; }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
};

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator+(Dual<T> a, double b) { return a += Dual<T>(b); }
template <class T> Dual<T> operator+(double a, Dual<T> b) { return b += Dual<T>(a); }
template <class T> Dual<T> operator-(Dual<T> a, double b) { return a -= Dual<T>(b); }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return Dual<T>(a) - b; }
template <class T> Dual<T> operator*(Dual<T> a, double b) { return {a.v * b, a.d * b}; }
template <class T> Dual<T> operator*(double a, Dual<T> b) { return {b.v * a, b.d * a}; }
template <class T> Dual<T> operator/(Dual<T> a, double b) { return {a.v / b, a.d / b}; }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(a) / b; }

/// Innermost double value.
inline double value(double x) { return x; }
template <class T>
double value(const Dual<T>& x) {
  return value(x.v);
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos, std::sin;
  return {sin(x.v), x.d * cos(x.v)};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos, std::sin;
  return {cos(x.v), -(x.d * sin(x.v))};
}
template <class T>
Dual<T> sinh(const Dual<T>& x) {
  using std::cosh, std::sinh;
  return {sinh(x.v), x.d * cosh(x.v)};
}
template <class T>
Dual<T> cosh(const Dual<T>& x) {
  using std::cosh, std::sinh;
  return {cosh(x.v), x.d * sinh(x.v)};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  const T s = sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
template <class T>
Dual<T> asinh(const Dual<T>& x) {
  using std::asinh, std::sqrt;
  return {asinh(x.v), x.d / sqrt(x.v * x.v + 1.0)};
}
template <class T>
Dual<T> asin(const Dual<T>& x) {
  using std::asin, std::sqrt;
  return {asin(x.v), x.d / sqrt(1.0 - x.v * x.v)};
}
template <class T>
Dual<T> atan(const Dual<T>& x) {
  using std::atan;
  return {atan(x.v), x.d / (x.v * x.v + 1.0)};
}
template <class T>
Dual<T> atanh(const Dual<T>& x) {
  using std::atanh;
  return {atanh(x.v), x.d / (1.0 - x.v * x.v)};
}

}  // namespace kads
