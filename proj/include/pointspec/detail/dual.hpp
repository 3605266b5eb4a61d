#pragma once

#include <cmath>
#include <complex>

namespace pointspec::detail {

using Complex = std::complex<double>;

/// Forward-mode dual over the complex field: carries d/dk alongside the
/// value, so every closed-form evaluation yields its exact k-derivative.
struct Dual {
  Complex v{};
  Complex d{};

  Dual() = default;
  Dual(Complex value) : v(value) {}  // NOLINT: implicit lift, derivative 0
  Dual(double value) : v(value) {}   // NOLINT
  Dual(Complex value, Complex deriv) : v(value), d(deriv) {}

  static Dual seed(Complex k) { return Dual(k, Complex(1.0, 0.0)); }
};

inline Dual operator+(const Dual& x, const Dual& y) { return {x.v + y.v, x.d + y.d}; }
inline Dual operator-(const Dual& x, const Dual& y) { return {x.v - y.v, x.d - y.d}; }
inline Dual operator-(const Dual& x) { return {-x.v, -x.d}; }
inline Dual operator*(const Dual& x, const Dual& y) {
  return {x.v * y.v, x.d * y.v + x.v * y.d};
}
inline Dual operator/(const Dual& x, const Dual& y) {
  const Complex q = x.v / y.v;
  return {q, (x.d - q * y.d) / y.v};
}

inline Dual exp(const Dual& x) {
  const Complex e = std::exp(x.v);
  return {e, x.d * e};
}

inline double magnitude(const Dual& x) { return std::abs(x.v); }
inline double magnitude(const Complex& x) { return std::abs(x); }
inline Complex value_of(const Dual& x) { return x.v; }
inline Complex value_of(const Complex& x) { return x; }
inline bool exactly_zero(const Dual& x) {
  return x.v == Complex(0, 0) && x.d == Complex(0, 0);
}
inline bool exactly_zero(const Complex& x) { return x == Complex(0, 0); }

using std::exp;  // so templated code resolves exp() for Complex too

}  // namespace pointspec::detail
