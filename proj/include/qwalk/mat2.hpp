#pragma once

// Fixed-size complex 2x2 algebra. Every operator value of the walk (coin,
// its row split, path products, path sums, U(xi)^n) lives here.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <ostream>

namespace qwalk {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-12;

/// Column 2-vector (L, R) of chirality amplitudes.
struct Vec2 {
  Complex l{};
  Complex r{};

  friend constexpr Vec2 operator+(const Vec2& x, const Vec2& y) { return {x.l + y.l, x.r + y.r}; }
  friend constexpr Vec2 operator-(const Vec2& x, const Vec2& y) { return {x.l - y.l, x.r - y.r}; }
  friend constexpr Vec2 operator*(Complex z, const Vec2& x) { return {z * x.l, z * x.r}; }
  Vec2& operator+=(const Vec2& o) {
    l += o.l;
    r += o.r;
    return *this;
  }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double norm_sq(const Vec2& v) { return std::norm(v.l) + std::norm(v.r); }

/// <x, y> with the first argument conjugated.
inline Complex inner(const Vec2& x, const Vec2& y) {
  return std::conj(x.l) * y.l + std::conj(x.r) * y.r;
}

/// Row-major [[a, b], [c, d]].
struct Mat2 {
  Complex a{}, b{}, c{}, d{};

  static constexpr Mat2 zero() { return {}; }
  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  friend constexpr Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend constexpr Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend constexpr Mat2 operator*(Complex z, const Mat2& x) {
    return {z * x.a, z * x.b, z * x.c, z * x.d};
  }
  friend constexpr Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a * v.l + m.b * v.r, m.c * v.l + m.d * v.r};
  }
  Mat2& operator+=(const Mat2& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    d += o.d;
    return *this;
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  std::array<Complex, 4> entries() const { return {a, b, c, d}; }
};

inline Mat2 mul(const Mat2& x, const Mat2& y) { return x * y; }
inline Mat2 add(const Mat2& x, const Mat2& y) { return x + y; }
inline Mat2 scale(Complex z, const Mat2& x) { return z * x; }
inline Vec2 apply(const Mat2& m, const Vec2& v) { return m * v; }

inline Mat2 adjoint(const Mat2& m) {
  return {std::conj(m.a), std::conj(m.c), std::conj(m.b), std::conj(m.d)};
}

inline double max_abs(const Mat2& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

/// Max entrywise |x - y|; the residual metric used throughout.
inline double max_abs_diff(const Mat2& x, const Mat2& y) { return max_abs(x - y); }

inline double frobenius_sq(const Mat2& m) {
  return std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
}

inline bool is_finite(const Mat2& m) {
  for (const auto& z : m.entries())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

/// Repeated squaring, O(log n) multiplies.
inline Mat2 power(Mat2 base, unsigned long long n) {
  Mat2 result = Mat2::identity();
  while (n > 0) {
    if (n & 1ULL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
}

inline std::ostream& operator<<(std::ostream& os, const Vec2& v) {
  return os << "(" << v.l << ", " << v.r << ")";
}

}  // namespace qwalk
