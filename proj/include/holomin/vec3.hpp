#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace holomin {

using Complex = std::complex<double>;

// Small fixed 3-vector over double or std::complex<double>. dot() is the
// bilinear pairing (no conjugation), which is the one the complex-orthogonal
// machinery needs; use mag() for Euclidean/Hermitian lengths.
template <typename T>
struct Vec3 {
  T x{}, y{}, z{};

  Vec3() = default;
  Vec3(T x_, T y_, T z_) : x(x_), y(y_), z(z_) {}

  T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
};

using Vec3d = Vec3<double>;
using Vec3c = Vec3<Complex>;

template <typename T, typename S>
inline auto operator*(const S& s, const Vec3<T>& v) -> Vec3<decltype(s * v.x)> {
  return {s * v.x, s * v.y, s * v.z};
}

template <typename T, typename S>
inline auto operator*(const Vec3<T>& v, const S& s) -> Vec3<decltype(v.x * s)> {
  return {v.x * s, v.y * s, v.z * s};
}

template <typename T, typename S>
inline auto operator/(const Vec3<T>& v, const S& s) -> Vec3<decltype(v.x / s)> {
  return {v.x / s, v.y / s, v.z / s};
}

template <typename T>
inline T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Complex dot(const Vec3c& a, const Vec3d& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Complex dot(const Vec3d& a, const Vec3c& b) { return dot(b, a); }

template <typename T>
inline Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Magnitudes used by the tolerance checks; for complex entries the Hermitian
// norm, so mag() is always a nonnegative real.
inline double mag(double v) { return std::abs(v); }
inline double mag(const Complex& v) { return std::abs(v); }
inline double mag(const Vec3d& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }
inline double mag(const Vec3c& v) {
  return std::sqrt(std::norm(v.x) + std::norm(v.y) + std::norm(v.z));
}

inline double norm(const Vec3d& v) { return mag(v); }

inline Vec3d normalized(const Vec3d& v) {
  const double n = mag(v);
  return {v.x / n, v.y / n, v.z / n};
}

inline Vec3d real(const Vec3c& v) { return {v.x.real(), v.y.real(), v.z.real()}; }
inline Vec3d imag(const Vec3c& v) { return {v.x.imag(), v.y.imag(), v.z.imag()}; }

inline Vec3c toComplex(const Vec3d& v) { return {Complex(v.x), Complex(v.y), Complex(v.z)}; }

// 3x3 complex matrix, row-major. mul/apply use the bilinear product.
struct Mat3c {
  std::array<Vec3c, 3> rows{};

  static Mat3c identity() {
    Mat3c m;
    m.rows[0] = {1.0, 0.0, 0.0};
    m.rows[1] = {0.0, 1.0, 0.0};
    m.rows[2] = {0.0, 0.0, 1.0};
    return m;
  }

  Complex& at(int r, int c) { return rows[static_cast<size_t>(r)][c]; }
  const Complex& at(int r, int c) const { return rows[static_cast<size_t>(r)][c]; }

  Vec3c apply(const Vec3c& v) const {
    return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)};
  }

  Mat3c transposed() const {
    Mat3c t;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) t.at(r, c) = at(c, r);
    return t;
  }

  Mat3c operator*(const Mat3c& o) const {
    Mat3c p;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        Complex s = 0.0;
        for (int k = 0; k < 3; ++k) s += at(r, k) * o.at(k, c);
        p.at(r, c) = s;
      }
    return p;
  }
};

inline double maxEntryDeviation(const Mat3c& a, const Mat3c& b) {
  double worst = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(a.at(r, c) - b.at(r, c)));
  return worst;
}

}  // namespace holomin
