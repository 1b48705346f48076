#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace dirac {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

// Dense 2x2 complex matrix [[a, b], [c, d]].
struct Mat2 {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static constexpr Mat2 identity() { return {}; }
  static constexpr Mat2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  static constexpr Mat2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
  static Mat2 diag(Complex x, Complex y) { return {x, 0.0, 0.0, y}; }

  Complex trace() const { return a + d; }
  Complex det() const { return a * d - b * c; }

  double frobenius() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
  }

  // Inverse via the adjugate; caller guarantees det != 0.
  Mat2 inverse() const {
    const Complex dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }

  Mat2 conj() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }

  bool finite() const {
    auto ok = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    return ok(a) && ok(b) && ok(c) && ok(d);
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend Mat2 operator*(Complex s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
};

struct Vec2 {
  Complex first{0.0}, second{0.0};

  double norm() const { return std::sqrt(std::norm(first) + std::norm(second)); }
  friend Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a * v.first + m.b * v.second, m.c * v.first + m.d * v.second};
  }
  friend Vec2 operator-(const Vec2& x, const Vec2& y) {
    return {x.first - y.first, x.second - y.second};
  }
  friend Vec2 operator*(Complex s, const Vec2& v) { return {s * v.first, s * v.second}; }
};

// Relative Frobenius distance ||x - y|| / ||ref||.
inline double rel_frobenius(const Mat2& x, const Mat2& y, const Mat2& ref) {
  return (x - y).frobenius() / ref.frobenius();
}

// Axis-aligned rectangle in the spectral plane.
struct Window {
  double re_min = -1.0, re_max = 1.0, im_min = -1.0, im_max = 1.0;

  bool degenerate() const {
    return !(re_max > re_min) || !(im_max > im_min) || !std::isfinite(re_min) ||
           !std::isfinite(re_max) || !std::isfinite(im_min) || !std::isfinite(im_max);
  }
  bool contains(Complex z) const {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  }
};

struct Interval {
  double lo = 0.0, hi = 0.0;
  double length() const { return hi - lo; }
};

// Base of every error this library throws deliberately.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyRepresentation : public Error {
 public:
  using Error::Error;
};

class StepBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NonFinite : public Error {
 public:
  NonFinite(const std::string& what, Complex z) : Error(what), z_(z) {}
  Complex z() const { return z_; }

 private:
  Complex z_;
};

class WindowDegenerate : public Error {
 public:
  using Error::Error;
};

class NotOnSpectrum : public Error {
 public:
  using Error::Error;
};

class DefectiveMonodromy : public Error {
 public:
  using Error::Error;
};

class DegenerateFrame : public Error {
 public:
  using Error::Error;
};

class MismatchedH : public Error {
 public:
  using Error::Error;
};

class EmptyArcs : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dirac
