#pragma once

#include <array>
#include <complex>
#include <functional>
#include <random>

#include "dirac/potential.hpp"

// Reference computations kept independent of the library's integrator and closed forms.
namespace ref {

using C = std::complex<double>;
using M2 = std::array<C, 4>;  // row-major a, b, c, d

inline M2 mul(const M2& x, const M2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

// exp(A / h) for constant A = [[-iz, q], [p, iz]]: A^2 = (pq - z^2) I.
inline M2 constant_monodromy(C p, C q, C z, double h) {
  const C lam = std::sqrt(z * z - p * q);
  const C c = std::cos(lam / h);
  const C s = std::abs(lam) < 1e-12 ? C(1.0 / h) : std::sin(lam / h) / lam;
  const C i(0.0, 1.0);
  return {c + s * (-i * z), s * q, s * p, c + s * (i * z)};
}

// Classical RK4 for h Y' = A(x) Y over [0, 1] with n steps.
inline M2 rk4_monodromy(const std::function<std::pair<C, C>(double)>& pq, C z, double h, int n) {
  const C i(0.0, 1.0);
  auto A = [&](double x) {
    const auto [p, q] = pq(x);
    return M2{-i * z / h, q / h, p / h, i * z / h};
  };
  auto axpy = [](const M2& y, double a, const M2& k) {
    return M2{y[0] + a * k[0], y[1] + a * k[1], y[2] + a * k[2], y[3] + a * k[3]};
  };
  M2 Y{1.0, 0.0, 0.0, 1.0};
  const double dx = 1.0 / n;
  for (int s = 0; s < n; ++s) {
    const double x = s * dx;
    const M2 k1 = mul(A(x), Y);
    const M2 k2 = mul(A(x + dx / 2), axpy(Y, dx / 2, k1));
    const M2 k3 = mul(A(x + dx / 2), axpy(Y, dx / 2, k2));
    const M2 k4 = mul(A(x + dx), axpy(Y, dx, k3));
    for (int e = 0; e < 4; ++e) Y[e] += dx / 6.0 * (k1[e] + 2.0 * k2[e] + 2.0 * k3[e] + k4[e]);
  }
  return Y;
}

inline double frob(const M2& m) {
  double s = 0.0;
  for (C v : m) s += std::norm(v);
  return std::sqrt(s);
}

template <class Mat>
double rel_diff(const Mat& lib, const M2& r) {
  const M2 l{lib.a, lib.b, lib.c, lib.d};
  M2 d;
  for (int e = 0; e < 4; ++e) d[e] = l[e] - r[e];
  return frob(d) / std::max(1e-300, frob(r));
}

inline std::pair<C, C> cos_pq(double x) {
  const double c = std::cos(2.0 * M_PI * x);
  return {c, c};
}

// A random trigonometric polynomial pair with modes in [-2, 2] and coefficient l1 norm <= amp.
inline dirac::PeriodicPotential random_trig(std::mt19937_64& rng, double amp) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto modes = [&] {
    std::vector<dirac::FourierMode> m;
    double l1 = 0.0;
    for (int k = -2; k <= 2; ++k) {
      m.push_back({k, {u(rng), u(rng)}});
      l1 += std::abs(m.back().c);
    }
    for (auto& mode : m) mode.c *= amp / l1;
    return m;
  };
  auto p = modes();
  auto q = modes();
  return dirac::PeriodicPotential::fourier(p, q);
}

}  // namespace ref
