#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dirac/potential.hpp"

namespace dirac {

struct IntegratorConfig {
  double samples_per_wavelength = 24.0;
  std::int64_t min_steps = 64;
  std::int64_t max_steps = std::int64_t{1} << 22;
  double richardson_tol = 1e-9;

  // Throws std::invalid_argument on samples_per_wavelength < 8 or min_steps > max_steps.
  void validate() const;
};

// Monodromy M(z; h) = Y(1) of the canonical solution h Y' = A(x; z) Y, Y(0) = I.
struct MonodromyResult {
  Mat2 M;
  Complex delta{0.0};                        // tr M / 2
  std::pair<Complex, Complex> multipliers;   // eigenvalues of M, |first| >= 1
  double det_defect = 0.0;                   // |det M - 1|
  std::int64_t steps_used = 0;
  double est_error = 0.0;                    // relative Richardson estimate for M

  // Floquet exponents log(rho) over the unit period.
  std::pair<Complex, Complex> exponents() const {
    return {std::log(multipliers.first), std::log(multipliers.second)};
  }
};

// exp(B) for a traceless 2x2 matrix, cosh(mu) I + sinh(mu)/mu B with mu^2 = -det B.
Mat2 exp_traceless(const Mat2& B);

// One commutator-free fourth-order Magnus step of h Y' = A Y from x0 to x0 + dx.
Mat2 magnus_step(const PeriodicPotential& pot, double x0, double dx, Complex z, double h);

// Product of n uniform Magnus steps over [0, 1].
Mat2 propagate(const PeriodicPotential& pot, Complex z, double h, std::int64_t n);

// Solution vector at x_j = j / n_samples, j = 0..n_samples, from v0 at x = 0.
std::vector<Vec2> propagate_samples(const PeriodicPotential& pot, Complex z, double h, Vec2 v0,
                                    int n_samples, std::int64_t steps_per_sample);

// Step count from the local oscillation rate (|z| + |Q|) / h, clamped to the config range.
std::int64_t initial_step_count(const PeriodicPotential& pot, Complex z, double h,
                                const IntegratorConfig& cfg);

MonodromyResult integrate_monodromy(const PeriodicPotential& pot, Complex z, double h,
                                    const IntegratorConfig& cfg = {});

Complex discriminant(const PeriodicPotential& pot, Complex z, double h, const IntegratorConfig& cfg = {});

// Roots of rho^2 - 2 delta rho + 1. First has modulus >= 1; ties go to Im >= 0.
std::pair<Complex, Complex> floquet_multipliers(Complex delta);

}  // namespace dirac
