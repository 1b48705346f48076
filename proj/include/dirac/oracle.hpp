#pragma once

#include "dirac/potential.hpp"

namespace dirac {

// Closed-form reference for constant potentials p(x) = p0, q(x) = q0.
struct ConstantModel {
  Complex p0{0.0}, q0{0.0};
  Complex omega_sq{0.0};  // p0 * q0
  double h = 1.0;

  ConstantModel() = default;
  ConstantModel(Complex p, Complex q, double hh) : p0(p), q0(q), omega_sq(p * q), h(hh) {}

  PeriodicPotential potential() const { return PeriodicPotential::constant(p0, q0); }
};

// lambda(z) = (z^2 - omega^2)^(1/2), principal branch.
Complex const_lambda(const ConstantModel& model, Complex z);

// cos(lambda / h); even in lambda so branch-free.
Complex const_discriminant(const ConstantModel& model, Complex z);

// Eigenvector matrix P(z) = [[1, -i(z+lambda)/p0], [i(z+lambda)/q0, 1]].
// Throws DegenerateFrame when p0 or q0 vanishes, or when z + lambda cannot be formed.
Mat2 const_eigenvectors(const ConstantModel& model, Complex z);

// F(x) = P(z) exp(i lambda x sigma3 / h).
Mat2 const_fundamental(const ConstantModel& model, Complex z, double x);

// Monodromy in the eigenvector frame, diag(exp(i lambda / h), exp(-i lambda / h)).
Mat2 const_monodromy(const ConstantModel& model, Complex z);

// Monodromy of the canonical solution Y(0) = I: P diag(...) P^-1, or the triangular closed
// form when p0 = 0 or q0 = 0. Throws DegenerateFrame when P is singular (branch points).
Mat2 const_canonical_monodromy(const ConstantModel& model, Complex z);

// |Im Delta| <= tol and -1 - tol <= Re Delta <= 1 + tol.
bool const_spectrum_membership(const ConstantModel& model, Complex z, double tol);

}  // namespace dirac
