#include "dirac/oracle.hpp"

namespace dirac {

namespace {

// z + lambda, switching to omega^2 / (z - lambda) when the direct sum cancels.
Complex z_plus_lambda(const ConstantModel& m, Complex z, Complex lambda) {
  const Complex plus = z + lambda, minus = z - lambda;
  if (std::abs(plus) >= std::abs(minus)) return plus;
  if (std::abs(minus) == 0.0) throw DegenerateFrame("z + lambda and z - lambda both vanish");
  return m.omega_sq / minus;
}

// sin(w) / w with the removable singularity filled in.
Complex sinc(Complex w) {
  if (std::abs(w) < 1e-8) return 1.0 - w * w / 6.0;
  return std::sin(w) / w;
}

}  // namespace

Complex const_lambda(const ConstantModel& model, Complex z) {
  return std::sqrt(z * z - model.omega_sq);
}

Complex const_discriminant(const ConstantModel& model, Complex z) {
  return std::cos(const_lambda(model, z) / model.h);
}

Mat2 const_eigenvectors(const ConstantModel& model, Complex z) {
  if (model.p0 == 0.0 || model.q0 == 0.0)
    throw DegenerateFrame("eigenvector matrix undefined for p0 = 0 or q0 = 0");
  const Complex s = z_plus_lambda(model, z, const_lambda(model, z));
  return {1.0, -kI * s / model.p0, kI * s / model.q0, 1.0};
}

Mat2 const_fundamental(const ConstantModel& model, Complex z, double x) {
  const Complex lambda = const_lambda(model, z);
  const Mat2 P = const_eigenvectors(model, z);
  return P * Mat2::diag(std::exp(kI * lambda * x / model.h), std::exp(-kI * lambda * x / model.h));
}

Mat2 const_monodromy(const ConstantModel& model, Complex z) {
  const Complex lambda = const_lambda(model, z);
  return Mat2::diag(std::exp(kI * lambda / model.h), std::exp(-kI * lambda / model.h));
}

Mat2 const_canonical_monodromy(const ConstantModel& model, Complex z) {
  const double h = model.h;
  if (model.p0 == 0.0 || model.q0 == 0.0) {
    // Triangular system: the diagonal decouples, the off-diagonal entry is p0 (or q0) sin(z/h)/z.
    const Complex off = sinc(z / h) / h;
    return {std::exp(-kI * z / h), model.q0 * off, model.p0 * off, std::exp(kI * z / h)};
  }
  const Mat2 P = const_eigenvectors(model, z);
  const Complex det = P.det();
  if (std::abs(det) < 1e-12 * (1.0 + std::norm(P.b) + std::norm(P.c)))
    throw DegenerateFrame("eigenvector matrix is singular (branch point)");
  return P * const_monodromy(model, z) * P.inverse();
}

bool const_spectrum_membership(const ConstantModel& model, Complex z, double tol) {
  const Complex d = const_discriminant(model, z);
  return std::abs(d.imag()) <= tol && d.real() >= -1.0 - tol && d.real() <= 1.0 + tol;
}

}  // namespace dirac
