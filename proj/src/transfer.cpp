#include "dirac/transfer.hpp"

#include <algorithm>
#include <sstream>

namespace dirac {

namespace {

const double kSqrt3 = std::sqrt(3.0);
// Gauss nodes and the commutator-free weights.
const double kNode1 = 0.5 - kSqrt3 / 6.0;
const double kNode2 = 0.5 + kSqrt3 / 6.0;
const double kAlpha1 = (3.0 - 2.0 * kSqrt3) / 12.0;
const double kAlpha2 = (3.0 + 2.0 * kSqrt3) / 12.0;

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(samples_per_wavelength >= 8.0))
    throw std::invalid_argument("integrator: samples_per_wavelength must be >= 8");
  if (min_steps < 1 || min_steps > max_steps)
    throw std::invalid_argument("integrator: need 1 <= min_steps <= max_steps");
  if (!(richardson_tol > 0.0)) throw std::invalid_argument("integrator: richardson_tol must be positive");
}

Mat2 exp_traceless(const Mat2& B) {
  const Complex mu2 = B.a * B.a + B.b * B.c;
  Complex ch, sh;
  if (std::abs(mu2) < 1e-12) {
    // |mu| < 1e-6: truncated series for cosh(mu) and sinh(mu)/mu.
    ch = 1.0 + mu2 / 2.0 + mu2 * mu2 / 24.0;
    sh = 1.0 + mu2 / 6.0 + mu2 * mu2 / 120.0;
  } else {
    const Complex mu = std::sqrt(mu2);
    ch = std::cosh(mu);
    sh = std::sinh(mu) / mu;
  }
  return {ch + sh * B.a, sh * B.b, sh * B.c, ch - sh * B.a};
}

Mat2 magnus_step(const PeriodicPotential& pot, double x0, double dx, Complex z, double h) {
  const Mat2 A1 = eval_A(pot, x0 + kNode1 * dx, z);
  const Mat2 A2 = eval_A(pot, x0 + kNode2 * dx, z);
  const double s = dx / h;
  const Mat2 first = exp_traceless(Complex(s * kAlpha2) * A1 + Complex(s * kAlpha1) * A2);
  const Mat2 second = exp_traceless(Complex(s * kAlpha1) * A1 + Complex(s * kAlpha2) * A2);
  return second * first;
}

Mat2 propagate(const PeriodicPotential& pot, Complex z, double h, std::int64_t n) {
  const double dx = 1.0 / static_cast<double>(n);
  Mat2 Y = Mat2::identity();
  if (pot.kind() == PeriodicPotential::Kind::Constant) {
    const Mat2 step = magnus_step(pot, 0.0, dx, z, h);
    for (std::int64_t k = 0; k < n; ++k) Y = step * Y;
    return Y;
  }
  for (std::int64_t k = 0; k < n; ++k) Y = magnus_step(pot, static_cast<double>(k) * dx, dx, z, h) * Y;
  return Y;
}

std::vector<Vec2> propagate_samples(const PeriodicPotential& pot, Complex z, double h, Vec2 v0,
                                    int n_samples, std::int64_t steps_per_sample) {
  const std::int64_t n = static_cast<std::int64_t>(n_samples) * steps_per_sample;
  const double dx = 1.0 / static_cast<double>(n);
  std::vector<Vec2> out;
  out.reserve(static_cast<size_t>(n_samples) + 1);
  out.push_back(v0);
  Vec2 v = v0;
  for (std::int64_t k = 0; k < n; ++k) {
    v = magnus_step(pot, static_cast<double>(k) * dx, dx, z, h) * v;
    if ((k + 1) % steps_per_sample == 0) out.push_back(v);
  }
  return out;
}

std::int64_t initial_step_count(const PeriodicPotential& pot, Complex z, double h,
                                const IntegratorConfig& cfg) {
  const double rate = (std::abs(z) + pot.amplitude_bound()) / h;
  const double wanted = std::ceil(cfg.samples_per_wavelength * rate / (2.0 * kPi));
  if (!(wanted < static_cast<double>(cfg.max_steps))) return cfg.max_steps;
  return std::clamp(static_cast<std::int64_t>(wanted), cfg.min_steps, cfg.max_steps);
}

MonodromyResult integrate_monodromy(const PeriodicPotential& pot, Complex z, double h,
                                    const IntegratorConfig& cfg) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate_monodromy: h must be positive");
  cfg.validate();

  std::int64_t n = initial_step_count(pot, z, h, cfg);
  Mat2 coarse = propagate(pot, z, h, n);
  for (;;) {
    if (!coarse.finite()) throw NonFinite("monodromy overflow at z = " + describe(z), z);
    if (2 * n > cfg.max_steps)
      throw StepBudgetExceeded("step budget exhausted before Richardson tolerance at z = " + describe(z));
    const Mat2 fine = propagate(pot, z, h, 2 * n);
    if (!fine.finite()) throw NonFinite("monodromy overflow at z = " + describe(z), z);
    const double diff = rel_frobenius(fine, coarse, fine);
    if (diff <= cfg.richardson_tol) {
      MonodromyResult r;
      r.M = fine;
      r.delta = 0.5 * fine.trace();
      r.multipliers = floquet_multipliers(r.delta);
      r.det_defect = std::abs(fine.det() - 1.0);
      r.steps_used = 2 * n;
      r.est_error = diff / 15.0;
      return r;
    }
    coarse = fine;
    n *= 2;
  }
}

Complex discriminant(const PeriodicPotential& pot, Complex z, double h, const IntegratorConfig& cfg) {
  return integrate_monodromy(pot, z, h, cfg).delta;
}

std::pair<Complex, Complex> floquet_multipliers(Complex delta) {
  const Complex root = std::sqrt(delta * delta - 1.0);
  const Complex plus = delta + root, minus = delta - root;
  // The larger root is formed without cancellation; its partner is the reciprocal.
  const Complex big = std::abs(plus) >= std::abs(minus) ? plus : minus;
  const Complex small = 1.0 / big;
  if (std::abs(std::abs(big) - std::abs(small)) <= 1e-12 * std::abs(big)) {
    return big.imag() >= small.imag() ? std::pair{big, small} : std::pair{small, big};
  }
  return {big, small};
}

}  // namespace dirac
