#pragma once

#include <utility>
#include <vector>

#include "dirac/types.hpp"

namespace dirac {

// One Fourier mode c * exp(2 pi i k x).
struct FourierMode {
  int k = 0;
  Complex c{0.0};
};

// Dense trigonometric polynomial on [0, 1) with wavenumbers kmin..kmax.
class TrigSeries {
 public:
  TrigSeries() = default;
  explicit TrigSeries(const std::vector<FourierMode>& modes);

  static TrigSeries interpolating(const std::vector<Complex>& samples);

  Complex eval(double x) const;
  TrigSeries derivative() const;

  // sum |c_k|, an upper bound for the sup norm.
  double coefficient_l1() const;
  bool empty() const { return coeffs_.empty(); }
  int kmin() const { return kmin_; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }

 private:
  int kmin_ = 0;
  std::vector<Complex> coeffs_;  // coeffs_[j] multiplies exp(2 pi i (kmin_ + j) x)
};

// A one-periodic potential pair (p, q). Period is fixed to 1.
class PeriodicPotential {
 public:
  enum class Kind { Constant, FourierSeries, SampledGrid };

  static PeriodicPotential constant(Complex p0, Complex q0);
  static PeriodicPotential fourier(const std::vector<FourierMode>& p, const std::vector<FourierMode>& q);
  // Band-limited interpolation of uniform samples on [0, 1). Throws EmptyRepresentation if
  // either sample list is empty.
  static PeriodicPotential sampled(const std::vector<Complex>& p, const std::vector<Complex>& q);

  Kind kind() const { return kind_; }

  std::pair<Complex, Complex> eval(double x) const;
  std::pair<Complex, Complex> eval_derivative(double x) const;

  // Coefficient-l1 bound on max(|p|, |q|); exact for constants.
  double amplitude_bound() const { return amplitude_bound_; }

  Complex p0() const { return p0_; }
  Complex q0() const { return q0_; }
  const std::vector<FourierMode>& p_modes() const { return p_modes_; }
  const std::vector<FourierMode>& q_modes() const { return q_modes_; }
  const std::vector<Complex>& p_samples() const { return p_samples_; }
  const std::vector<Complex>& q_samples() const { return q_samples_; }

 private:
  PeriodicPotential() = default;
  void finish();

  Kind kind_ = Kind::Constant;
  Complex p0_{0.0}, q0_{0.0};
  std::vector<FourierMode> p_modes_, q_modes_;
  std::vector<Complex> p_samples_, q_samples_;
  TrigSeries p_, q_, dp_, dq_;
  double amplitude_bound_ = 0.0;
};

struct PotentialNorms {
  double sup_p = 0.0, sup_q = 0.0, sup_dp = 0.0, sup_dq = 0.0;
  double sup_pq_defect = 0.0;  // sup |conj(p q) - p q|
  int n_samples = 0;
};

struct SymmetryFlags {
  bool is_real = false, is_even = false, is_odd = false, pq_real = false;
  double tol = 0.0;
};

inline constexpr int kDefaultNormSamples = 4096;
inline constexpr double kDefaultSymmetryTol = 1e-10;

std::pair<Complex, Complex> eval_pq(const PeriodicPotential& pot, double x);

// A(x; z) = [[-i z, q(x)], [p(x), i z]].
Mat2 eval_A(const PeriodicPotential& pot, double x, Complex z);

// Requires n_samples >= 16.
PotentialNorms sup_norms(const PeriodicPotential& pot, int n_samples = kDefaultNormSamples);

SymmetryFlags detect_symmetries(const PeriodicPotential& pot, const PotentialNorms& norms,
                                double tol = kDefaultSymmetryTol);

}  // namespace dirac
