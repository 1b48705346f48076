#include "dirac/potential.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace dirac {

namespace {

double reduce_unit(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// Golden-section search for the maximum of f on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::max(f1, f2);
  for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

}  // namespace

TrigSeries::TrigSeries(const std::vector<FourierMode>& modes) {
  if (modes.empty()) return;
  int lo = modes.front().k, hi = modes.front().k;
  for (const auto& m : modes) {
    lo = std::min(lo, m.k);
    hi = std::max(hi, m.k);
  }
  kmin_ = lo;
  coeffs_.assign(static_cast<size_t>(hi - lo + 1), Complex{0.0});
  for (const auto& m : modes) coeffs_[static_cast<size_t>(m.k - lo)] += m.c;
}

TrigSeries TrigSeries::interpolating(const std::vector<Complex>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n == 0) throw EmptyRepresentation("sampled potential has no samples");
  // Symmetric band: -n/2..n/2 with the Nyquist term split evenly when n is even.
  const int half = n / 2;
  std::vector<FourierMode> modes;
  auto dft = [&](int k) {
    Complex acc{0.0};
    for (int j = 0; j < n; ++j) {
      const long long r = ((static_cast<long long>(k) * j) % n + n) % n;
      acc += samples[static_cast<size_t>(j)] * std::polar(1.0, -2.0 * kPi * static_cast<double>(r) / n);
    }
    return acc / static_cast<double>(n);
  };
  for (int k = -((n - 1) / 2); k <= (n - 1) / 2; ++k) modes.push_back({k, dft(k)});
  if (n % 2 == 0) {
    const Complex nyq = dft(half);
    modes.push_back({half, 0.5 * nyq});
    modes.push_back({-half, 0.5 * nyq});
  }
  return TrigSeries(modes);
}

Complex TrigSeries::eval(double x) const {
  if (coeffs_.empty()) return 0.0;
  const double xr = reduce_unit(x);
  const Complex w = std::polar(1.0, 2.0 * kPi * xr);
  // Horner in w, then shift by w^kmin.
  Complex acc{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
  if (kmin_ == 0) return acc;
  return acc * std::polar(1.0, 2.0 * kPi * std::remainder(kmin_ * xr, 1.0));
}

TrigSeries TrigSeries::derivative() const {
  TrigSeries d = *this;
  for (size_t j = 0; j < d.coeffs_.size(); ++j) {
    const double k = static_cast<double>(kmin_) + static_cast<double>(j);
    d.coeffs_[j] *= Complex(0.0, 2.0 * kPi * k);
  }
  return d;
}

double TrigSeries::coefficient_l1() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

PeriodicPotential PeriodicPotential::constant(Complex p0, Complex q0) {
  PeriodicPotential pot;
  pot.kind_ = Kind::Constant;
  pot.p0_ = p0;
  pot.q0_ = q0;
  pot.finish();
  return pot;
}

PeriodicPotential PeriodicPotential::fourier(const std::vector<FourierMode>& p,
                                             const std::vector<FourierMode>& q) {
  PeriodicPotential pot;
  pot.kind_ = Kind::FourierSeries;
  pot.p_modes_ = p;
  pot.q_modes_ = q;
  pot.p_ = TrigSeries(p);
  pot.q_ = TrigSeries(q);
  pot.finish();
  return pot;
}

PeriodicPotential PeriodicPotential::sampled(const std::vector<Complex>& p, const std::vector<Complex>& q) {
  PeriodicPotential pot;
  pot.kind_ = Kind::SampledGrid;
  pot.p_samples_ = p;
  pot.q_samples_ = q;
  pot.p_ = TrigSeries::interpolating(p);
  pot.q_ = TrigSeries::interpolating(q);
  pot.finish();
  return pot;
}

void PeriodicPotential::finish() {
  if (kind_ == Kind::Constant) {
    amplitude_bound_ = std::max(std::abs(p0_), std::abs(q0_));
    return;
  }
  dp_ = p_.derivative();
  dq_ = q_.derivative();
  amplitude_bound_ = std::max(p_.coefficient_l1(), q_.coefficient_l1());
}

std::pair<Complex, Complex> PeriodicPotential::eval(double x) const {
  if (kind_ == Kind::Constant) return {p0_, q0_};
  return {p_.eval(x), q_.eval(x)};
}

std::pair<Complex, Complex> PeriodicPotential::eval_derivative(double x) const {
  if (kind_ == Kind::Constant) return {0.0, 0.0};
  return {dp_.eval(x), dq_.eval(x)};
}

std::pair<Complex, Complex> eval_pq(const PeriodicPotential& pot, double x) { return pot.eval(x); }

Mat2 eval_A(const PeriodicPotential& pot, double x, Complex z) {
  const auto [p, q] = pot.eval(x);
  const Complex iz = kI * z;
  return {-iz, q, p, iz};
}

PotentialNorms sup_norms(const PeriodicPotential& pot, int n_samples) {
  if (n_samples < 16) throw std::invalid_argument("sup_norms: n_samples must be >= 16");
  PotentialNorms out;
  out.n_samples = n_samples;
  if (pot.kind() == PeriodicPotential::Kind::Constant) {
    const Complex p = pot.p0(), q = pot.q0();
    out.sup_p = std::abs(p);
    out.sup_q = std::abs(q);
    out.sup_pq_defect = std::abs(std::conj(p * q) - p * q);
    return out;
  }

  using Fn = std::function<double(double)>;
  const std::array<Fn, 5> fns = {
      [&](double x) { return std::abs(pot.eval(x).first); },
      [&](double x) { return std::abs(pot.eval(x).second); },
      [&](double x) { return std::abs(pot.eval_derivative(x).first); },
      [&](double x) { return std::abs(pot.eval_derivative(x).second); },
      [&](double x) {
        const auto [p, q] = pot.eval(x);
        return std::abs(std::conj(p * q) - p * q);
      },
  };
  std::array<double, 5> result{};
  const double dx = 1.0 / n_samples;
  for (size_t f = 0; f < fns.size(); ++f) {
    double best = -1.0, at = 0.0;
    for (int j = 0; j < n_samples; ++j) {
      const double x = j * dx;
      const double v = fns[f](x);
      if (v > best) {
        best = v;
        at = x;
      }
    }
    result[f] = std::max(best, golden_max(fns[f], at - dx, at + dx));
  }
  out.sup_p = result[0];
  out.sup_q = result[1];
  out.sup_dp = result[2];
  out.sup_dq = result[3];
  out.sup_pq_defect = result[4];
  return out;
}

SymmetryFlags detect_symmetries(const PeriodicPotential& pot, const PotentialNorms& norms, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("detect_symmetries: tol must be positive");
  SymmetryFlags flags;
  flags.tol = tol;
  const double bound = tol * (1.0 + norms.sup_p * norms.sup_q);

  double max_im = 0.0, max_even = 0.0, max_odd = 0.0;
  const int n = std::max(norms.n_samples, 16);
  for (int j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) / n;
    const auto [p, q] = pot.eval(x);
    const auto [pm, qm] = pot.eval(-x);
    max_im = std::max({max_im, std::abs(p.imag()), std::abs(q.imag())});
    max_even = std::max({max_even, std::abs(p - pm), std::abs(q - qm)});
    max_odd = std::max({max_odd, std::abs(p + pm), std::abs(q + qm)});
  }
  flags.is_real = max_im <= bound;
  flags.is_even = max_even <= bound;
  flags.is_odd = max_odd <= bound;
  flags.pq_real = norms.sup_pq_defect <= bound;
  return flags;
}

}  // namespace dirac
