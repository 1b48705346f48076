#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dirac/spectrum.hpp"

namespace dirac {

// Enclosure constants for one h.
struct EnclosureParams {
  double B1 = 0.0;             // sqrt(|p| |q|), strip half-width
  double C_h = 0.0;            // (h/2)(|p'| + |q'|) + |conj(pq) - pq| / 4
  std::optional<double> c_h;   // (h/2) sqrt(|p'| |q'|), only when pq is real
  double c0 = 0.0;             // sqrt(|p'| |q'|) / 2
  double h = 1.0;
  bool pq_real = false;

  // The hyperbola constant in force: c_h when available, else C_h.
  double hyperbola() const { return c_h ? *c_h : C_h; }
};

enum class Verdict { Pass, Fail, NotApplicable };

std::string to_string(Verdict v);

struct ConfinementReport {
  int n_points = 0;
  double max_strip_violation = 0.0;      // max (|Im z| - B1)+ / (1 + |z|^2)
  double max_hyperbola_violation = 0.0;  // max (|Re z||Im z| - C)+ / (1 + |z|^2)
  double max_cross_distance = 0.0;
  double delta = 0.0;
  double h0_for_delta = 0.0;
  double tolerance = 1e-6;
  Verdict strip = Verdict::Pass;
  Verdict hyperbola = Verdict::Pass;
  Verdict cross = Verdict::NotApplicable;  // only meaningful for h < h0
};

inline constexpr double kReportTol = 1e-6;

EnclosureParams enclosure_params(const PotentialNorms& norms, const SymmetryFlags& flags, double h);

// |Im z| <= B1 and |Re z||Im z| <= hyperbola constant.
bool in_lambda(Complex z, const EnclosureParams& params);

// Distance from z to R union i[-B1, B1].
double cross_distance(Complex z, double B1);

// delta^2 / (2 c0); +infinity when c0 == 0.
double h_threshold(double delta, double c0);

// Throws MismatchedH when the arcs were traced at a different h.
ConfinementReport certify(const SpectrumArcs& arcs, const EnclosureParams& params, double delta,
                          double tol = kReportTol);

// Boundary curves of the enclosure sets inside a window, as polylines for plotting.
struct EnclosureCurves {
  std::vector<std::vector<Complex>> strip, hyperbola, cross;
};

EnclosureCurves enclosure_curves(const EnclosureParams& params, const Window& window, int n = 200);

}  // namespace dirac
