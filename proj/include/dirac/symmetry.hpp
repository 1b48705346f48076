#pragma once

#include <string>
#include <vector>

#include "dirac/spectrum.hpp"

namespace dirac {

enum class Relation {
  RealConj,             // M(z) = conj M(-conj z), real potentials
  EvenConj,             // M(z) = sigma3 M(-z)^-1 sigma3, even potentials
  OddConj,              // M(z) = M(-z)^-1, odd potentials
  SpectrumReflectReal,  // spectrum invariant under z -> -conj z
  SpectrumReflectImag,  // spectrum invariant under z -> -z
};

std::string to_string(Relation r);

struct SymmetryCheckResult {
  Relation relation = Relation::RealConj;
  double max_defect = 0.0;
  int n_samples = 0;
};

// Relative Frobenius defect of each relation the flags allow, maximized over z_samples.
// Throws std::invalid_argument when no symmetry is flagged or z_samples is empty.
std::vector<SymmetryCheckResult> check_monodromy_symmetry(const PeriodicPotential& pot, const SymmetryFlags& flags,
                                                          double h, const std::vector<Complex>& z_samples,
                                                          const IntegratorConfig& cfg = {});

// One-sided Hausdorff distance from the reflected point set to the point set. Throws EmptyArcs.
std::vector<SymmetryCheckResult> check_spectrum_symmetry(const SpectrumArcs& arcs, const SymmetryFlags& flags);

// Threshold for a spectrum reflection defect: two grid cells.
double spectrum_symmetry_threshold(const SpectrumArcs& arcs);

}  // namespace dirac
