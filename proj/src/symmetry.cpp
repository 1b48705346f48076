#include "dirac/symmetry.hpp"

#include <algorithm>
#include <limits>

namespace dirac {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::RealConj:
      return "real_conj";
    case Relation::EvenConj:
      return "even_conj";
    case Relation::OddConj:
      return "odd_conj";
    case Relation::SpectrumReflectReal:
      return "spectrum_reflect_real";
    case Relation::SpectrumReflectImag:
      return "spectrum_reflect_imag";
  }
  return "unknown";
}

std::vector<SymmetryCheckResult> check_monodromy_symmetry(const PeriodicPotential& pot, const SymmetryFlags& flags,
                                                          double h, const std::vector<Complex>& z_samples,
                                                          const IntegratorConfig& cfg) {
  if (!(flags.is_real || flags.is_even || flags.is_odd))
    throw std::invalid_argument("check_monodromy_symmetry: potential has no flagged symmetry");
  if (z_samples.empty()) throw std::invalid_argument("check_monodromy_symmetry: no sample points");

  std::vector<SymmetryCheckResult> out;
  auto run = [&](Relation rel, auto partner) {
    SymmetryCheckResult r{rel, 0.0, 0};
    for (Complex z : z_samples) {
      const Mat2 M = integrate_monodromy(pot, z, h, cfg).M;
      const Mat2 rhs = partner(z);
      r.max_defect = std::max(r.max_defect, rel_frobenius(M, rhs, M));
      ++r.n_samples;
    }
    out.push_back(r);
  };
  const Mat2 s3 = Mat2::sigma3();
  if (flags.is_real)
    run(Relation::RealConj, [&](Complex z) { return integrate_monodromy(pot, -std::conj(z), h, cfg).M.conj(); });
  if (flags.is_even)
    run(Relation::EvenConj,
        [&](Complex z) { return s3 * integrate_monodromy(pot, -z, h, cfg).M.inverse() * s3; });
  if (flags.is_odd)
    run(Relation::OddConj, [&](Complex z) { return integrate_monodromy(pot, -z, h, cfg).M.inverse(); });
  return out;
}

namespace {

double one_sided_hausdorff(const std::vector<Complex>& from, const std::vector<Complex>& to) {
  double worst = 0.0;
  for (Complex a : from) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex b : to) best = std::min(best, std::abs(a - b));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

std::vector<SymmetryCheckResult> check_spectrum_symmetry(const SpectrumArcs& arcs, const SymmetryFlags& flags) {
  const std::vector<Complex> pts = arcs.points();
  if (pts.empty()) throw EmptyArcs("check_spectrum_symmetry: no spectrum points");
  std::vector<SymmetryCheckResult> out;
  auto run = [&](Relation rel, auto reflect) {
    std::vector<Complex> mirrored;
    mirrored.reserve(pts.size());
    for (Complex z : pts) mirrored.push_back(reflect(z));
    out.push_back({rel, one_sided_hausdorff(mirrored, pts), static_cast<int>(pts.size())});
  };
  if (flags.is_real) run(Relation::SpectrumReflectReal, [](Complex z) { return -std::conj(z); });
  if (flags.is_even || flags.is_odd) run(Relation::SpectrumReflectImag, [](Complex z) { return -z; });
  return out;
}

double spectrum_symmetry_threshold(const SpectrumArcs& arcs) {
  return 2.0 * std::hypot(arcs.cell_size.first, arcs.cell_size.second);
}

}  // namespace dirac
