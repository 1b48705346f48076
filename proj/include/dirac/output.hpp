#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac/bounds.hpp"
#include "dirac/symmetry.hpp"

namespace dirac {

// Round-trip decimal form used in every CSV.
std::string fmt_num(double v);
// Short form of h for file names: 1, 0.5, 0.25.
std::string h_tag(double h);

struct CsvRow {
  int arc_id = 0, vertex_id = 0;
  Complex z{0.0};
  double re_delta = 0.0;
};

// Arc vertices, then each real-axis and imaginary-axis band as a two-vertex arc.
std::vector<CsvRow> spectrum_rows(const SpectrumArcs& arcs, const PeriodicPotential& pot,
                                  const IntegratorConfig& cfg);

void write_spectrum_csv(std::ostream& os, double h, const std::vector<CsvRow>& rows);

struct SvgLayers {
  const EnclosureCurves* enclosure = nullptr;
  std::vector<Complex> markers;
};

// Layers in order: enclosure boundaries, raw Im Delta = 0 contours, arcs and axis bands, markers.
void write_spectrum_svg(std::ostream& os, const SpectrumArcs& arcs, const SvgLayers& layers);

nlohmann::ordered_json to_json(Complex z);
nlohmann::ordered_json to_json(const EnclosureParams& p);
nlohmann::ordered_json to_json(const ConfinementReport& r);
nlohmann::ordered_json to_json(const TraceStats& s);
nlohmann::ordered_json to_json(const SymmetryCheckResult& r);

}  // namespace dirac
