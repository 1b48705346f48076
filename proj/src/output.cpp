#include "dirac/output.hpp"

#include <cmath>
#include <cstdio>

namespace dirac {

using nlohmann::ordered_json;

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string h_tag(double h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", h);
  return buf;
}

std::vector<CsvRow> spectrum_rows(const SpectrumArcs& arcs, const PeriodicPotential& pot,
                                  const IntegratorConfig& cfg) {
  std::vector<CsvRow> rows;
  int arc_id = 0;
  for (const auto& arc : arcs.arcs) {
    for (size_t v = 0; v < arc.size(); ++v) rows.push_back({arc_id, static_cast<int>(v), arc[v].z, arc[v].delta_re});
    ++arc_id;
  }
  auto band = [&](const Interval& b, bool real_axis) {
    const Complex ends[2] = {real_axis ? Complex(b.lo, 0.0) : Complex(0.0, b.lo),
                             real_axis ? Complex(b.hi, 0.0) : Complex(0.0, b.hi)};
    for (int v = 0; v < 2; ++v)
      rows.push_back({arc_id, v, ends[v], discriminant(pot, ends[v], arcs.h, cfg).real()});
    ++arc_id;
  };
  for (const auto& b : arcs.axis_bands) band(b, true);
  for (const auto& b : arcs.imag_axis_bands) band(b, false);
  return rows;
}

void write_spectrum_csv(std::ostream& os, double h, const std::vector<CsvRow>& rows) {
  os << "h,arc_id,vertex_id,re_z,im_z,re_delta\n";
  const std::string hs = fmt_num(h);
  for (const auto& r : rows)
    os << hs << ',' << r.arc_id << ',' << r.vertex_id << ',' << fmt_num(r.z.real()) << ','
       << fmt_num(r.z.imag()) << ',' << fmt_num(r.re_delta) << '\n';
}

namespace {

struct Canvas {
  Window w;
  double width = 800.0, height = 0.0;

  explicit Canvas(const Window& win) : w(win) {
    height = width * (w.im_max - w.im_min) / (w.re_max - w.re_min);
  }
  double px(double re) const { return (re - w.re_min) / (w.re_max - w.re_min) * width; }
  double py(double im) const { return (w.im_max - im) / (w.im_max - w.im_min) * height; }

  std::string points(const std::vector<Complex>& line) const {
    std::string s;
    char buf[64];
    for (Complex z : line) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", s.empty() ? "" : " ", px(z.real()), py(z.imag()));
      s += buf;
    }
    return s;
  }
};

void polyline(std::ostream& os, const Canvas& c, const std::vector<Complex>& line) {
  if (line.size() < 2) return;
  os << "    <polyline points=\"" << c.points(line) << "\"/>\n";
}

}  // namespace

void write_spectrum_svg(std::ostream& os, const SpectrumArcs& arcs, const SvgLayers& layers) {
  const Canvas c(arcs.window);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.2f %.2f\">\n",
                c.width, c.height, c.width, c.height);
  os << buf;
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  os << "  <g id=\"enclosure\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6,4\">\n";
  if (layers.enclosure) {
    for (const auto& l : layers.enclosure->strip) polyline(os, c, l);
    for (const auto& l : layers.enclosure->hyperbola) polyline(os, c, l);
  }
  os << "  </g>\n";
  os << "  <g id=\"cross\" fill=\"none\" stroke=\"gray\" stroke-width=\"0.5\">\n";
  if (layers.enclosure)
    for (const auto& l : layers.enclosure->cross) polyline(os, c, l);
  os << "  </g>\n";

  os << "  <g id=\"contours\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.7\" stroke-dasharray=\"1,2\">\n";
  for (const auto& l : arcs.contours) polyline(os, c, l);
  os << "  </g>\n";

  os << "  <g id=\"arcs\" fill=\"none\" stroke=\"#1f4fd8\" stroke-width=\"2\">\n";
  for (const auto& arc : arcs.arcs) {
    std::vector<Complex> line;
    for (const auto& v : arc) line.push_back(v.z);
    polyline(os, c, line);
  }
  for (const auto& b : arcs.axis_bands) polyline(os, c, {Complex(b.lo, 0.0), Complex(b.hi, 0.0)});
  for (const auto& b : arcs.imag_axis_bands) polyline(os, c, {Complex(0.0, b.lo), Complex(0.0, b.hi)});
  os << "  </g>\n";

  os << "  <g id=\"markers\" fill=\"#d62728\" stroke=\"none\">\n";
  for (Complex z : layers.markers) {
    if (!arcs.window.contains(z)) continue;
    std::snprintf(buf, sizeof buf, "    <circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\"/>\n", c.px(z.real()), c.py(z.imag()));
    os << buf;
  }
  os << "  </g>\n";
  os << "</svg>\n";
}

ordered_json to_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json to_json(const EnclosureParams& p) {
  ordered_json j;
  j["h"] = p.h;
  j["B1"] = p.B1;
  j["C_h"] = p.C_h;
  j["c_h"] = p.c_h ? ordered_json(*p.c_h) : ordered_json(nullptr);
  j["c0"] = p.c0;
  j["pq_real"] = p.pq_real;
  return j;
}

ordered_json to_json(const ConfinementReport& r) {
  ordered_json j;
  j["n_points"] = r.n_points;
  j["max_strip_violation"] = r.max_strip_violation;
  j["max_hyperbola_violation"] = r.max_hyperbola_violation;
  j["max_cross_distance"] = r.max_cross_distance;
  j["delta"] = r.delta;
  // JSON has no infinity; a constant p or q gives an unbounded threshold.
  j["h0_for_delta"] = std::isfinite(r.h0_for_delta) ? ordered_json(r.h0_for_delta) : ordered_json("inf");
  j["tolerance"] = r.tolerance;
  j["verdict"] = {{"strip", to_string(r.strip)}, {"hyperbola", to_string(r.hyperbola)}, {"cross", to_string(r.cross)}};
  return j;
}

ordered_json to_json(const TraceStats& s) {
  ordered_json j;
  j["segments"] = s.segments;
  j["vertices"] = s.vertices;
  j["accepted"] = s.accepted;
  j["rejected"] = s.rejected;
  j["flagged"] = s.flagged;
  j["max_abs_im_delta"] = s.max_abs_im_delta;
  j["max_modulus_defect"] = s.max_modulus_defect;
  return j;
}

ordered_json to_json(const SymmetryCheckResult& r) {
  ordered_json j;
  j["relation"] = to_string(r.relation);
  j["max_defect"] = r.max_defect;
  j["n_samples"] = r.n_samples;
  return j;
}

}  // namespace dirac
