#include "dirac/commands.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "dirac/oracle.hpp"
#include "dirac/output.hpp"

namespace dirac {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Traced {
  DiscriminantField field;
  std::optional<SpectrumArcs> arcs;
};

Traced trace_at(const RunConfig& cfg, double h, const CommandContext& ctx) {
  if (!ctx.quiet) *ctx.log << "h = " << h << ": evaluating " << cfg.nx << " x " << cfg.ny << " grid\n";
  Traced t{discriminant_field(cfg.potential, h, cfg.window, cfg.nx, cfg.ny, cfg.integrator, cfg.threads), {}};
  if (!t.field.failures.empty()) {
    *ctx.log << "h = " << h << ": integration failed at " << t.field.failures.size() << " grid nodes\n";
    return t;
  }
  t.arcs = trace_spectrum(t.field, cfg.trace_options());
  if (!ctx.quiet)
    *ctx.log << "h = " << h << ": " << t.arcs->arcs.size() << " arcs, " << t.arcs->axis_bands.size()
             << " real-axis bands, " << t.arcs->imag_axis_bands.size() << " imaginary-axis bands\n";
  return t;
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

void write_report(const RunConfig& cfg, const fs::path& dir, const ordered_json& report) {
  if (cfg.outputs.json) write_file(dir / "report.json", report.dump(2) + "\n");
}

ordered_json report_header(const RunConfig& cfg, const char* command) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["potential"] = cfg.potential_json;
  j["window"] = {{"re", {cfg.window.re_min, cfg.window.re_max}}, {"im", {cfg.window.im_min, cfg.window.im_max}}};
  j["grid"] = {cfg.nx, cfg.ny};
  return j;
}

ordered_json failures_json(const DiscriminantField& f) {
  ordered_json arr = ordered_json::array();
  for (auto [i, j] : f.failures) arr.push_back(to_json(f.node(i, j)));
  return arr;
}

// Branch points for constant potentials; otherwise the refined band edges and axis band ends.
std::vector<Complex> markers(const PeriodicPotential& pot, const SpectrumArcs& arcs) {
  std::vector<Complex> out;
  if (pot.kind() == PeriodicPotential::Kind::Constant) {
    const Complex omega = std::sqrt(pot.p0() * pot.q0());
    if (std::abs(omega) > 0.0) out = {omega, -omega};
    return out;
  }
  for (const auto& arc : arcs.arcs)
    for (const auto& v : arc)
      if (v.band_edge) out.push_back(v.z);
  const Window& w = arcs.window;
  for (const auto& b : arcs.axis_bands)
    for (double x : {b.lo, b.hi})
      if (x > w.re_min && x < w.re_max) out.push_back({x, 0.0});
  for (const auto& b : arcs.imag_axis_bands)
    for (double y : {b.lo, b.hi})
      if (y > w.im_min && y < w.im_max) out.push_back({0.0, y});
  return out;
}

struct Enclosure {
  PotentialNorms norms;
  SymmetryFlags flags;
};

Enclosure enclosure_inputs(const RunConfig& cfg) {
  Enclosure e;
  e.norms = sup_norms(cfg.potential);
  e.flags = detect_symmetries(cfg.potential, e.norms, cfg.tol.symmetry_tol);
  return e;
}

void emit_spectrum_files(const RunConfig& cfg, const fs::path& dir, const SpectrumArcs& arcs,
                         const EnclosureParams& params) {
  const std::string tag = h_tag(arcs.h);
  if (cfg.outputs.csv) {
    std::ostringstream csv;
    write_spectrum_csv(csv, arcs.h, spectrum_rows(arcs, cfg.potential, cfg.integrator));
    write_file(dir / ("spectrum_h" + tag + ".csv"), csv.str());
  }
  if (cfg.outputs.svg) {
    const EnclosureCurves curves = enclosure_curves(params, arcs.window);
    std::ostringstream svg;
    write_spectrum_svg(svg, arcs, {&curves, markers(cfg.potential, arcs)});
    write_file(dir / ("spectrum_h" + tag + ".svg"), svg.str());
  }
}

ordered_json flags_json(const SymmetryFlags& f) {
  return {{"is_real", f.is_real}, {"is_even", f.is_even}, {"is_odd", f.is_odd}, {"pq_real", f.pq_real}};
}

ordered_json norms_json(const PotentialNorms& n) {
  return {{"sup_p", n.sup_p},   {"sup_q", n.sup_q}, {"sup_dp", n.sup_dp}, {"sup_dq", n.sup_dq},
          {"sup_pq_defect", n.sup_pq_defect}};
}

struct CheckLine {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
  std::string note;
};

// Sample points spread uniformly over the window from a fixed seed.
std::vector<Complex> window_samples(const Window& w, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(w.re_min, w.re_max), im(w.im_min, w.im_max);
  std::vector<Complex> out;
  for (int k = 0; k < n; ++k) {
    const double x = re(rng);
    out.push_back({x, im(rng)});
  }
  return out;
}

std::vector<Complex> grid_samples(const Window& w, int n) {
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.push_back({w.re_min + (w.re_max - w.re_min) * i / (n - 1), w.im_min + (w.im_max - w.im_min) * j / (n - 1)});
  return out;
}

// Arc vertices at least `clearance` from every band edge and axis band end, up to `limit`, spread
// evenly along the vertex list.
std::vector<Complex> interior_points(const SpectrumArcs& arcs, double clearance, int limit) {
  std::vector<Complex> edges;
  std::vector<Complex> candidates;
  for (const auto& arc : arcs.arcs)
    for (const auto& v : arc) (v.band_edge ? edges : candidates).push_back(v.z);
  for (const auto& b : arcs.axis_bands) {
    edges.push_back({b.lo, 0.0});
    edges.push_back({b.hi, 0.0});
    for (int k = 1; k < 8; ++k) candidates.push_back({b.lo + b.length() * k / 8.0, 0.0});
  }
  for (const auto& b : arcs.imag_axis_bands) {
    edges.push_back({0.0, b.lo});
    edges.push_back({0.0, b.hi});
    for (int k = 1; k < 8; ++k) candidates.push_back({0.0, b.lo + b.length() * k / 8.0});
  }
  std::vector<Complex> clear;
  for (Complex z : candidates) {
    bool ok = true;
    for (Complex e : edges) ok = ok && std::abs(z - e) >= clearance;
    if (ok) clear.push_back(z);
  }
  if (static_cast<int>(clear.size()) <= limit) return clear;
  std::vector<Complex> out;
  for (int k = 0; k < limit; ++k) out.push_back(clear[clear.size() * k / limit]);
  return out;
}

void print_table(std::ostream& os, const std::vector<CheckLine>& lines) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-40s %14s %12s  %s\n", "check", "value", "threshold", "result");
  os << buf;
  for (const auto& l : lines) {
    std::snprintf(buf, sizeof buf, "%-40s %14.6e %12.3e  %s%s%s\n", l.name.c_str(), l.value, l.threshold,
                  l.pass ? "PASS" : "FAIL", l.note.empty() ? "" : "  ", l.note.c_str());
    os << buf;
  }
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, const CommandContext& ctx) {
  const fs::path dir = prepare_out_dir(cfg);
  const Enclosure enc = enclosure_inputs(cfg);
  ordered_json report = report_header(cfg, "spectrum");
  report["runs"] = ordered_json::array();
  bool failed = false;
  for (double h : cfg.h_list) {
    const Traced t = trace_at(cfg, h, ctx);
    ordered_json run;
    run["h"] = h;
    run["field_failures"] = failures_json(t.field);
    if (t.arcs) {
      const SpectrumArcs& arcs = *t.arcs;
      emit_spectrum_files(cfg, dir, arcs, enclosure_params(enc.norms, enc.flags, h));
      run["arcs"] = arcs.arcs.size();
      run["axis_bands"] = ordered_json::array();
      for (const auto& b : arcs.axis_bands) run["axis_bands"].push_back({b.lo, b.hi});
      run["imag_axis_bands"] = ordered_json::array();
      for (const auto& b : arcs.imag_axis_bands) run["imag_axis_bands"].push_back({b.lo, b.hi});
      run["stats"] = to_json(arcs.stats);
      run["flagged"] = ordered_json::array();
      for (const auto& f : arcs.flagged) run["flagged"].push_back({{"z", to_json(f.z)}, {"reason", f.reason}});
      *ctx.out << "h=" << h << " arcs=" << arcs.arcs.size() << " vertices=" << arcs.stats.accepted
               << " flagged=" << arcs.stats.flagged << "\n";
    } else {
      failed = true;
    }
    report["runs"].push_back(run);
  }
  write_report(cfg, dir, report);
  return failed ? kExitIntegration : kExitOk;
}

int cmd_bounds(const RunConfig& cfg, const CommandContext& ctx) {
  const fs::path dir = prepare_out_dir(cfg);
  const Enclosure enc = enclosure_inputs(cfg);
  ordered_json report = report_header(cfg, "bounds");
  report["norms"] = norms_json(enc.norms);
  report["symmetries"] = flags_json(enc.flags);
  report["runs"] = ordered_json::array();
  bool failed = false, violated = false;
  for (double h : cfg.h_list) {
    const EnclosureParams params = enclosure_params(enc.norms, enc.flags, h);
    const Traced t = trace_at(cfg, h, ctx);
    ordered_json run;
    run["params"] = to_json(params);
    if (!t.arcs) {
      failed = true;
      run["field_failures"] = failures_json(t.field);
      report["runs"].push_back(run);
      continue;
    }
    const ConfinementReport r = certify(*t.arcs, params, cfg.delta);
    emit_spectrum_files(cfg, dir, *t.arcs, params);
    run["report"] = to_json(r);
    report["runs"].push_back(run);
    violated = violated || r.strip == Verdict::Fail || r.hyperbola == Verdict::Fail || r.cross == Verdict::Fail;
    *ctx.out << "h=" << h << " B1=" << params.B1 << " C_h=" << params.C_h
             << " c_h=" << (params.c_h ? fmt_num(*params.c_h) : std::string("-")) << " strip=" << to_string(r.strip)
             << " hyperbola=" << to_string(r.hyperbola) << " cross=" << to_string(r.cross)
             << " max_cross_distance=" << r.max_cross_distance << "\n";
  }
  write_report(cfg, dir, report);
  if (failed) return kExitIntegration;
  return violated ? kExitInvariant : kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const CommandContext& ctx) {
  if (cfg.h_list.size() < 3) {
    *ctx.log << "sweep needs at least three values of h\n";
    return kExitConfig;
  }
  const fs::path dir = prepare_out_dir(cfg);
  const Enclosure enc = enclosure_inputs(cfg);
  std::ostringstream csv;
  csv << "h,max_cross_distance,B1,C_h,c_h,h0,confined\n";
  ordered_json report = report_header(cfg, "sweep");
  report["delta"] = cfg.delta;
  report["rows"] = ordered_json::array();
  bool failed = false, violated = false;
  for (double h : cfg.h_list) {
    const EnclosureParams params = enclosure_params(enc.norms, enc.flags, h);
    const Traced t = trace_at(cfg, h, ctx);
    if (!t.arcs) {
      failed = true;
      continue;
    }
    const ConfinementReport r = certify(*t.arcs, params, cfg.delta);
    violated = violated || r.cross == Verdict::Fail;
    csv << fmt_num(h) << ',' << fmt_num(r.max_cross_distance) << ',' << fmt_num(params.B1) << ','
        << fmt_num(params.C_h) << ',' << (params.c_h ? fmt_num(*params.c_h) : std::string()) << ','
        << (std::isfinite(r.h0_for_delta) ? fmt_num(r.h0_for_delta) : std::string("inf")) << ','
        << to_string(r.cross) << '\n';
    ordered_json row = to_json(params);
    row["report"] = to_json(r);
    report["rows"].push_back(row);
  }
  if (cfg.outputs.csv) write_file(dir / "sweep.csv", csv.str());
  write_report(cfg, dir, report);
  *ctx.out << csv.str();
  if (failed) return kExitIntegration;
  return violated ? kExitInvariant : kExitOk;
}

int cmd_oracle(const RunConfig& cfg, const CommandContext& ctx) {
  if (cfg.potential.kind() != PeriodicPotential::Kind::Constant) {
    *ctx.log << "oracle requires a constant potential\n";
    return kExitConfig;
  }
  const fs::path dir = prepare_out_dir(cfg);
  for (double h : cfg.h_list) {
    const ConstantModel model(cfg.potential.p0(), cfg.potential.q0(), h);
    std::ostringstream csv;
    csv << "h,re_z,im_z,re_delta,im_delta,member\n";
    for (int i = 0; i < cfg.nx; ++i) {
      for (int j = 0; j < cfg.ny; ++j) {
        const Window& w = cfg.window;
        const Complex z(w.re_min + (w.re_max - w.re_min) * i / (cfg.nx - 1),
                        w.im_min + (w.im_max - w.im_min) * j / (cfg.ny - 1));
        const Complex d = const_discriminant(model, z);
        csv << fmt_num(h) << ',' << fmt_num(z.real()) << ',' << fmt_num(z.imag()) << ',' << fmt_num(d.real()) << ','
            << fmt_num(d.imag()) << ',' << (const_spectrum_membership(model, z, cfg.tol.trace_tol) ? 1 : 0) << '\n';
      }
    }
    const std::string name = "oracle_h" + h_tag(h) + ".csv";
    write_file(dir / name, csv.str());
    if (!ctx.quiet) *ctx.log << "wrote " << (dir / name).string() << "\n";
  }
  return kExitOk;
}

int cmd_check(const RunConfig& cfg, const CommandContext& ctx) {
  const fs::path dir = prepare_out_dir(cfg);
  const Enclosure enc = enclosure_inputs(cfg);
  const bool constant = cfg.potential.kind() == PeriodicPotential::Kind::Constant;
  std::vector<CheckLine> lines;
  bool field_failed = false;
  const std::vector<Complex> grid = grid_samples(cfg.window, 10);

  for (double h : cfg.h_list) {
    const std::string at = " h=" + h_tag(h);

    double oracle_err = 0.0, det_err = 0.0, recip_err = 0.0;
    int skipped = 0;
    for (Complex z : grid) {
      const MonodromyResult m = integrate_monodromy(cfg.potential, z, h, cfg.integrator);
      const double scale = std::max(1.0, std::norm(m.M.frobenius()));
      det_err = std::max(det_err, m.det_defect / scale);
      // Eigenvalues of M from its own trace and determinant.
      const Complex tr = m.M.trace(), root = std::sqrt(tr * tr - 4.0 * m.M.det());
      const Complex e1 = 0.5 * (tr + root), e2 = 0.5 * (tr - root);
      recip_err = std::max(recip_err, std::abs(e1 * e2 - 1.0) / scale);
      if (constant) {
        try {
          const Mat2 ref = const_canonical_monodromy(ConstantModel(cfg.potential.p0(), cfg.potential.q0(), h), z);
          oracle_err = std::max(oracle_err, rel_frobenius(m.M, ref, ref));
        } catch (const DegenerateFrame&) {
          ++skipped;
        }
      }
    }
    if (constant)
      lines.push_back({"oracle monodromy" + at, oracle_err, 1e-8, oracle_err <= 1e-8,
                       skipped ? std::to_string(skipped) + " branch points skipped" : ""});
    lines.push_back({"det M defect" + at, det_err, 1e-10, det_err <= 1e-10, ""});
    lines.push_back({"multiplier reciprocity" + at, recip_err, 1e-10, recip_err <= 1e-10, ""});

    if (enc.flags.is_real || enc.flags.is_even || enc.flags.is_odd) {
      for (const auto& r : check_monodromy_symmetry(cfg.potential, enc.flags, h, window_samples(cfg.window, 20, 7),
                                                    cfg.integrator))
        lines.push_back({"monodromy " + to_string(r.relation) + at, r.max_defect, 1e-8, r.max_defect <= 1e-8, ""});
    }

    const Traced t = trace_at(cfg, h, ctx);
    if (!t.arcs) {
      field_failed = true;
      continue;
    }
    const SpectrumArcs& arcs = *t.arcs;
    lines.push_back({"arc vertex |Im Delta|" + at, arcs.stats.max_abs_im_delta, cfg.tol.trace_tol,
                     arcs.stats.max_abs_im_delta <= cfg.tol.trace_tol, ""});
    lines.push_back({"arc vertex ||rho|-1|" + at, arcs.stats.max_modulus_defect, 1e-6,
                     arcs.stats.max_modulus_defect <= 1e-6, ""});
    if (arcs.empty()) {
      lines.push_back({"spectrum nonempty" + at, 0.0, 0.0, false, "no spectrum inside the window"});
      continue;
    }
    if (enc.flags.is_real || enc.flags.is_even || enc.flags.is_odd) {
      const double thr = spectrum_symmetry_threshold(arcs);
      for (const auto& r : check_spectrum_symmetry(arcs, enc.flags))
        lines.push_back({"spectrum " + to_string(r.relation) + at, r.max_defect, thr, r.max_defect <= thr, ""});
    }

    const EnclosureParams params = enclosure_params(enc.norms, enc.flags, h);
    const ConfinementReport rep = certify(arcs, params, cfg.delta);
    lines.push_back({"strip violation" + at, rep.max_strip_violation, rep.tolerance, rep.strip == Verdict::Pass, ""});
    lines.push_back({"hyperbola violation" + at, rep.max_hyperbola_violation, rep.tolerance,
                     rep.hyperbola == Verdict::Pass, ""});

    const double clearance = 10.0 * std::max(arcs.cell_size.first, arcs.cell_size.second);
    double id_err = 0.0;
    int used = 0;
    for (Complex z : interior_points(arcs, clearance, 10)) {
      try {
        id_err = std::max(id_err, verify_imag_identity(cfg.potential, h, z, cfg.integrator).max_rel_err);
        ++used;
      } catch (const NotOnSpectrum&) {
      } catch (const DefectiveMonodromy&) {
      }
    }
    if (used > 0)
      lines.push_back({"Im z identity" + at, id_err, 1e-6, id_err <= 1e-6, std::to_string(used) + " points"});
  }

  print_table(*ctx.out, lines);
  if (cfg.outputs.json) {
    ordered_json report = report_header(cfg, "check");
    report["symmetries"] = flags_json(enc.flags);
    report["checks"] = ordered_json::array();
    for (const auto& l : lines)
      report["checks"].push_back(
          {{"name", l.name}, {"value", l.value}, {"threshold", l.threshold}, {"pass", l.pass}, {"note", l.note}});
    write_report(cfg, dir, report);
  }
  if (field_failed) return kExitIntegration;
  for (const auto& l : lines)
    if (!l.pass) return kExitInvariant;
  return kExitOk;
}

}  // namespace dirac
