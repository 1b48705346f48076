#include "dirac/spectrum.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <thread>
#include <unordered_map>

namespace dirac {

namespace {

// Discriminant evaluation bound to one field's potential, h and integrator settings.
struct Evaluator {
  const DiscriminantField& field;
  Complex operator()(Complex z) const { return discriminant(field.potential, z, field.h, field.cfg); }
  Complex derivative(Complex z, double step) const {
    return ((*this)(z + step) - (*this)(z - step)) / (2.0 * step);
  }
};

double relative_im(Complex d) { return std::abs(d.imag()) / std::max(1.0, std::abs(d)); }

struct EdgePoint {
  Complex z{0.0};
  double u = 0.0;
  int band_target = 0;  // +-1 for clip points, 0 for marching-squares edge points
};

struct Segment {
  long a = 0, b = 0;
};

// Chains undirected segments over shared point ids into polylines. Closed loops repeat
// their first id at the end.
std::vector<std::vector<long>> chain_segments(const std::vector<Segment>& segs) {
  std::unordered_map<long, std::vector<size_t>> incident;
  for (size_t s = 0; s < segs.size(); ++s) {
    incident[segs[s].a].push_back(s);
    incident[segs[s].b].push_back(s);
  }
  std::vector<char> used(segs.size(), 0);
  std::vector<std::vector<long>> out;

  auto walk = [&](long start, size_t first_seg) {
    std::vector<long> line{start};
    long cur = start;
    size_t seg = first_seg;
    for (;;) {
      used[seg] = 1;
      const long next = segs[seg].a == cur ? segs[seg].b : segs[seg].a;
      line.push_back(next);
      cur = next;
      std::optional<size_t> follow;
      for (size_t cand : incident[cur])
        if (!used[cand]) {
          follow = cand;
          break;
        }
      if (!follow) break;
      seg = *follow;
    }
    out.push_back(std::move(line));
  };

  // Open chains first, started from degree-1 ends in deterministic segment order.
  for (size_t s = 0; s < segs.size(); ++s) {
    if (used[s]) continue;
    for (long end : {segs[s].a, segs[s].b}) {
      if (!used[s] && incident[end].size() == 1) walk(end, s);
    }
  }
  for (size_t s = 0; s < segs.size(); ++s)
    if (!used[s]) walk(segs[s].a, s);
  return out;
}

enum class Refined { Accepted, Rejected, Diverged };

struct RefineResult {
  Refined status = Refined::Diverged;
  Complex z{0.0};
  Complex delta{0.0};
  bool band_edge = false;
};

class Tracer {
 public:
  Tracer(const DiscriminantField& field, const TraceOptions& opts)
      : f_(field), opts_(opts), eval_{field}, dre_(field.dre()), dim_(field.dim()),
        diag_(std::hypot(dre_, dim_)), fd_step_(opts.fd_fraction * std::min(dre_, dim_)) {}

  SpectrumArcs run();

 private:
  void detect_degenerate_lines();
  std::pair<double, double> corner(int i, int j, int sx, int sy);
  void march();
  RefineResult refine(const EdgePoint& p) const;
  std::vector<Interval> scan_line(bool real_axis) const;
  double bisect_edge(double in, double out, bool real_axis) const;

  const DiscriminantField& f_;
  TraceOptions opts_;
  Evaluator eval_;
  double dre_, dim_, diag_, fd_step_;

  std::optional<int> deg_row_, deg_col_;
  std::map<std::tuple<int, int, int, int>, Complex> probe_cache_;

  std::unordered_map<long, EdgePoint> points_;
  std::vector<Segment> segments_;
  long next_clip_id_ = -1;
};

void Tracer::detect_degenerate_lines() {
  auto line_max = [&](bool row, int k) {
    double m = 0.0;
    const int n = row ? f_.nx : f_.ny;
    for (int t = 0; t < n; ++t) m = std::max(m, relative_im(row ? f_.at(t, k) : f_.at(k, t)));
    return m;
  };
  auto check = [&](bool row) -> std::optional<int> {
    const int n = row ? f_.ny : f_.nx;
    const double step = row ? dim_ : dre_;
    for (int k = 0; k < n; ++k) {
      const Complex z = row ? f_.node(0, k) : f_.node(k, 0);
      const double coord = row ? z.imag() : z.real();
      if (std::abs(coord) > 1e-9 * step) continue;
      if (line_max(row, k) >= opts_.trace_tol) return std::nullopt;
      double neighbour = 0.0;
      if (k > 0) neighbour = std::max(neighbour, line_max(row, k - 1));
      if (k + 1 < n) neighbour = std::max(neighbour, line_max(row, k + 1));
      if (neighbour >= opts_.trace_tol) return k;
      return std::nullopt;
    }
    return std::nullopt;
  };
  deg_row_ = check(true);
  deg_col_ = check(false);
}

// Im and Re of Delta seen from the cell on side (sx, sy) of node (i, j). Nodes on a degenerate
// axis line are probed a small offset into the cell, which resolves the side-dependent sign.
std::pair<double, double> Tracer::corner(int i, int j, int sx, int sy) {
  const bool on_row = deg_row_ && *deg_row_ == j;
  const bool on_col = deg_col_ && *deg_col_ == i;
  if (!on_row && !on_col) {
    const Complex d = f_.at(i, j);
    return {d.imag(), d.real()};
  }
  const auto key = std::make_tuple(i, j, on_col ? sx : 0, on_row ? sy : 0);
  auto it = probe_cache_.find(key);
  if (it == probe_cache_.end()) {
    const double eps = opts_.offset_fraction;
    const Complex z = f_.node(i, j) + Complex(on_col ? sx * eps * dre_ : 0.0, on_row ? sy * eps * dim_ : 0.0);
    it = probe_cache_.emplace(key, eval_(z)).first;
  }
  return {it->second.imag(), it->second.real()};
}

void Tracer::march() {
  const int ny = f_.ny;
  auto hedge = [&](int i, int j) { return 2L * (static_cast<long>(i) * ny + j); };
  auto vedge = [&](int i, int j) { return 2L * (static_cast<long>(i) * ny + j) + 1; };

  for (int i = 0; i + 1 < f_.nx; ++i) {
    for (int j = 0; j + 1 < f_.ny; ++j) {
      // Corners counterclockwise from the lower left; (sx, sy) points into the cell.
      const int ci[4] = {i, i + 1, i + 1, i};
      const int cj[4] = {j, j, j + 1, j + 1};
      const int sx[4] = {1, -1, -1, 1};
      const int sy[4] = {1, 1, -1, -1};
      double v[4], u[4];
      int mask = 0;
      for (int k = 0; k < 4; ++k) {
        std::tie(v[k], u[k]) = corner(ci[k], cj[k], sx[k], sy[k]);
        if (v[k] > 0.0) mask |= 1 << k;
      }
      if (mask == 0 || mask == 15) continue;

      // Edges: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c3-c2), 3 left (c0-c3).
      const int ea[4] = {0, 1, 3, 0};
      const int eb[4] = {1, 2, 2, 3};
      const long eid[4] = {hedge(i, j), vedge(i + 1, j), hedge(i, j + 1), vedge(i, j)};
      bool crossed[4];
      for (int e = 0; e < 4; ++e) {
        const int a = ea[e], b = eb[e];
        crossed[e] = ((mask >> a) & 1) != ((mask >> b) & 1);
        if (!crossed[e] || points_.count(eid[e])) continue;
        const double t = v[a] / (v[a] - v[b]);
        const Complex za = f_.node(ci[a], cj[a]), zb = f_.node(ci[b], cj[b]);
        points_[eid[e]] = {za + t * (zb - za), u[a] + t * (u[b] - u[a]), 0};
      }

      int n_crossed = 0;
      for (bool c : crossed) n_crossed += c ? 1 : 0;
      if (n_crossed == 2) {
        int first = -1, second = -1;
        for (int e = 0; e < 4; ++e)
          if (crossed[e]) (first < 0 ? first : second) = e;
        segments_.push_back({eid[first], eid[second]});
      } else if (n_crossed == 4) {
        // Saddle: resolve with the discriminant at the cell centre.
        const Complex centre = f_.node(i, j) + Complex(0.5 * dre_, 0.5 * dim_);
        const bool centre_pos = eval_(centre).imag() > 0.0;
        if (centre_pos == static_cast<bool>(mask & 1)) {
          // c0 and c2 connect through the centre; cut off c1 and c3.
          segments_.push_back({eid[0], eid[1]});
          segments_.push_back({eid[2], eid[3]});
        } else {
          segments_.push_back({eid[3], eid[0]});
          segments_.push_back({eid[1], eid[2]});
        }
      }
    }
  }
}

RefineResult Tracer::refine(const EdgePoint& p) const {
  RefineResult r;
  r.band_edge = p.band_target != 0;
  const double target = p.band_target;
  Complex z = p.z;
  Complex d = eval_(z);
  double prev_step = 0.0;
  double multiplicity = 1.0;
  for (int it = 0; it < opts_.max_newton; ++it) {
    if (!r.band_edge && std::abs(d.imag()) <= opts_.newton_tol * std::max(1.0, std::abs(d))) break;
    if (r.band_edge && std::abs(d - target) <= 1e-15 * std::max(1.0, std::abs(d))) break;
    const Complex dp = eval_.derivative(z, fd_step_);
    if (!(std::abs(dp) > 0.0) || !std::isfinite(std::abs(dp))) return r;
    // Interior vertices move so that Re Delta is stationary: dDelta = -i Im Delta.
    // Band edges where a gap closes are double roots of Delta - target; halving steps
    // reveal them and switch Newton to the multiplicity-two update.
    const Complex dz = r.band_edge ? -multiplicity * (d - target) / dp : -kI * d.imag() / dp;
    const double step = std::abs(dz);
    if (r.band_edge && multiplicity == 1.0 && prev_step > 0.0 && step > 0.3 * prev_step &&
        step < 0.7 * prev_step)
      multiplicity = 2.0;
    prev_step = step;
    z += dz;
    if (std::abs(z - p.z) > 2.0 * diag_) return r;
    d = eval_(z);
    if (step <= 1e-13 * (1.0 + std::abs(z))) break;
  }
  r.z = z;
  r.delta = d;
  if (!(std::abs(d.imag()) <= opts_.trace_tol)) return r;  // diverged or stalled

  const bool in_band = d.real() >= -1.0 - opts_.trace_tol && d.real() <= 1.0 + opts_.trace_tol;
  bool ok = in_band;
  if (ok && !r.band_edge) {
    const double mod = std::abs(std::abs(floquet_multipliers(d).first) - 1.0);
    ok = mod <= opts_.modulus_tol;
  }
  r.status = ok ? Refined::Accepted : Refined::Rejected;
  return r;
}

double Tracer::bisect_edge(double in, double out, bool real_axis) const {
  auto excess = [&](double s) {
    const Complex z = real_axis ? Complex(s, 0.0) : Complex(0.0, s);
    return std::abs(eval_(z).real()) - 1.0;
  };
  for (int it = 0; it < 60 && std::abs(out - in) > 1e-13 * (1.0 + std::abs(in)); ++it) {
    const double mid = 0.5 * (in + out);
    (excess(mid) <= 0.0 ? in : out) = mid;
  }
  return in;
}

std::vector<Interval> Tracer::scan_line(bool real_axis) const {
  const int n = real_axis ? f_.nx : f_.ny;
  const int k = real_axis ? *deg_row_ : *deg_col_;
  auto coord = [&](int t) { return real_axis ? f_.node(t, k).real() : f_.node(k, t).imag(); };
  auto inside = [&](int t) {
    const Complex d = real_axis ? f_.at(t, k) : f_.at(k, t);
    return std::abs(d.real()) <= 1.0;
  };
  const double step = real_axis ? dre_ : dim_;
  std::vector<Interval> bands;
  int t = 0;
  while (t < n) {
    if (!inside(t)) {
      ++t;
      continue;
    }
    int end = t;
    while (end + 1 < n && inside(end + 1)) ++end;
    const double lo = t == 0 ? coord(0) : bisect_edge(coord(t), coord(t - 1), real_axis);
    const double hi = end == n - 1 ? coord(n - 1) : bisect_edge(coord(end), coord(end + 1), real_axis);
    if (hi - lo >= opts_.offset_fraction * step) bands.push_back({lo, hi});
    t = end + 1;
  }
  return bands;
}

SpectrumArcs Tracer::run() {
  SpectrumArcs out;
  out.h = f_.h;
  out.window = f_.window;
  out.cell_size = {dre_, dim_};

  detect_degenerate_lines();
  march();
  out.stats.segments = static_cast<int>(segments_.size());

  for (const auto& line : chain_segments(segments_)) {
    std::vector<Complex> poly;
    poly.reserve(line.size());
    for (long id : line) poly.push_back(points_.at(id).z);
    out.contours.push_back(std::move(poly));
  }

  // Keep the part of each segment where the interpolated Re Delta lies in [-1, 1].
  std::vector<Segment> kept;
  for (const auto& s : segments_) {
    const EdgePoint& pa = points_.at(s.a);
    const EdgePoint& pb = points_.at(s.b);
    double t0 = 0.0, t1 = 1.0;
    const double du = pb.u - pa.u;
    int target0 = 0, target1 = 0;
    for (double bound : {-1.0, 1.0}) {
      const bool a_out = bound < 0 ? pa.u < bound : pa.u > bound;
      const bool b_out = bound < 0 ? pb.u < bound : pb.u > bound;
      if (a_out && b_out) {
        t0 = 1.0;
        t1 = 0.0;
      } else if (a_out) {
        const double t = (bound - pa.u) / du;
        if (t > t0) {
          t0 = t;
          target0 = static_cast<int>(bound);
        }
      } else if (b_out) {
        const double t = (bound - pa.u) / du;
        if (t < t1) {
          t1 = t;
          target1 = static_cast<int>(bound);
        }
      }
    }
    if (!(t1 - t0 > 1e-12)) continue;
    auto clip = [&](double t, int target) {
      const long id = next_clip_id_--;
      points_[id] = {pa.z + t * (pb.z - pa.z), pa.u + t * du, target};
      return id;
    };
    const long a = target0 ? clip(t0, target0) : s.a;
    const long b = target1 ? clip(t1, target1) : s.b;
    kept.push_back({a, b});
  }

  std::unordered_map<long, RefineResult> refined;
  auto refined_at = [&](long id) -> const RefineResult& {
    auto it = refined.find(id);
    if (it != refined.end()) return it->second;
    ++out.stats.vertices;
    const RefineResult r = refine(points_.at(id));
    switch (r.status) {
      case Refined::Accepted:
        ++out.stats.accepted;
        out.stats.max_abs_im_delta = std::max(out.stats.max_abs_im_delta, std::abs(r.delta.imag()));
        if (!r.band_edge)
          out.stats.max_modulus_defect = std::max(
              out.stats.max_modulus_defect, std::abs(std::abs(floquet_multipliers(r.delta).first) - 1.0));
        break;
      case Refined::Rejected:
        ++out.stats.rejected;
        break;
      case Refined::Diverged:
        ++out.stats.flagged;
        out.flagged.push_back({points_.at(id).z, "refinement diverged"});
        break;
    }
    return refined.emplace(id, r).first->second;
  };

  for (const auto& line : chain_segments(kept)) {
    Arc arc;
    auto flush = [&] {
      if (!arc.empty()) out.arcs.push_back(std::move(arc));
      arc.clear();
    };
    for (long id : line) {
      const RefineResult& r = refined_at(id);
      if (r.status != Refined::Accepted) {
        flush();
        continue;
      }
      if (!arc.empty() && std::abs(arc.back().z - r.z) <= 1e-12 * (1.0 + std::abs(r.z))) continue;
      arc.push_back({r.z, r.delta.real(), r.band_edge});
    }
    flush();
  }

  if (deg_row_) out.axis_bands = scan_line(true);
  if (deg_col_) out.imag_axis_bands = scan_line(false);
  return out;
}

// Newton iteration on g(z) = Delta(z) - target or Delta(z)^2 - 1.
RootResult newton_root(const PeriodicPotential& pot, double h, Complex seed, bool squared, Complex target,
                       const NewtonOptions& opts, const IntegratorConfig& cfg) {
  auto g = [&](Complex z) {
    const Complex d = discriminant(pot, z, h, cfg);
    return squared ? d * d - 1.0 : d - target;
  };
  RootResult r;
  r.seed = seed;
  Complex z = seed;
  Complex gz = g(z);
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iter; ++it) {
    r.iterations = it;
    const bool small = std::abs(gz) <= opts.tol;
    if (small && last_step <= 1e-12 * (1.0 + std::abs(z))) break;
    const Complex dg = (g(z + opts.fd_step) - g(z - opts.fd_step)) / (2.0 * opts.fd_step);
    if (!(std::abs(dg) > 0.0) || !std::isfinite(std::abs(dg))) break;
    Complex dz = -gz / dg;
    // Halving steps mean a double root (closed gap); take the multiplicity-two step.
    const double ratio = std::abs(dz) / last_step;
    if (ratio > 0.3 && ratio < 0.7) dz *= 2.0;
    const Complex gn = g(z + dz);
    if (small && !(std::abs(gn) < std::abs(gz))) break;
    last_step = std::abs(dz);
    z += dz;
    gz = gn;
    r.iterations = it + 1;
    if (last_step <= 1e-15 * (1.0 + std::abs(z))) break;
  }
  r.root = z;
  r.residual = std::abs(gz);
  r.ok = std::isfinite(r.residual) && r.residual <= opts.tol;
  return r;
}

}  // namespace

std::vector<Complex> SpectrumArcs::points() const {
  std::vector<Complex> pts;
  for (const auto& arc : arcs)
    for (const auto& v : arc) pts.push_back(v.z);
  auto sample = [&](const Interval& band, double step, bool real_axis) {
    const int n = std::max(1, static_cast<int>(std::ceil(band.length() / step)));
    for (int k = 0; k <= n; ++k) {
      const double s = band.lo + band.length() * k / n;
      pts.push_back(real_axis ? Complex(s, 0.0) : Complex(0.0, s));
    }
  };
  for (const auto& b : axis_bands) sample(b, cell_size.first, true);
  for (const auto& b : imag_axis_bands) sample(b, cell_size.second, false);
  return pts;
}

DiscriminantField discriminant_field(const PeriodicPotential& pot, double h, const Window& window, int nx,
                                     int ny, const IntegratorConfig& cfg, unsigned threads) {
  if (window.degenerate()) throw WindowDegenerate("discriminant_field: window is degenerate");
  if (nx < 8 || ny < 8) throw std::invalid_argument("discriminant_field: grid must be at least 8 x 8");
  if (!(h > 0.0)) throw std::invalid_argument("discriminant_field: h must be positive");
  cfg.validate();

  DiscriminantField field;
  field.window = window;
  field.nx = nx;
  field.ny = ny;
  field.h = h;
  field.potential = pot;
  field.cfg = cfg;
  field.values.assign(static_cast<size_t>(nx) * ny, Complex{0.0});

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const size_t total = field.values.size();
  threads = static_cast<unsigned>(std::min<size_t>(threads, total));
  std::vector<std::vector<std::pair<int, int>>> failures(threads);

  auto work = [&](unsigned w) {
    for (size_t idx = w; idx < total; idx += threads) {
      const int i = static_cast<int>(idx / ny), j = static_cast<int>(idx % ny);
      try {
        field.values[idx] = discriminant(pot, field.node(i, j), h, cfg);
      } catch (const Error&) {
        field.values[idx] = Complex(std::nan(""), std::nan(""));
        failures[w].emplace_back(i, j);
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures) field.failures.insert(field.failures.end(), f.begin(), f.end());
  std::sort(field.failures.begin(), field.failures.end());
  return field;
}

SpectrumArcs trace_spectrum(const DiscriminantField& field, const TraceOptions& opts) {
  if (!field.failures.empty()) throw std::invalid_argument("trace_spectrum: field has integration failures");
  return Tracer(field, opts).run();
}

SpectrumArcs trace_spectrum(const DiscriminantField& field, double trace_tol) {
  TraceOptions opts;
  opts.trace_tol = trace_tol;
  return trace_spectrum(field, opts);
}

std::vector<RootResult> band_edges(const PeriodicPotential& pot, double h, const std::vector<Complex>& seeds,
                                   const NewtonOptions& opts, const IntegratorConfig& cfg) {
  if (seeds.empty()) throw std::invalid_argument("band_edges: no seeds");
  std::vector<RootResult> out;
  for (Complex seed : seeds) {
    RootResult r = newton_root(pot, h, seed, true, 0.0, opts, cfg);
    if (r.ok && std::any_of(out.begin(), out.end(), [&](const RootResult& o) {
          return o.ok && std::abs(o.root - r.root) <= opts.dedup_radius;
        }))
      continue;
    out.push_back(r);
  }
  return out;
}

std::vector<BlochEigenvalue> bloch_eigenvalues(const PeriodicPotential& pot, double h, double xi,
                                               const std::vector<Complex>& seeds, const NewtonOptions& opts,
                                               const IntegratorConfig& cfg, std::vector<RootResult>* failures) {
  if (!(xi > -kPi && xi <= kPi)) throw std::invalid_argument("bloch_eigenvalues: xi must lie in (-pi, pi]");
  const Complex target = std::cos(xi);
  std::vector<BlochEigenvalue> out;
  for (Complex seed : seeds) {
    const RootResult r = newton_root(pot, h, seed, false, target, opts, cfg);
    if (!r.ok) {
      if (failures) failures->push_back(r);
      continue;
    }
    if (std::any_of(out.begin(), out.end(),
                    [&](const BlochEigenvalue& b) { return std::abs(b.z - r.root) <= opts.dedup_radius; }))
      continue;
    out.push_back({r.root, xi, r.residual});
  }
  return out;
}

BlochEigenfunction bloch_eigenfunction(const PeriodicPotential& pot, double h, Complex z,
                                       const IntegratorConfig& cfg, int n_samples, double tol) {
  if (n_samples < 2) throw std::invalid_argument("bloch_eigenfunction: need at least 2 samples");
  const MonodromyResult mono = integrate_monodromy(pot, z, h, cfg);
  const Complex d = mono.delta;
  if (std::abs(d.imag()) > tol || std::abs(d.real()) > 1.0 + tol)
    throw NotOnSpectrum("bloch_eigenfunction: Delta(z) is not in [-1, 1]");
  const auto [rho1, rho2] = mono.multipliers;
  if (std::abs(rho1 - rho2) < 1e-8 || std::abs(d * d - 1.0) < 1e-12) throw DefectiveMonodromy("bloch_eigenfunction: coincident multipliers");

  BlochEigenfunction out;
  out.rho = rho1;
  out.xi = std::arg(rho1);

  // Eigenvector of M for rho1: the better conditioned of the two adjugate columns.
  const Mat2& M = mono.M;
  const Vec2 c1{M.b, rho1 - M.a}, c2{rho1 - M.d, M.c};
  Vec2 v = c1.norm() >= c2.norm() ? c1 : c2;
  v = Complex(1.0 / v.norm()) * v;

  const std::int64_t per = std::max<std::int64_t>(1, (mono.steps_used + n_samples - 1) / n_samples);
  std::vector<Vec2> psi = propagate_samples(pot, z, h, v, n_samples, per);

  double norm2 = 0.0;
  for (int j = 0; j <= n_samples; ++j) {
    const double w = (j == 0 || j == n_samples) ? 0.5 : 1.0;
    norm2 += w * (std::norm(psi[j].first) + std::norm(psi[j].second));
  }
  norm2 /= n_samples;
  const Complex scale = 1.0 / std::sqrt(norm2);
  for (auto& p : psi) p = scale * p;

  const Complex phase = std::polar(1.0, out.xi);
  out.periodicity_defect = (psi.back() - phase * psi.front()).norm() / psi.front().norm();
  out.x.resize(psi.size());
  for (int j = 0; j <= n_samples; ++j) out.x[j] = static_cast<double>(j) / n_samples;
  out.psi = std::move(psi);
  return out;
}

ImagIdentity verify_imag_identity(const PeriodicPotential& pot, double h, Complex z, const IntegratorConfig& cfg,
                                  int n_samples) {
  const BlochEigenfunction ef = bloch_eigenfunction(pot, h, z, cfg, n_samples);
  Complex q_term{0.0}, p_term{0.0};
  double n1 = 0.0, n2 = 0.0;
  const int n = n_samples;
  for (int j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 0.5 : 1.0;
    const auto [p, q] = pot.eval(ef.x[j]);
    const Complex psi1 = ef.psi[j].first, psi2 = ef.psi[j].second;
    q_term += w * q * std::conj(psi1) * psi2;
    p_term += w * p * psi1 * std::conj(psi2);
    n1 += w * std::norm(psi1);
    n2 += w * std::norm(psi2);
  }
  ImagIdentity out;
  out.lhs = z.imag();
  // A component that vanishes identically also kills its numerator.
  out.rhs1 = n1 > 0.0 ? -q_term.real() / n1 : 0.0;
  out.rhs2 = n2 > 0.0 ? p_term.real() / n2 : 0.0;
  out.max_rel_err = std::max(std::abs(out.rhs1 - out.lhs), std::abs(out.rhs2 - out.lhs)) /
                    std::max(1.0, std::abs(out.lhs));
  return out;
}

}  // namespace dirac
