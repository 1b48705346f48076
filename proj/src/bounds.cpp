#include "dirac/bounds.hpp"

#include <algorithm>
#include <limits>

namespace dirac {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::NotApplicable:
      return "NA";
  }
  return "NA";
}

EnclosureParams enclosure_params(const PotentialNorms& norms, const SymmetryFlags& flags, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("enclosure_params: h must be positive");
  EnclosureParams p;
  p.h = h;
  p.B1 = std::sqrt(norms.sup_p * norms.sup_q);
  p.C_h = 0.5 * h * (norms.sup_dp + norms.sup_dq) + 0.25 * norms.sup_pq_defect;
  const double geo = std::sqrt(norms.sup_dp * norms.sup_dq);
  p.c0 = 0.5 * geo;
  p.pq_real = flags.pq_real;
  if (flags.pq_real) p.c_h = 0.5 * h * geo;
  return p;
}

bool in_lambda(Complex z, const EnclosureParams& params) {
  const double im = std::abs(z.imag());
  return im <= params.B1 && im * std::abs(z.real()) <= params.hyperbola();
}

double cross_distance(Complex z, double B1) {
  const double im = std::abs(z.imag());
  const double to_segment = std::hypot(z.real(), std::max(0.0, im - B1));
  return std::min(im, to_segment);
}

double h_threshold(double delta, double c0) {
  if (c0 == 0.0) return std::numeric_limits<double>::infinity();
  return delta * delta / (2.0 * c0);
}

ConfinementReport certify(const SpectrumArcs& arcs, const EnclosureParams& params, double delta, double tol) {
  if (std::abs(arcs.h - params.h) > 1e-12 * std::max(1.0, params.h))
    throw MismatchedH("certify: arcs and enclosure parameters use different h");
  ConfinementReport r;
  r.delta = delta;
  r.tolerance = tol;
  r.h0_for_delta = h_threshold(delta, params.c0);
  const double hyper = params.hyperbola();
  for (Complex z : arcs.points()) {
    ++r.n_points;
    const double scale = 1.0 + std::norm(z);
    const double im = std::abs(z.imag());
    r.max_strip_violation = std::max(r.max_strip_violation, std::max(0.0, im - params.B1) / scale);
    r.max_hyperbola_violation =
        std::max(r.max_hyperbola_violation, std::max(0.0, im * std::abs(z.real()) - hyper) / scale);
    r.max_cross_distance = std::max(r.max_cross_distance, cross_distance(z, params.B1));
  }
  r.strip = r.max_strip_violation <= tol ? Verdict::Pass : Verdict::Fail;
  r.hyperbola = r.max_hyperbola_violation <= tol ? Verdict::Pass : Verdict::Fail;
  if (params.pq_real && params.h < r.h0_for_delta) r.cross = r.max_cross_distance <= delta ? Verdict::Pass : Verdict::Fail;
  return r;
}

EnclosureCurves enclosure_curves(const EnclosureParams& params, const Window& w, int n) {
  EnclosureCurves c;
  for (double s : {-1.0, 1.0}) {
    const double y = s * params.B1;
    if (y >= w.im_min && y <= w.im_max) c.strip.push_back({{w.re_min, y}, {w.re_max, y}});
  }
  const double C = params.hyperbola();
  if (C > 0.0) {
    // |x y| = C, one branch per quadrant, sampled uniformly in x.
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0}) {
        std::vector<Complex> branch;
        const double xmax = sx > 0 ? w.re_max : -w.re_min;
        if (xmax <= 0.0) continue;
        const double ymax = sy > 0 ? w.im_max : -w.im_min;
        if (ymax <= 0.0) continue;
        const double xmin = C / ymax;
        if (xmin >= xmax) continue;
        for (int k = 0; k <= n; ++k) {
          const double x = xmin + (xmax - xmin) * k / n;
          branch.push_back({sx * x, sy * C / x});
        }
        c.hyperbola.push_back(std::move(branch));
      }
  }
  c.cross.push_back({{w.re_min, 0.0}, {w.re_max, 0.0}});
  c.cross.push_back({{0.0, std::max(-params.B1, w.im_min)}, {0.0, std::min(params.B1, w.im_max)}});
  return c;
}

}  // namespace dirac
