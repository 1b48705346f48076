#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dirac/transfer.hpp"

namespace dirac {

// Discriminant values on a uniform nx x ny grid over a window, for one h.
struct DiscriminantField {
  Window window;
  int nx = 0, ny = 0;
  double h = 1.0;
  std::vector<Complex> values;                 // values[i * ny + j] at node(i, j)
  std::vector<std::pair<int, int>> failures;   // nodes where integration threw
  PeriodicPotential potential = PeriodicPotential::constant(0.0, 0.0);
  IntegratorConfig cfg;

  double dre() const { return (window.re_max - window.re_min) / (nx - 1); }
  double dim() const { return (window.im_max - window.im_min) / (ny - 1); }
  Complex node(int i, int j) const {
    return {window.re_min + i * dre(), window.im_min + j * dim()};
  }
  Complex at(int i, int j) const { return values[static_cast<size_t>(i) * ny + j]; }
};

struct ArcVertex {
  Complex z{0.0};
  double delta_re = 0.0;
  bool band_edge = false;  // refined onto Delta = +-1 rather than Im Delta = 0
};

using Arc = std::vector<ArcVertex>;

struct FlaggedVertex {
  Complex z{0.0};
  std::string reason;
};

struct TraceStats {
  int segments = 0;         // marching-squares segments before filtering
  int vertices = 0;         // vertices submitted to refinement
  int accepted = 0;
  int rejected = 0;         // refined onto Im Delta = 0 but off the stability set
  int flagged = 0;          // refinement diverged
  double max_abs_im_delta = 0.0;
  double max_modulus_defect = 0.0;  // max ||rho_1| - 1| over accepted interior vertices
};

// Polyline approximation of the conditional stability set {z : Delta(z) in [-1, 1]}.
struct SpectrumArcs {
  std::vector<Arc> arcs;
  double h = 1.0;
  std::vector<Interval> axis_bands;       // real-axis bands (re z intervals)
  std::vector<Interval> imag_axis_bands;  // imaginary-axis bands (im z intervals)
  std::pair<double, double> cell_size{0.0, 0.0};
  Window window;
  std::vector<std::vector<Complex>> contours;  // unrefined Im Delta = 0 polylines
  std::vector<FlaggedVertex> flagged;
  TraceStats stats;

  // Arc vertices plus axis-band points sampled at the grid spacing.
  std::vector<Complex> points() const;
  bool empty() const { return arcs.empty() && axis_bands.empty() && imag_axis_bands.empty(); }
};

struct TraceOptions {
  double trace_tol = 1e-6;
  double newton_tol = 1e-10;
  int max_newton = 20;
  double fd_fraction = 0.01;     // finite-difference step as a fraction of the cell
  double modulus_tol = 1e-6;     // ||rho_1| - 1| acceptance for interior vertices
  double offset_fraction = 1e-3; // probe offset into a cell next to a degenerate axis line
};

struct BlochEigenvalue {
  Complex z{0.0};
  double xi = 0.0;
  double residual = 0.0;  // |Delta(z) - cos xi|
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 50;
  double fd_step = 1e-5;
  double dedup_radius = 1e-6;
};

// Outcome of one Newton seed. ok == false records NoConvergence.
struct RootResult {
  Complex seed{0.0};
  Complex root{0.0};
  double residual = 0.0;
  int iterations = 0;
  bool ok = false;
};

struct BlochEigenfunction {
  double xi = 0.0;
  Complex rho{1.0};
  std::vector<double> x;
  std::vector<Vec2> psi;      // normalized in L2(0,1)^2
  double periodicity_defect = 0.0;  // |Psi(1) - e^{i xi} Psi(0)| / |Psi(0)|
};

struct ImagIdentity {
  double lhs = 0.0;   // Im z
  double rhs1 = 0.0;  // -Re<psi1, q psi2> / <psi1, psi1>
  double rhs2 = 0.0;  // Re<p psi1, psi2> / <psi2, psi2>
  double max_rel_err = 0.0;
};

inline constexpr int kDefaultBlochSamples = 256;

// Throws WindowDegenerate for an empty window, std::invalid_argument for nx or ny < 8.
// threads = 0 uses the hardware concurrency.
DiscriminantField discriminant_field(const PeriodicPotential& pot, double h, const Window& window,
                                     int nx, int ny, const IntegratorConfig& cfg = {}, unsigned threads = 0);

SpectrumArcs trace_spectrum(const DiscriminantField& field, const TraceOptions& opts);
SpectrumArcs trace_spectrum(const DiscriminantField& field, double trace_tol = 1e-6);

// Complex Newton for Delta^2 = 1 from each seed; converged roots deduplicated.
std::vector<RootResult> band_edges(const PeriodicPotential& pot, double h, const std::vector<Complex>& seeds,
                                   const NewtonOptions& opts = {}, const IntegratorConfig& cfg = {});

// Roots of Delta(z) = cos(xi), the eigenvalues of the Bloch operator at frequency xi.
std::vector<BlochEigenvalue> bloch_eigenvalues(const PeriodicPotential& pot, double h, double xi,
                                               const std::vector<Complex>& seeds, const NewtonOptions& opts = {},
                                               const IntegratorConfig& cfg = {},
                                               std::vector<RootResult>* failures = nullptr);

BlochEigenfunction bloch_eigenfunction(const PeriodicPotential& pot, double h, Complex z,
                                       const IntegratorConfig& cfg = {}, int n_samples = kDefaultBlochSamples,
                                       double tol = 1e-6);

ImagIdentity verify_imag_identity(const PeriodicPotential& pot, double h, Complex z,
                                  const IntegratorConfig& cfg = {}, int n_samples = kDefaultBlochSamples);

}  // namespace dirac
