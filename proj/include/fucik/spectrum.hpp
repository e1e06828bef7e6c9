#pragma once

#include "fucik/minimax.hpp"

namespace fucik {

/// One sample of the first nontrivial curve: the minimax level c at shift s,
/// giving the point (a, b) = (s + c, c) on the upper branch a >= b.
struct CurvePoint {
  double s;
  double c;
  double a;
  double b;
  double grad_residual;
};

struct SpectrumData {
  double lambda1;
  double lambda2;  // curve level at s = 0
  Exponent pe;
  Domain domain;
  std::vector<CurvePoint> curve;  // upper branch, ascending s starting at 0
  std::string config_hash;
  bool monotone_ok = true;            // strict decrease of c along the trace
  std::vector<std::string> warnings;  // per-sample failures, monotonicity flags
};

enum class RegionLabel {
  below_Cl1,
  between_Cl1_Cu1,
  between_Cu1_C2,
  above_C2,
  on_spectrum_band,
};

const char* to_string(RegionLabel label);

/// Region of an (a, b) query together with the symbolic critical-group
/// prediction attached to that region.
struct RegionPrediction {
  RegionLabel label;
  std::vector<std::string> groups;
  std::string note;
};

struct TraceOptions {
  MinimaxConfig minimax;
  bool warm_start = true;  // reuse each relaxed path as the next seed
  int workers = 1;         // used only when warm_start is off
};

/// Geometric default shift grid {0, l1/4, l1/2, l1, 2 l1, 5 l1}.
std::vector<double> default_s_grid(double lambda1);

/// Samples the first nontrivial curve at the given ascending shifts (first
/// one must be 0). Failures are recorded per sample; a non-monotone trace is
/// flagged, never silently accepted.
SpectrumData trace_curve(const EigenPair& eig, const std::vector<double>& s_values,
                         const TraceOptions& opts);

/// Piecewise-linear interpolation of c at shift s (monotone, no overshoot).
/// Throws when s is outside the traced range.
double interp_c(const SpectrumData& spec, double s);

/// Classifies an (a, b) point against the trivial lines and the traced curve.
/// Points within `band` of either are labeled on_spectrum_band and carry no
/// group claim. Queries needing the curve beyond the traced shift range are
/// refused with the shift that would have to be traced.
RegionPrediction classify(double a, double b, const SpectrumData& spec, double band);

/// Band default: 2% of lambda1.
double default_band(const SpectrumData& spec);

struct ProbeResult {
  bool stable;
  RegionLabel center_label;
  std::string detail;  // names the crossed boundary label when unstable
};

/// Classifies a ring of samples around (a, b); stable when every sample
/// shares the center label. Refused when the center sits on the band.
ProbeResult region_stability_probe(double a, double b, const SpectrumData& spec,
                                   double band, double radius, int samples = 16);

/// Rejection callback for the perturbed-energy builder: refuses pairs closer
/// than `band` to the trivial lines or the traced curve.
SpectrumGuard make_spectrum_guard(const SpectrumData& spec, double band);

}  // namespace fucik
