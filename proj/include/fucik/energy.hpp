#pragma once

#include <functional>
#include <optional>
#include <string>

#include "fucik/domain.hpp"
#include "fucik/nonlinearity.hpp"
#include "fucik/sphere.hpp"

namespace fucik {

/// Shift parameter of the constrained functional; the mirrored half of the
/// spectrum is produced by symmetry downstream, so s >= 0 always.
struct Shift {
  double s = 0.0;
  Shift() = default;
  explicit Shift(double s_) : s(s_) {
    if (!(s >= 0.0)) throw Error("Shift: s must be >= 0");
  }
};

/// Uniform (value, gradient) interface over the functionals so that the
/// descent/Newton machinery and the loggers need a single entry point.
struct FunctionalHandle {
  std::string tag;
  std::function<double(const Field&)> value;
  std::function<Field(const Field&)> gradient;
  // optional exact second derivative (tridiagonal in 1D); solvers fall back
  // to finite differences when absent
  std::function<TriDiag(const Field&)> hessian;
};

/// Tridiagonal Hessian of ∫ |u|^p; the |t|^{p-2} kernel is smoothed at the
/// origin for p < 2 (second derivatives only, residuals stay exact).
TriDiag abs_p_hessian(const Field& u, const Exponent& pe);

// --- asymmetric quadratic-type functional I --------------------------------

/// ∫ |u'|^p - a (u+)^p - b (u-)^p
double fucik_energy(const Field& u, const FucikParams& ab, const Exponent& pe);

/// Nodal gradient of fucik_energy; its zero set is the discrete solution set
/// of the asymmetric eigenproblem -(|u'|^{p-2}u')' = a (u+)^{p-1} - b (u-)^{p-1}.
Field fucik_energy_grad(const Field& u, const FucikParams& ab, const Exponent& pe);

// --- shifted constrained functional -----------------------------------------

/// ∫ |u'|^p - s (u+)^p (the functional whose sphere restriction is minimaxed)
double shifted_energy(const Field& u, const Shift& s, const Exponent& pe);
Field shifted_energy_grad(const Field& u, const Shift& s, const Exponent& pe);

/// Restriction of shifted_energy to the unit sphere; the SpherePoint type
/// enforces the constraint at entry.
double sphere_energy(const SpherePoint& w, const Shift& s);

// --- reaction functionals ----------------------------------------------------

/// ∫ |u'|^p - p F(u)
double bvp_energy(const Field& u, const Nonlinearity& f, const Exponent& pe);
Field bvp_energy_grad(const Field& u, const Nonlinearity& f, const Exponent& pe);

enum class SignRestriction { positive, negative };

/// Same with the reaction truncated to one sign of t.
double signed_energy(const Field& u, const Nonlinearity& f, SignRestriction sign,
                     const Exponent& pe);
Field signed_energy_grad(const Field& u, const Nonlinearity& f, SignRestriction sign,
                         const Exponent& pe);

FunctionalHandle fucik_handle(const FucikParams& ab, const Exponent& pe);
FunctionalHandle shifted_handle(const Shift& s, const Exponent& pe);
FunctionalHandle bvp_handle(const Nonlinearity& f, const Exponent& pe);
FunctionalHandle signed_handle(const Nonlinearity& f, SignRestriction sign,
                               const Exponent& pe);

// --- perturbed functional ----------------------------------------------------

/// C^1 scalar profile on [0,∞) with values in [0,1]; value/derivative pairs.
struct CutoffProfile {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// Plateau 1 on [0,1/2] falling smoothly to 0 at 1.
CutoffProfile inner_cutoff();
/// Plateau 0 on [0,1] rising smoothly to 1 at 2.
CutoffProfile outer_cutoff();

/// Radii and profiles of the norm-window surgery. The norm entering the
/// cutoffs is the discrete W^{1,p} seminorm.
struct PerturbationSpec {
  double rho = 0.0;
  double R = 0.0;
  CutoffProfile cutoff_inner = inner_cutoff();
  CutoffProfile cutoff_outer = outer_cutoff();
  std::string norm_used = "w1p-seminorm";
};

/// Optional rejection callback: returns a diagnostic when the given point is
/// too close to the computed spectrum (supplied by the spectrum module).
using SpectrumGuard = std::function<std::optional<std::string>(const FucikParams&)>;

/// Functional equal to the (zero_slopes) asymmetric functional inside the
/// ball of radius rho/2, to the reaction functional on the annulus
/// rho <= ||u|| <= R, and to the (infty_slopes) asymmetric functional outside
/// radius 2R, blended C^1 in between. The two slope-mismatch terms are never
/// materialized on their own: they are formed as differences against the
/// reaction functional.
FunctionalHandle build_perturbed_energy(const Nonlinearity& f, const FucikParams& ab0,
                                        const FucikParams& ab, const PerturbationSpec& pert,
                                        const Exponent& pe,
                                        const SpectrumGuard& guard = nullptr);

}  // namespace fucik
