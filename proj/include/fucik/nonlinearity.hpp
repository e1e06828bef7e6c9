#pragma once

#include "fucik/domain.hpp"

namespace fucik {

/// Coefficient pair (a, b) of the asymmetric reaction a (t+)^{p-1} - b (t-)^{p-1}.
struct FucikParams {
  double a = 0.0;
  double b = 0.0;
};

/// A t-only reaction f with prescribed power-law behaviour at 0 and at
/// infinity: exactly a0 (t+)^{p-1} - b0 (t-)^{p-1} for |t| <= t_small,
/// exactly a (t+)^{p-1} - b (t-)^{p-1} for |t| >= t_large, and a C^1
/// smoothstep blend of the two slope pairs in between. The primitive
/// F(t) = ∫_0^t f is assembled in closed form on every piece.
class Nonlinearity {
 public:
  Nonlinearity(FucikParams zero_slopes, FucikParams infty_slopes, double p,
               double t_small, double t_large);

  double f(double t) const;
  double F(double t) const;

  const FucikParams& zero_slopes() const { return zero_slopes_; }
  const FucikParams& infty_slopes() const { return infty_slopes_; }
  double p() const { return p_; }
  double t_small() const { return t_small_; }
  double t_large() const { return t_large_; }
  bool pure() const;  // zero and infinity slope pairs coincide

 private:
  // slope(r) = s0 + (s1-s0)*smoothstep((r-t_small)/(t_large-t_small)), r = |t|
  double slope(double r, double s0, double s1) const;
  // ∫_0^r slope(ρ, s0, s1) ρ^{p-1} dρ via the polynomial expansion of the blend
  double primitive(double r, double s0, double s1) const;

  FucikParams zero_slopes_, infty_slopes_;
  double p_, t_small_, t_large_;
  double blend_poly_[4];  // smoothstep((r-ts)/w) = Σ blend_poly_[k] r^k on the blend window
};

/// Factory matching the model-problem contract; validates 0 < t_small < t_large.
Nonlinearity make_model_nonlinearity(FucikParams zero_slopes, FucikParams infty_slopes,
                                     const Exponent& pe, double t_small = 0.1,
                                     double t_large = 1.0);

}  // namespace fucik
