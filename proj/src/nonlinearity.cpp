#include "fucik/nonlinearity.hpp"

#include <cmath>

namespace fucik {

Nonlinearity::Nonlinearity(FucikParams zero_slopes, FucikParams infty_slopes, double p,
                           double t_small, double t_large)
    : zero_slopes_(zero_slopes),
      infty_slopes_(infty_slopes),
      p_(p),
      t_small_(t_small),
      t_large_(t_large) {
  if (!(p > 1.0)) throw Error("Nonlinearity: p must exceed 1");
  if (!(0.0 < t_small && t_small < t_large))
    throw Error("Nonlinearity: need 0 < t_small < t_large");
  // smoothstep(x) = 3x^2 - 2x^3 with x = (r - ts)/w, expanded in powers of r
  const double ts = t_small_, w = t_large_ - t_small_;
  const double w2 = w * w, w3 = w2 * w;
  blend_poly_[0] = 3.0 * ts * ts / w2 + 2.0 * ts * ts * ts / w3;
  blend_poly_[1] = -6.0 * ts / w2 - 6.0 * ts * ts / w3;
  blend_poly_[2] = 3.0 / w2 + 6.0 * ts / w3;
  blend_poly_[3] = -2.0 / w3;
}

bool Nonlinearity::pure() const {
  return zero_slopes_.a == infty_slopes_.a && zero_slopes_.b == infty_slopes_.b;
}

double Nonlinearity::slope(double r, double s0, double s1) const {
  if (r <= t_small_) return s0;
  if (r >= t_large_) return s1;
  const double x = (r - t_small_) / (t_large_ - t_small_);
  return s0 + (s1 - s0) * (3.0 - 2.0 * x) * x * x;
}

double Nonlinearity::primitive(double r, double s0, double s1) const {
  if (r <= 0.0) return 0.0;
  const double head = s0 * std::pow(std::min(r, t_small_), p_) / p_;
  if (r <= t_small_) return head;
  auto blend_int = [&](double q) {
    // ∫ smoothstep(x(ρ)) ρ^{p-1} dρ antiderivative evaluated at ρ = q
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) acc += blend_poly_[k] * std::pow(q, p_ + k) / (p_ + k);
    return acc;
  };
  const double rb = std::min(r, t_large_);
  double val = head + s0 * (std::pow(rb, p_) - std::pow(t_small_, p_)) / p_ +
               (s1 - s0) * (blend_int(rb) - blend_int(t_small_));
  if (r > t_large_) val += s1 * (std::pow(r, p_) - std::pow(t_large_, p_)) / p_;
  return val;
}

double Nonlinearity::f(double t) const {
  if (t == 0.0) return 0.0;
  const double r = std::fabs(t);
  if (t > 0.0) return slope(r, zero_slopes_.a, infty_slopes_.a) * std::pow(r, p_ - 1.0);
  return -slope(r, zero_slopes_.b, infty_slopes_.b) * std::pow(r, p_ - 1.0);
}

double Nonlinearity::F(double t) const {
  if (t == 0.0) return 0.0;
  if (t > 0.0) return primitive(t, zero_slopes_.a, infty_slopes_.a);
  return primitive(-t, zero_slopes_.b, infty_slopes_.b);
}

Nonlinearity make_model_nonlinearity(FucikParams zero_slopes, FucikParams infty_slopes,
                                     const Exponent& pe, double t_small, double t_large) {
  return Nonlinearity(zero_slopes, infty_slopes, pe.p, t_small, t_large);
}

}  // namespace fucik
