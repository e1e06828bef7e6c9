#include "fucik/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace fucik {

namespace {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

const char* to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::below_Cl1: return "below_Cl1";
    case RegionLabel::between_Cl1_Cu1: return "between_Cl1_Cu1";
    case RegionLabel::between_Cu1_C2: return "between_Cu1_C2";
    case RegionLabel::above_C2: return "above_C2";
    case RegionLabel::on_spectrum_band: return "on_spectrum_band";
  }
  return "?";
}

std::vector<double> default_s_grid(double lambda1) {
  return {0.0, 0.25 * lambda1, 0.5 * lambda1, lambda1, 2.0 * lambda1, 5.0 * lambda1};
}

SpectrumData trace_curve(const EigenPair& eig, const std::vector<double>& s_values,
                         const TraceOptions& opts) {
  if (s_values.empty() || s_values.front() != 0.0)
    throw Error("trace_curve: shift grid must start at 0");
  for (size_t k = 1; k < s_values.size(); ++k)
    if (!(s_values[k] > s_values[k - 1]))
      throw Error("trace_curve: shift grid must be strictly ascending");

  const int ns = static_cast<int>(s_values.size());
  std::vector<std::optional<MinimaxResult>> results(ns);

  if (opts.warm_start) {
    const Path* seed = nullptr;
    for (int k = 0; k < ns; ++k) {
      results[k] = mountain_pass(Shift(s_values[k]), eig, opts.minimax, seed);
      if (results[k]->converged) seed = &results[k]->path;
    }
  } else {
    parallel_for(ns, opts.workers, [&](int k) {
      results[k] = mountain_pass(Shift(s_values[k]), eig, opts.minimax, nullptr);
    });
  }

  std::ostringstream prov;
  prov << "p=" << eig.pe.p << ";eps=" << eig.pe.eps_reg << ";dom=[" << eig.phi.field.domain.left
       << "," << eig.phi.field.domain.right << "];n=" << eig.phi.field.domain.n_interior
       << ";beads=" << opts.minimax.beads << ";grid=";
  for (double s : s_values) prov << s << ",";

  SpectrumData spec{eig.lambda,
                    0.0,
                    eig.pe,
                    eig.phi.field.domain,
                    {},
                    fnv1a_hex(prov.str()),
                    true,
                    {}};

  for (int k = 0; k < ns; ++k) {
    const MinimaxResult& r = *results[k];
    if (!r.converged) {
      spec.warnings.push_back("s=" + std::to_string(s_values[k]) +
                              ": minimax failed: " + r.message);
      continue;
    }
    spec.curve.push_back(
        {r.s, r.c, r.s + r.c, r.c, fucik_residual(r, Shift(r.s))});
  }
  if (spec.curve.empty() || spec.curve.front().s != 0.0)
    throw Error("trace_curve: the s = 0 sample failed; no usable curve");
  spec.lambda2 = spec.curve.front().c;

  for (size_t k = 1; k < spec.curve.size(); ++k) {
    if (!(spec.curve[k].c < spec.curve[k - 1].c + 1e-9)) {
      spec.monotone_ok = false;
      spec.warnings.push_back("monotonicity violation between s=" +
                              std::to_string(spec.curve[k - 1].s) + " and s=" +
                              std::to_string(spec.curve[k].s));
    }
  }
  return spec;
}

double interp_c(const SpectrumData& spec, double s) {
  if (spec.curve.empty()) throw Error("interp_c: empty curve");
  const double s_max = spec.curve.back().s;
  if (s < spec.curve.front().s - 1e-12 || s > s_max + 1e-12)
    throw Error("interp_c: shift " + std::to_string(s) +
                " outside the traced range [0, " + std::to_string(s_max) +
                "]; trace the curve further");
  s = std::clamp(s, spec.curve.front().s, s_max);
  for (size_t k = 1; k < spec.curve.size(); ++k) {
    if (s <= spec.curve[k].s) {
      const auto& a = spec.curve[k - 1];
      const auto& b = spec.curve[k];
      const double t = (s - a.s) / (b.s - a.s);
      return a.c + t * (b.c - a.c);
    }
  }
  return spec.curve.back().c;
}

double default_band(const SpectrumData& spec) { return 0.02 * spec.lambda1; }

namespace {

std::vector<std::string> groups_for(RegionLabel label) {
  switch (label) {
    case RegionLabel::below_Cl1: return {"C_q = δ_{q0}ℤ"};
    case RegionLabel::between_Cl1_Cu1: return {"C_q = 0 ∀q"};
    case RegionLabel::between_Cu1_C2: return {"C_q = δ_{q1}ℤ"};
    case RegionLabel::above_C2: return {"C_0 = C_1 = 0", "C_q (q ≥ 2) not determined"};
    case RegionLabel::on_spectrum_band: return {};
  }
  return {};
}

}  // namespace

RegionPrediction classify(double a, double b, const SpectrumData& spec, double band) {
  if (!(band > 0.0)) throw Error("classify: band must be positive");
  const double l1 = spec.lambda1;

  if (std::fabs(a - l1) < band || std::fabs(b - l1) < band)
    return {RegionLabel::on_spectrum_band, {},
            "within the rejection band of a trivial spectrum line"};

  if (a < l1 && b < l1)
    return {RegionLabel::below_Cl1, groups_for(RegionLabel::below_Cl1), ""};
  if ((a > l1) != (b > l1))
    return {RegionLabel::between_Cl1_Cu1, groups_for(RegionLabel::between_Cl1_Cu1), ""};

  // both coordinates above the first eigenvalue: compare against the curve
  const double s = std::fabs(a - b);
  const double lo = std::min(a, b);
  const double c_at = interp_c(spec, s);  // throws beyond the traced range
  if (std::fabs(lo - c_at) < band)
    return {RegionLabel::on_spectrum_band, {},
            "within the rejection band of the first nontrivial curve"};
  if (lo < c_at)
    return {RegionLabel::between_Cu1_C2, groups_for(RegionLabel::between_Cu1_C2), ""};
  return {RegionLabel::above_C2, groups_for(RegionLabel::above_C2), ""};
}

ProbeResult region_stability_probe(double a, double b, const SpectrumData& spec,
                                   double band, double radius, int samples) {
  const RegionPrediction center = classify(a, b, spec, band);
  if (center.label == RegionLabel::on_spectrum_band)
    return {false, center.label,
            "probe refused: center lies on the spectrum rejection band"};
  const double pi = std::acos(-1.0);
  for (int j = 0; j < samples; ++j) {
    const double ang = 2.0 * pi * j / samples;
    const double qa = a + radius * std::cos(ang);
    const double qb = b + radius * std::sin(ang);
    RegionLabel lab;
    try {
      lab = classify(qa, qb, spec, band).label;
    } catch (const Error& e) {
      return {false, center.label,
              std::string("probe sample could not be classified: ") + e.what()};
    }
    if (lab != center.label)
      return {false, center.label,
              std::string("crossed into ") + to_string(lab) + " at sample angle " +
                  std::to_string(ang)};
  }
  return {true, center.label, ""};
}

SpectrumGuard make_spectrum_guard(const SpectrumData& spec, double band) {
  return [spec, band](const FucikParams& ab) -> std::optional<std::string> {
    const double l1 = spec.lambda1;
    if (std::fabs(ab.a - l1) < band || std::fabs(ab.b - l1) < band)
      return "(" + std::to_string(ab.a) + ", " + std::to_string(ab.b) +
             ") is within " + std::to_string(band) + " of a trivial spectrum line";
    if (ab.a > l1 && ab.b > l1) {
      const double s = std::fabs(ab.a - ab.b);
      if (!spec.curve.empty() && s <= spec.curve.back().s) {
        const double c_at = interp_c(spec, s);
        if (std::fabs(std::min(ab.a, ab.b) - c_at) < band)
          return "(" + std::to_string(ab.a) + ", " + std::to_string(ab.b) +
                 ") is within " + std::to_string(band) +
                 " of the first nontrivial curve";
      }
    }
    return std::nullopt;
  };
}

}  // namespace fucik
