#include "fucik/json_io.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace fucik {

void to_json(json& j, const Domain& d) {
  j = json{{"left", d.left}, {"right", d.right}, {"n_interior", d.n_interior}};
}

void from_json(const json& j, Domain& d) {
  d = Domain(j.at("left").get<double>(), j.at("right").get<double>(),
             j.at("n_interior").get<int>());
}

void to_json(json& j, const Exponent& pe) {
  j = json{{"p", pe.p}, {"eps_reg", pe.eps_reg}};
}

void from_json(const json& j, Exponent& pe) {
  pe = Exponent(j.at("p").get<double>(), j.at("eps_reg").get<double>());
}

void to_json(json& j, const Field& f) {
  j = json{{"domain", f.domain}, {"values", f.values}};
}

Field field_from_json(const json& j) {
  return Field(j.at("domain").get<Domain>(), j.at("values").get<std::vector<double>>());
}

void to_json(json& j, const FucikParams& ab) { j = json{{"a", ab.a}, {"b", ab.b}}; }

void from_json(const json& j, FucikParams& ab) {
  ab.a = j.at("a").get<double>();
  ab.b = j.at("b").get<double>();
}

json nonlinearity_to_json(const Nonlinearity& f) {
  return json{{"p", f.p()},
              {"a0", f.zero_slopes().a},
              {"b0", f.zero_slopes().b},
              {"a", f.infty_slopes().a},
              {"b", f.infty_slopes().b},
              {"t_small", f.t_small()},
              {"t_large", f.t_large()},
              {"blend", "smoothstep"}};
}

Nonlinearity nonlinearity_from_json(const json& j) {
  if (j.value("blend", "smoothstep") != std::string("smoothstep"))
    throw Error("nonlinearity_from_json: unknown blend profile");
  return Nonlinearity({j.at("a0").get<double>(), j.at("b0").get<double>()},
                      {j.at("a").get<double>(), j.at("b").get<double>()},
                      j.at("p").get<double>(), j.at("t_small").get<double>(),
                      j.at("t_large").get<double>());
}

json perturbation_to_json(const PerturbationSpec& pert) {
  return json{{"rho", pert.rho},
              {"R", pert.R},
              {"cutoff_inner", pert.cutoff_inner.name},
              {"cutoff_outer", pert.cutoff_outer.name},
              {"norm_used", pert.norm_used}};
}

PerturbationSpec perturbation_from_json(const json& j) {
  PerturbationSpec pert;
  pert.rho = j.at("rho").get<double>();
  pert.R = j.at("R").get<double>();
  if (j.value("cutoff_inner", "smoothstep-inner") != std::string("smoothstep-inner") ||
      j.value("cutoff_outer", "smoothstep-outer") != std::string("smoothstep-outer"))
    throw Error("perturbation_from_json: unknown cutoff profile");
  pert.norm_used = j.value("norm_used", "w1p-seminorm");
  if (!(pert.rho > 0.0 && pert.R > pert.rho))
    throw Error("perturbation_from_json: need 0 < rho < R");
  return pert;
}

json spectrum_to_json(const SpectrumData& spec) {
  json curve = json::array();
  for (const CurvePoint& cp : spec.curve)
    curve.push_back(json{{"s", cp.s},
                         {"c", cp.c},
                         {"a", cp.a},
                         {"b", cp.b},
                         {"residual", cp.grad_residual}});
  return json{{"version", 1},
              {"lambda1", spec.lambda1},
              {"lambda2", spec.lambda2},
              {"exponent", spec.pe},
              {"domain", spec.domain},
              {"curve", curve},
              {"config_hash", spec.config_hash},
              {"monotone_ok", spec.monotone_ok},
              {"warnings", spec.warnings}};
}

SpectrumData spectrum_from_json(const json& j) {
  if (j.value("version", 0) != 1) throw Error("spectrum_from_json: unsupported version");
  SpectrumData spec{j.at("lambda1").get<double>(),
                    j.at("lambda2").get<double>(),
                    j.at("exponent").get<Exponent>(),
                    j.at("domain").get<Domain>(),
                    {},
                    j.value("config_hash", ""),
                    j.value("monotone_ok", true),
                    j.value("warnings", std::vector<std::string>{})};
  for (const json& cp : j.at("curve"))
    spec.curve.push_back({cp.at("s").get<double>(), cp.at("c").get<double>(),
                          cp.at("a").get<double>(), cp.at("b").get<double>(),
                          cp.value("residual", 0.0)});
  return spec;
}

json region_to_json(const RegionPrediction& r) {
  return json{{"label", to_string(r.label)}, {"groups", r.groups}, {"note", r.note}};
}

json minimax_summary_json(const MinimaxResult& res) {
  return json{{"s", res.s},
              {"c", res.c},
              {"a", res.s + res.c},
              {"b", res.c},
              {"grad_norm_at_max", res.grad_norm_at_max},
              {"iterations", res.iterations},
              {"argmax_index", res.argmax_index},
              {"plateau_beads", res.plateau_beads},
              {"converged", res.converged},
              {"c_above_lambda1", res.c_above_lambda1},
              {"message", res.message}};
}

json path_to_json(const Path& path) {
  json beads = json::array();
  for (const SpherePoint& b : path.beads) beads.push_back(b.field.values);
  json j{{"beads", beads}};
  if (!path.beads.empty()) {
    j["domain"] = path.beads.front().field.domain;
    j["exponent"] = path.beads.front().pe;
  }
  return j;
}

Path path_from_json(const json& j) {
  const Domain dom = j.at("domain").get<Domain>();
  const Exponent pe = j.at("exponent").get<Exponent>();
  Path path;
  for (const json& vals : j.at("beads"))
    path.beads.push_back(SpherePoint(Field(dom, vals.get<std::vector<double>>()), pe));
  return path;
}

json solve_report_json(const SolveReport& report) {
  json sols = json::array();
  for (const Solution& s : report.solutions)
    sols.push_back(json{{"residual", s.residual},
                        {"sign", to_string(s.sign)},
                        {"energy", s.energy},
                        {"scenarios", s.scenarios},
                        {"origin", s.origin},
                        {"max_abs", linf(s.u)}});
  json j{{"scenarios", report.scenarios},
         {"solutions", sols},
         {"distances", report.distances},
         {"notes", report.notes},
         {"all_required_found", report.all_required_found}};
  if (report.perturbation) j["perturbation"] = perturbation_to_json(*report.perturbation);
  return j;
}

std::string config_hash(const json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json provenance_json(const Domain& d, const Exponent& pe, const json& config) {
  return json{{"mesh", d}, {"exponent", pe}, {"config_hash", config_hash(config)},
              {"version", kVersion}};
}

namespace {
std::ostream& csv_num(std::ostream& os, double v) {
  os << std::setprecision(17) << v;
  return os;
}
}  // namespace

void write_field_csv(std::ostream& os, const Field& f) {
  os << "x,u\n";
  csv_num(os, f.domain.left) << ",0\n";
  for (int i = 0; i < f.size(); ++i) {
    csv_num(os, f.domain.node(i)) << ",";
    csv_num(os, f.values[i]) << "\n";
  }
  csv_num(os, f.domain.right) << ",0\n";
}

void write_curve_csv(std::ostream& os, const SpectrumData& spec) {
  os << "s,c,a,b,residual\n";
  for (const CurvePoint& cp : spec.curve) {
    csv_num(os, cp.s) << ",";
    csv_num(os, cp.c) << ",";
    csv_num(os, cp.a) << ",";
    csv_num(os, cp.b) << ",";
    csv_num(os, cp.grad_residual) << "\n";
  }
  // mirrored branch across the diagonal
  for (const CurvePoint& cp : spec.curve) {
    csv_num(os, cp.s) << ",";
    csv_num(os, cp.c) << ",";
    csv_num(os, cp.b) << ",";
    csv_num(os, cp.a) << ",";
    csv_num(os, cp.grad_residual) << "\n";
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& log) {
  os << "sweep,max_value,descent_max,grad_norm_at_max,reparam_defect\n";
  for (const SweepRecord& r : log) {
    os << r.sweep << ",";
    csv_num(os, r.max_value) << ",";
    csv_num(os, r.descent_max) << ",";
    csv_num(os, r.grad_norm_at_max) << ",";
    csv_num(os, r.reparam_defect) << "\n";
  }
}

void write_path_csv(std::ostream& os, const Path& path, const Shift& s) {
  os << "bead,t,value,grad_norm\n";
  const int m = path.size();
  for (int k = 0; k < m; ++k) {
    const SpherePoint& w = path.beads[k];
    const Field gt = tangent_project(w, shifted_energy_grad(w.field, s, w.pe));
    os << k << ",";
    csv_num(os, m > 1 ? static_cast<double>(k) / (m - 1) : 0.0) << ",";
    csv_num(os, sphere_energy(w, s)) << ",";
    csv_num(os, norm2(gt)) << "\n";
  }
}

void write_trace_csv(std::ostream& os, const std::vector<std::pair<double, double>>& trace) {
  os << "iteration,value,grad_norm\n";
  for (size_t k = 0; k < trace.size(); ++k) {
    os << k << ",";
    csv_num(os, trace[k].first) << ",";
    csv_num(os, trace[k].second) << "\n";
  }
}

}  // namespace fucik
