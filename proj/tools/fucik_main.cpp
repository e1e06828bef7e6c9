// Command-line front end: eig / mpass / curve / classify / solve / check.
// Flags override --config file values, which override built-in defaults.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "fucik/invariants.hpp"
#include "fucik/json_io.hpp"

namespace {

using fucik::json;

json load_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw fucik::Error(std::string("cannot open config file ") + argv[i + 1]);
      json j;
      in >> j;
      return j;
    }
  return json::object();
}

template <class T>
void cfg_override(const CLI::App& app, const json& cfg, const std::string& flag,
                  const std::string& key, T& var) {
  const auto* opt = app.get_option_no_throw(flag);
  if (cfg.contains(key) && (!opt || opt->count() == 0)) var = cfg.at(key).get<T>();
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw fucik::Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

template <class WriteFn>
void emit_csv(const std::string& path, WriteFn&& write) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw fucik::Error("cannot write " + path);
  write(out);
}

int default_workers() {
  if (const char* env = std::getenv("FUCIK_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

struct CommonArgs {
  double p = 2.0;
  double eps_reg = -1.0;
  double left = 0.0;
  double right = 1.0;
  int nodes = 200;
  int workers = default_workers();
  std::uint64_t seed = 12345;
};

void add_common(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--p", c.p, "exponent p > 1");
  cmd->add_option("--eps-reg", c.eps_reg, "gradient smoothing (default: 0 for p>=2, 1e-8 otherwise)");
  cmd->add_option("--left", c.left, "left endpoint");
  cmd->add_option("--right", c.right, "right endpoint");
  cmd->add_option("--nodes", c.nodes, "interior node count");
  cmd->add_option("--workers", c.workers, "worker threads (env FUCIK_WORKERS)");
  cmd->add_option("--seed", c.seed, "seed for restart randomness");
  cmd->add_option("--config", "JSON config file (flags take precedence)")
      ->expected(1);
}

void apply_common(const CLI::App& cmd, const json& cfg, CommonArgs& c) {
  cfg_override(cmd, cfg, "--p", "p", c.p);
  cfg_override(cmd, cfg, "--eps-reg", "eps_reg", c.eps_reg);
  cfg_override(cmd, cfg, "--left", "left", c.left);
  cfg_override(cmd, cfg, "--right", "right", c.right);
  cfg_override(cmd, cfg, "--nodes", "nodes", c.nodes);
  cfg_override(cmd, cfg, "--workers", "workers", c.workers);
  cfg_override(cmd, cfg, "--seed", "seed", c.seed);
}

json common_provenance(const CommonArgs& c, const json& extra) {
  const fucik::Domain d(c.left, c.right, c.nodes);
  const fucik::Exponent pe(c.p, c.eps_reg);
  json cfg = extra;
  cfg["p"] = c.p;
  cfg["nodes"] = c.nodes;
  cfg["left"] = c.left;
  cfg["right"] = c.right;
  cfg["seed"] = c.seed;
  return fucik::provenance_json(d, pe, cfg);
}

fucik::SpectrumData load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fucik::Error("cannot open spectrum file " + path);
  json j;
  in >> j;
  return fucik::spectrum_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D p-Laplacian asymmetric-spectrum toolkit"};
  app.require_subcommand(1);

  json cfg;
  try {
    cfg = load_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  // --- eig ------------------------------------------------------------------
  CommonArgs eig_c;
  double eig_tol = 1e-8;
  int eig_beads = 41;
  std::string eig_out, eig_phi_csv, eig_trace_csv;
  CLI::App* eig_cmd = app.add_subcommand("eig", "first eigenpair and second eigenvalue");
  add_common(eig_cmd, eig_c);
  eig_cmd->add_option("--tol", eig_tol, "descent gradient tolerance");
  eig_cmd->add_option("--beads", eig_beads, "beads for the second-eigenvalue pass");
  eig_cmd->add_option("--out", eig_out, "JSON output path (default stdout)");
  eig_cmd->add_option("--phi-csv", eig_phi_csv, "CSV dump of the eigenfunction");
  eig_cmd->add_option("--trace-csv", eig_trace_csv, "CSV descent trace (iteration, value, grad norm)");

  // --- mpass ----------------------------------------------------------------
  CommonArgs mp_c;
  double mp_s = 0.0, mp_tol = 1e-7, mp_grad_tol = 1e-6;
  int mp_beads = 41;
  std::string mp_out, mp_sweep_csv, mp_path_csv, mp_path_json;
  CLI::App* mp_cmd = app.add_subcommand("mpass", "minimax level at one shift");
  add_common(mp_cmd, mp_c);
  mp_cmd->add_option("--s", mp_s, "shift s >= 0")->required();
  mp_cmd->add_option("--beads", mp_beads, "bead count");
  mp_cmd->add_option("--tol", mp_tol, "stagnation tolerance");
  mp_cmd->add_option("--grad-tol", mp_grad_tol, "gradient tolerance at the max bead");
  mp_cmd->add_option("--out", mp_out, "JSON output path (default stdout)");
  mp_cmd->add_option("--sweep-csv", mp_sweep_csv, "CSV sweep log");
  mp_cmd->add_option("--path-csv", mp_path_csv, "CSV of the relaxed path");
  mp_cmd->add_option("--path-json", mp_path_json, "JSON bead dump for replay");

  // --- curve ----------------------------------------------------------------
  CommonArgs cv_c;
  double cv_smax = -1.0;
  std::vector<double> cv_grid;
  int cv_beads = 41;
  bool cv_no_warm = false;
  std::string cv_out, cv_spectrum_out;
  CLI::App* cv_cmd = app.add_subcommand("curve", "trace the first nontrivial curve");
  add_common(cv_cmd, cv_c);
  cv_cmd->add_option("--s-max", cv_smax, "largest shift (default 5*lambda1)");
  cv_cmd->add_option("--s-grid", cv_grid, "explicit ascending shift grid starting at 0");
  cv_cmd->add_option("--beads", cv_beads, "bead count");
  cv_cmd->add_flag("--no-warm-start", cv_no_warm, "cold-start every shift (parallelizable)");
  cv_cmd->add_option("--out", cv_out, "CSV output path (default stdout)");
  cv_cmd->add_option("--spectrum-out", cv_spectrum_out, "versioned spectrum JSON path");

  // --- classify --------------------------------------------------------------
  double cl_a = 0.0, cl_b = 0.0, cl_band = -1.0, cl_probe = 0.0;
  std::string cl_spectrum, cl_out;
  CLI::App* cl_cmd = app.add_subcommand("classify", "region of an (a,b) point");
  cl_cmd->add_option("--a", cl_a)->required();
  cl_cmd->add_option("--b", cl_b)->required();
  cl_cmd->add_option("--spectrum", cl_spectrum, "spectrum JSON from `curve`")->required();
  cl_cmd->add_option("--band", cl_band, "rejection band (default 2% of lambda1)");
  cl_cmd->add_option("--probe-radius", cl_probe, "also run the stability probe at this radius");
  cl_cmd->add_option("--out", cl_out, "JSON output path (default stdout)");
  cl_cmd->add_option("--config", "JSON config file")->expected(1);

  // --- solve -----------------------------------------------------------------
  CommonArgs sv_c;
  double sv_a0 = 0.0, sv_b0 = 0.0, sv_a = 0.0, sv_b = 0.0;
  double sv_tsmall = 0.1, sv_tlarge = 1.0, sv_tol = 1e-9, sv_band = -1.0;
  int sv_restarts = 20, sv_beads = 41;
  std::string sv_spectrum, sv_out, sv_prefix = "solution";
  CLI::App* sv_cmd = app.add_subcommand("solve", "multiplicity experiment for one slope pair");
  add_common(sv_cmd, sv_c);
  sv_cmd->add_option("--a0", sv_a0)->required();
  sv_cmd->add_option("--b0", sv_b0)->required();
  sv_cmd->add_option("--a", sv_a)->required();
  sv_cmd->add_option("--b", sv_b)->required();
  sv_cmd->add_option("--t-small", sv_tsmall, "exact zero-slope range");
  sv_cmd->add_option("--t-large", sv_tlarge, "exact infinity-slope range");
  sv_cmd->add_option("--tol", sv_tol, "residual target");
  sv_cmd->add_option("--band", sv_band, "spectrum rejection band");
  sv_cmd->add_option("--restarts", sv_restarts, "random restarts");
  sv_cmd->add_option("--beads", sv_beads, "beads for saddle searches");
  sv_cmd->add_option("--spectrum", sv_spectrum, "spectrum JSON from `curve`")->required();
  sv_cmd->add_option("--out", sv_out, "JSON report path (default stdout)");
  sv_cmd->add_option("--out-prefix", sv_prefix, "CSV dump prefix per solution");

  // --- check -----------------------------------------------------------------
  CommonArgs ck_c;
  ck_c.nodes = 50;
  CLI::App* ck_cmd = app.add_subcommand("check", "run the invariant suite");
  add_common(ck_cmd, ck_c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (eig_cmd->parsed()) {
      apply_common(*eig_cmd, cfg, eig_c);
      cfg_override(*eig_cmd, cfg, "--tol", "tol", eig_tol);
      cfg_override(*eig_cmd, cfg, "--beads", "beads", eig_beads);
      const fucik::Domain d(eig_c.left, eig_c.right, eig_c.nodes);
      const fucik::Exponent pe(eig_c.p, eig_c.eps_reg);
      fucik::EigenOptions opts;
      opts.tol = eig_tol;
      const fucik::EigenPair eig = fucik::first_eigenpair(d, pe, opts);
      if (!eig.converged) {
        emit(json{{"error", "eigen solver did not converge: " + eig.message},
                  {"lambda1_best", eig.lambda},
                  {"residual", eig.residual}},
             eig_out);
        return 2;
      }
      fucik::MinimaxConfig mcfg;
      mcfg.beads = eig_beads;
      mcfg.workers = eig_c.workers;
      const fucik::MinimaxResult mm = fucik::mountain_pass(fucik::Shift(0.0), eig, mcfg);
      json out{{"lambda1", eig.lambda},
               {"lambda2", mm.c},
               {"residuals", json{{"lambda1", eig.residual}, {"lambda2", mm.grad_norm_at_max}}},
               {"iterations", json{{"eigen", eig.iterations}, {"minimax_sweeps", mm.iterations}}},
               {"lambda2_converged", mm.converged},
               {"provenance", common_provenance(eig_c, json{{"cmd", "eig"}, {"tol", eig_tol}})}};
      emit(out, eig_out);
      emit_csv(eig_phi_csv, [&](std::ostream& os) { fucik::write_field_csv(os, eig.phi.field); });
      if (!eig_trace_csv.empty()) {
        std::vector<std::pair<double, double>> trace;
        fucik::DescentOptions dopts;
        dopts.tol = eig_tol;
        dopts.trace = &trace;
        const fucik::StiffnessPreconditioner K(d);
        fucik::sphere_minimize(fucik::shifted_handle(fucik::Shift(0.0), pe),
                               fucik::normalize(fucik::interpolate(d,
                                   [&](double x) { return (x - d.left) * (d.right - x); }), pe),
                               dopts, &K);
        emit_csv(eig_trace_csv, [&](std::ostream& os) { fucik::write_trace_csv(os, trace); });
      }
      return mm.converged ? 0 : 2;
    }

    if (mp_cmd->parsed()) {
      apply_common(*mp_cmd, cfg, mp_c);
      cfg_override(*mp_cmd, cfg, "--beads", "beads", mp_beads);
      cfg_override(*mp_cmd, cfg, "--tol", "tol", mp_tol);
      cfg_override(*mp_cmd, cfg, "--grad-tol", "grad_tol", mp_grad_tol);
      const fucik::Domain d(mp_c.left, mp_c.right, mp_c.nodes);
      const fucik::Exponent pe(mp_c.p, mp_c.eps_reg);
      const fucik::EigenPair eig = fucik::first_eigenpair(d, pe);
      if (!eig.converged) {
        emit(json{{"error", "eigen solver did not converge: " + eig.message}}, mp_out);
        return 2;
      }
      fucik::MinimaxConfig mcfg;
      mcfg.beads = mp_beads;
      mcfg.tol = mp_tol;
      mcfg.grad_tol = mp_grad_tol;
      mcfg.workers = mp_c.workers;
      const fucik::MinimaxResult mm = fucik::mountain_pass(fucik::Shift(mp_s), eig, mcfg);
      json out = fucik::minimax_summary_json(mm);
      out["lambda1"] = eig.lambda;
      out["fucik_residual"] = fucik::fucik_residual(mm, fucik::Shift(mp_s));
      out["provenance"] = common_provenance(
          mp_c, json{{"cmd", "mpass"}, {"s", mp_s}, {"beads", mp_beads}});
      emit(out, mp_out);
      emit_csv(mp_sweep_csv, [&](std::ostream& os) { fucik::write_sweep_csv(os, mm.log); });
      emit_csv(mp_path_csv,
               [&](std::ostream& os) { fucik::write_path_csv(os, mm.path, fucik::Shift(mp_s)); });
      if (!mp_path_json.empty()) emit(fucik::path_to_json(mm.path), mp_path_json);
      return mm.converged ? 0 : 2;
    }

    if (cv_cmd->parsed()) {
      apply_common(*cv_cmd, cfg, cv_c);
      cfg_override(*cv_cmd, cfg, "--s-max", "s_max", cv_smax);
      cfg_override(*cv_cmd, cfg, "--beads", "beads", cv_beads);
      const fucik::Domain d(cv_c.left, cv_c.right, cv_c.nodes);
      const fucik::Exponent pe(cv_c.p, cv_c.eps_reg);
      const fucik::EigenPair eig = fucik::first_eigenpair(d, pe);
      if (!eig.converged) {
        std::cerr << "error: eigen solver did not converge: " << eig.message << "\n";
        return 2;
      }
      std::vector<double> grid = cv_grid;
      if (grid.empty()) {
        grid = fucik::default_s_grid(eig.lambda);
        const double smax = cv_smax > 0.0 ? cv_smax : grid.back();
        std::erase_if(grid, [&](double s) { return s > smax; });
        if (grid.back() < smax) grid.push_back(smax);
      }
      fucik::TraceOptions topts;
      topts.minimax.beads = cv_beads;
      topts.minimax.workers = 1;
      topts.warm_start = !cv_no_warm;
      topts.workers = cv_c.workers;
      const fucik::SpectrumData spec = fucik::trace_curve(eig, grid, topts);
      if (cv_out.empty())
        fucik::write_curve_csv(std::cout, spec);
      else
        emit_csv(cv_out, [&](std::ostream& os) { fucik::write_curve_csv(os, spec); });
      if (!cv_spectrum_out.empty()) {
        json j = fucik::spectrum_to_json(spec);
        j["provenance"] = common_provenance(
            cv_c, json{{"cmd", "curve"}, {"grid", grid}, {"beads", cv_beads}});
        emit(j, cv_spectrum_out);
      }
      return spec.warnings.empty() ? 0 : 2;
    }

    if (cl_cmd->parsed()) {
      cfg_override(*cl_cmd, cfg, "--band", "band", cl_band);
      const fucik::SpectrumData spec = load_spectrum(cl_spectrum);
      const double band = cl_band > 0.0 ? cl_band : fucik::default_band(spec);
      const fucik::RegionPrediction r = fucik::classify(cl_a, cl_b, spec, band);
      json out = fucik::region_to_json(r);
      out["a"] = cl_a;
      out["b"] = cl_b;
      out["band"] = band;
      out["provenance"] = fucik::provenance_json(
          spec.domain, spec.pe,
          json{{"cmd", "classify"}, {"a", cl_a}, {"b", cl_b}, {"band", band},
               {"spectrum_hash", spec.config_hash}});
      if (cl_probe > 0.0) {
        const fucik::ProbeResult probe =
            fucik::region_stability_probe(cl_a, cl_b, spec, band, cl_probe);
        out["probe"] = json{{"stable", probe.stable}, {"detail", probe.detail}};
      }
      emit(out, cl_out);
      return 0;
    }

    if (sv_cmd->parsed()) {
      apply_common(*sv_cmd, cfg, sv_c);
      cfg_override(*sv_cmd, cfg, "--tol", "tol", sv_tol);
      cfg_override(*sv_cmd, cfg, "--restarts", "restarts", sv_restarts);
      cfg_override(*sv_cmd, cfg, "--beads", "beads", sv_beads);
      const fucik::Domain d(sv_c.left, sv_c.right, sv_c.nodes);
      const fucik::Exponent pe(sv_c.p, sv_c.eps_reg);
      const fucik::SpectrumData spec = load_spectrum(sv_spectrum);
      if (spec.domain.n_interior != d.n_interior || spec.pe.p != pe.p)
        std::cerr << "warning: spectrum file was traced on a different mesh or exponent\n";
      const fucik::EigenPair eig = fucik::first_eigenpair(d, pe);
      if (!eig.converged) {
        emit(json{{"error", "eigen solver did not converge: " + eig.message}}, sv_out);
        return 2;
      }
      fucik::BvpConfig bcfg;
      bcfg.tol = sv_tol;
      bcfg.restarts = sv_restarts;
      bcfg.t_small = sv_tsmall;
      bcfg.t_large = sv_tlarge;
      bcfg.band = sv_band;
      bcfg.seed = sv_c.seed;
      bcfg.workers = sv_c.workers;
      bcfg.path_cfg.beads = sv_beads;
      bcfg.path_cfg.workers = sv_c.workers;
      const fucik::SolveReport report = fucik::multiplicity_experiment(
          {sv_a0, sv_b0}, {sv_a, sv_b}, spec, eig, bcfg);
      json out = fucik::solve_report_json(report);
      out["provenance"] = common_provenance(
          sv_c, json{{"cmd", "solve"}, {"a0", sv_a0}, {"b0", sv_b0}, {"a", sv_a},
                     {"b", sv_b}, {"tol", sv_tol}, {"restarts", sv_restarts}});
      emit(out, sv_out);
      for (size_t k = 0; k < report.solutions.size(); ++k)
        emit_csv(sv_prefix + "_" + std::to_string(k) + ".csv", [&](std::ostream& os) {
          fucik::write_field_csv(os, report.solutions[k].u);
        });
      return report.all_required_found ? 0 : 3;
    }

    if (ck_cmd->parsed()) {
      apply_common(*ck_cmd, cfg, ck_c);
      const fucik::Domain d(ck_c.left, ck_c.right, ck_c.nodes);
      const fucik::Exponent pe(ck_c.p, ck_c.eps_reg);
      const auto rows = fucik::run_invariant_checks(d, pe, ck_c.seed);
      bool all = true;
      for (const auto& row : rows) {
        all = all && row.pass;
        std::cout << (row.pass ? "[PASS] " : "[FAIL] ") << row.name;
        if (!row.detail.empty()) std::cout << "  (" << row.detail << ")";
        std::cout << "\n";
      }
      std::cout << (all ? "check: all invariants hold\n" : "check: FAILURES present\n");
      return all ? 0 : 3;
    }
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    return 2;
  }
  return 1;
}
