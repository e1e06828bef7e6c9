#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fucik/invariants.hpp"
#include "fucik/json_io.hpp"

namespace py = pybind11;
using namespace fucik;

PYBIND11_MODULE(_core, m) {
  m.doc() = "1D p-Laplacian asymmetric-spectrum toolkit";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "FucikError");

  py::class_<Domain>(m, "Domain")
      .def(py::init<double, double, int>(), py::arg("left"), py::arg("right"),
           py::arg("n_interior"))
      .def_readonly("left", &Domain::left)
      .def_readonly("right", &Domain::right)
      .def_readonly("n_interior", &Domain::n_interior)
      .def_property_readonly("h", &Domain::h)
      .def("node", &Domain::node);

  py::class_<Exponent>(m, "Exponent")
      .def(py::init<double, double>(), py::arg("p"), py::arg("eps_reg") = -1.0)
      .def_readonly("p", &Exponent::p)
      .def_readonly("eps_reg", &Exponent::eps_reg);

  py::class_<Field>(m, "Field")
      .def(py::init<const Domain&, std::vector<double>>(), py::arg("domain"),
           py::arg("values"))
      .def_readonly("domain", &Field::domain)
      .def_readonly("values", &Field::values);

  py::class_<SpherePoint>(m, "SpherePoint")
      .def_readonly("field", &SpherePoint::field);

  py::class_<FucikParams>(m, "FucikParams")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_readwrite("a", &FucikParams::a)
      .def_readwrite("b", &FucikParams::b);

  m.def("interpolate",
        [](const Domain& d, const std::function<double(double)>& f) {
          return interpolate(d, f);
        });
  m.def("lp_norm", &lp_norm);
  m.def("dirichlet_energy", &dirichlet_energy);
  m.def("seminorm", &seminorm);
  m.def("positive_part", &positive_part);
  m.def("negative_part", &negative_part);
  m.def("normalize", &normalize);

  m.def("fucik_energy", &fucik_energy);
  m.def("fucik_energy_grad", &fucik_energy_grad);
  m.def("shifted_energy",
        [](const Field& u, double s, const Exponent& pe) {
          return shifted_energy(u, Shift(s), pe);
        });
  m.def("sphere_energy",
        [](const SpherePoint& w, double s) { return sphere_energy(w, Shift(s)); });
  m.def("sign_path",
        [](const SpherePoint& u0, int beads) {
          std::vector<Field> out;
          for (const SpherePoint& b : sign_path(u0, beads).beads) out.push_back(b.field);
          return out;
        },
        py::arg("u0"), py::arg("beads") = 41);

  py::class_<Nonlinearity>(m, "Nonlinearity")
      .def("f", &Nonlinearity::f)
      .def("F", &Nonlinearity::F)
      .def_property_readonly("p", &Nonlinearity::p);
  m.def("make_model_nonlinearity",
        [](double a0, double b0, double a, double b, const Exponent& pe, double t_small,
           double t_large) {
          return make_model_nonlinearity({a0, b0}, {a, b}, pe, t_small, t_large);
        },
        py::arg("a0"), py::arg("b0"), py::arg("a"), py::arg("b"), py::arg("exponent"),
        py::arg("t_small") = 0.1, py::arg("t_large") = 1.0);
  m.def("bvp_energy", &bvp_energy);
  m.def("bvp_energy_grad", &bvp_energy_grad);

  py::class_<EigenPair>(m, "EigenPair")
      .def_readonly("lambda1", &EigenPair::lambda)
      .def_readonly("phi", &EigenPair::phi)
      .def_readonly("residual", &EigenPair::residual)
      .def_readonly("iterations", &EigenPair::iterations)
      .def_readonly("converged", &EigenPair::converged)
      .def_readonly("message", &EigenPair::message);
  m.def("first_eigenpair",
        [](const Domain& d, const Exponent& pe, double tol) {
          EigenOptions opts;
          opts.tol = tol;
          return first_eigenpair(d, pe, opts);
        },
        py::arg("domain"), py::arg("exponent"), py::arg("tol") = 1e-9);

  py::class_<MinimaxConfig>(m, "MinimaxConfig")
      .def(py::init<>())
      .def_readwrite("beads", &MinimaxConfig::beads)
      .def_readwrite("tol", &MinimaxConfig::tol)
      .def_readwrite("grad_tol", &MinimaxConfig::grad_tol)
      .def_readwrite("patience", &MinimaxConfig::patience)
      .def_readwrite("max_sweeps", &MinimaxConfig::max_sweeps)
      .def_readwrite("workers", &MinimaxConfig::workers);

  py::class_<MinimaxResult>(m, "MinimaxResult")
      .def_readonly("s", &MinimaxResult::s)
      .def_readonly("c", &MinimaxResult::c)
      .def_readonly("argmax", &MinimaxResult::argmax)
      .def_readonly("grad_norm_at_max", &MinimaxResult::grad_norm_at_max)
      .def_readonly("iterations", &MinimaxResult::iterations)
      .def_readonly("converged", &MinimaxResult::converged)
      .def_readonly("message", &MinimaxResult::message);
  m.def("mountain_pass",
        [](double s, const EigenPair& eig, const MinimaxConfig& cfg) {
          return mountain_pass(Shift(s), eig, cfg);
        },
        py::arg("s"), py::arg("eig"), py::arg("config") = MinimaxConfig{});

  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readonly("s", &CurvePoint::s)
      .def_readonly("c", &CurvePoint::c)
      .def_readonly("a", &CurvePoint::a)
      .def_readonly("b", &CurvePoint::b)
      .def_readonly("grad_residual", &CurvePoint::grad_residual);

  py::class_<SpectrumData>(m, "SpectrumData")
      .def_readonly("lambda1", &SpectrumData::lambda1)
      .def_readonly("lambda2", &SpectrumData::lambda2)
      .def_readonly("curve", &SpectrumData::curve)
      .def_readonly("monotone_ok", &SpectrumData::monotone_ok)
      .def_readonly("warnings", &SpectrumData::warnings)
      .def("to_json", [](const SpectrumData& spec) { return spectrum_to_json(spec).dump(2); });
  m.def("spectrum_from_json",
        [](const std::string& text) { return spectrum_from_json(json::parse(text)); });
  m.def("default_s_grid", &default_s_grid);
  m.def("trace_curve",
        [](const EigenPair& eig, const std::vector<double>& grid, const MinimaxConfig& cfg,
           bool warm_start) {
          TraceOptions topts;
          topts.minimax = cfg;
          topts.warm_start = warm_start;
          return trace_curve(eig, grid, topts);
        },
        py::arg("eig"), py::arg("s_values"), py::arg("config") = MinimaxConfig{},
        py::arg("warm_start") = true);

  m.def("classify",
        [](double a, double b, const SpectrumData& spec, double band) {
          const RegionPrediction r =
              classify(a, b, spec, band > 0.0 ? band : default_band(spec));
          return py::make_tuple(std::string(to_string(r.label)), r.groups, r.note);
        },
        py::arg("a"), py::arg("b"), py::arg("spectrum"), py::arg("band") = -1.0);

  py::class_<Solution>(m, "Solution")
      .def_readonly("u", &Solution::u)
      .def_readonly("residual", &Solution::residual)
      .def_readonly("energy", &Solution::energy)
      .def_readonly("scenarios", &Solution::scenarios)
      .def_property_readonly("sign",
                             [](const Solution& s) { return std::string(to_string(s.sign)); });

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("scenarios", &SolveReport::scenarios)
      .def_readonly("solutions", &SolveReport::solutions)
      .def_readonly("distances", &SolveReport::distances)
      .def_readonly("notes", &SolveReport::notes)
      .def_readonly("all_required_found", &SolveReport::all_required_found);

  py::class_<BvpConfig>(m, "BvpConfig")
      .def(py::init<>())
      .def_readwrite("tol", &BvpConfig::tol)
      .def_readwrite("restarts", &BvpConfig::restarts)
      .def_readwrite("seed", &BvpConfig::seed)
      .def_readwrite("workers", &BvpConfig::workers)
      .def_readwrite("t_small", &BvpConfig::t_small)
      .def_readwrite("t_large", &BvpConfig::t_large);

  m.def("multiplicity_experiment",
        [](const FucikParams& ab0, const FucikParams& ab, const SpectrumData& spec,
           const EigenPair& eig, const BvpConfig& cfg) {
          return multiplicity_experiment(ab0, ab, spec, eig, cfg);
        },
        py::arg("ab0"), py::arg("ab"), py::arg("spectrum"), py::arg("eig"),
        py::arg("config") = BvpConfig{});

  m.def("run_invariant_checks",
        [](const Domain& d, const Exponent& pe, std::uint64_t seed) {
          std::vector<py::tuple> rows;
          for (const CheckRow& r : run_invariant_checks(d, pe, seed))
            rows.push_back(py::make_tuple(r.name, r.pass, r.detail));
          return rows;
        },
        py::arg("domain"), py::arg("exponent"), py::arg("seed") = 7);
}
