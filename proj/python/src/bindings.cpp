// Copyright 2026 The aqored Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "aqored/annealing.hpp"
#include "aqored/cli.hpp"
#include "aqored/errors.hpp"
#include "aqored/model_io.hpp"
#include "aqored/models.hpp"
#include "aqored/oracle.hpp"
#include "aqored/reduction.hpp"

namespace py = pybind11;
using namespace aqored;

namespace {

std::size_t effective_dimension(const ModelSpec& spec, double s) {
  const BuiltModel b = build(spec, s);
  return assemble_effective(b.decomposition, b.weights).matrix.dim();
}

template <class T>
std::string repr_of(const T& m) {
  std::string out = model_name(ModelSpec(m)) + "(";
  bool first = true;
  for (const auto& [k, v] : model_to_key_values(ModelSpec(m))) {
    if (k == "model") continue;
    out += (first ? "" : ", ") + k + "=" + v;
    first = false;
  }
  return out + ")";
}

}  // namespace

PYBIND11_MODULE(_aqored, m) {
  m.doc() = "Exact reduced spectra, gaps and annealing times for adiabatic optimization models.";

  auto error = py::register_exception<Error>(m, "AqoredError", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<NotPositiveSemidefinite>(m, "NotPositiveSemidefinite", error.ptr());
  py::register_exception<StructuralError>(m, "StructuralError", error.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", error.ptr());

  py::enum_<Driver>(m, "Driver").value("GROVER", Driver::Grover).value("STANDARD", Driver::Standard);
  py::enum_<Schedule>(m, "Schedule")
      .value("LINEAR", Schedule::Linear)
      .value("OPTIMAL", Schedule::Optimal)
      .value("GROVER_OVERRIDE", Schedule::GroverOverride);

  py::class_<GroverPlain>(m, "GroverPlain")
      .def(py::init([](Driver d, int n, double c) { return GroverPlain{d, n, c}; }), py::arg("driver"),
           py::arg("n"), py::arg("target_scale") = 1.0)
      .def_readwrite("driver", &GroverPlain::driver)
      .def_readwrite("n", &GroverPlain::n)
      .def_readwrite("target_scale", &GroverPlain::target_scale)
      .def("__repr__", &repr_of<GroverPlain>);
  py::class_<GroverNoiseStd>(m, "GroverNoiseStd")
      .def(py::init([](int n, double e, int q, double c) { return GroverNoiseStd{n, e, q, c}; }), py::arg("n"),
           py::arg("epsilon"), py::arg("q"), py::arg("target_scale") = 0.0)
      .def_readwrite("n", &GroverNoiseStd::n)
      .def_readwrite("epsilon", &GroverNoiseStd::epsilon)
      .def_readwrite("q", &GroverNoiseStd::q)
      .def_readwrite("target_scale", &GroverNoiseStd::target_scale)
      .def("__repr__", &repr_of<GroverNoiseStd>);
  py::class_<GroverNoiseGrv>(m, "GroverNoiseGrv")
      .def(py::init([](int n, double e, int q, double c) { return GroverNoiseGrv{n, e, q, c}; }), py::arg("n"),
           py::arg("epsilon"), py::arg("q"), py::arg("target_scale") = 0.0)
      .def_readwrite("n", &GroverNoiseGrv::n)
      .def_readwrite("epsilon", &GroverNoiseGrv::epsilon)
      .def_readwrite("q", &GroverNoiseGrv::q)
      .def_readwrite("target_scale", &GroverNoiseGrv::target_scale)
      .def("__repr__", &repr_of<GroverNoiseGrv>);
  py::class_<Tunneling>(m, "Tunneling")
      .def(py::init([](std::vector<double> v) { return Tunneling{std::move(v)}; }), py::arg("barriers"))
      .def_readwrite("barriers", &Tunneling::barriers)
      .def("__repr__", &repr_of<Tunneling>);
  py::class_<MultiSolution>(m, "MultiSolution")
      .def(py::init([](int n, std::vector<std::string> t) { return MultiSolution{n, std::move(t)}; }),
           py::arg("n"), py::arg("targets"))
      .def_readwrite("n", &MultiSolution::n)
      .def_readwrite("targets", &MultiSolution::targets)
      .def("__repr__", &repr_of<MultiSolution>);
  py::class_<MLevelGrover>(m, "MLevelGrover")
      .def(py::init([](std::vector<double> e, std::vector<double> d) { return MLevelGrover{std::move(e), std::move(d)}; }),
           py::arg("energies"), py::arg("degeneracies"))
      .def_readwrite("energies", &MLevelGrover::energies)
      .def_readwrite("degeneracies", &MLevelGrover::degeneracies)
      .def("__repr__", &repr_of<MLevelGrover>);

  py::class_<DimensionLaw>(m, "DimensionLaw")
      .def_readonly("value", &DimensionLaw::value)
      .def_readonly("exact", &DimensionLaw::exact)
      .def_readonly("label", &DimensionLaw::label);
  py::class_<GapProfile>(m, "GapProfile")
      .def_readonly("s_points", &GapProfile::s_points)
      .def_readonly("gaps", &GapProfile::gaps)
      .def_readonly("s_star", &GapProfile::s_star)
      .def_readonly("g_min", &GapProfile::g_min)
      .def_readonly("degenerate", &GapProfile::degenerate);
  py::class_<SpectrumReconstruction>(m, "SpectrumReconstruction")
      .def_readonly("reduced_eigs", &SpectrumReconstruction::reduced_eigs)
      .def_property_readonly("factored_levels",
                             [](const SpectrumReconstruction& r) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& f : r.factored_levels) out.emplace_back(f.value, f.multiplicity);
                               return out;
                             })
      .def("total_multiplicity", &SpectrumReconstruction::total_multiplicity)
      .def("expanded", [](const SpectrumReconstruction& r) { return r.expanded(); })
      .def("lowest", &SpectrumReconstruction::lowest, py::arg("m"))
      .def("gap", &SpectrumReconstruction::gap);
  py::class_<TcompResult>(m, "TcompResult")
      .def_readonly("n", &TcompResult::n)
      .def_readonly("epsilon", &TcompResult::epsilon)
      .def_readonly("schedule", &TcompResult::schedule)
      .def_readonly("log2_t_comp", &TcompResult::log2_t_comp)
      .def_readonly("t_comp", &TcompResult::t_comp)
      .def_readonly("q_star", &TcompResult::q_star)
      .def_readonly("q_epsilon", &TcompResult::q_epsilon);
  py::class_<ScalingFit>(m, "ScalingFit")
      .def_readonly("slope", &ScalingFit::slope)
      .def_readonly("intercept", &ScalingFit::intercept)
      .def_readonly("max_residual", &ScalingFit::max_residual)
      .def_readonly("n_min", &ScalingFit::n_min)
      .def_readonly("n_max", &ScalingFit::n_max)
      .def_readonly("points", &ScalingFit::points);

  m.def("validate", &validate, py::arg("model"));
  m.def("model_name", &model_name, py::arg("model"));
  m.def("model_to_dict", &model_to_key_values, py::arg("model"));
  m.def("model_from_dict", &model_from_key_values, py::arg("values"), py::arg("seed") = 0);
  m.def("dimension_law", &dimension_law, py::arg("model"));
  m.def("effective_dimension", &effective_dimension, py::arg("model"), py::arg("s"),
        "Size of the reduced matrix at s.");
  m.def("reduced_spectrum", [](const ModelSpec& spec, double s) { return reduced_spectrum(spec, s); },
        py::arg("model"), py::arg("s"), py::call_guard<py::gil_scoped_release>());
  m.def("full_spectrum", [](const ModelSpec& spec, double s) { return full_spectrum(full_hamiltonian(spec, s)); },
        py::arg("model"), py::arg("s"), "Brute-force spectrum of the explicit 2^n matrix (n <= 10).",
        py::call_guard<py::gil_scoped_release>());

  m.def("gap_at", &gap_at, py::arg("model"), py::arg("s"));
  m.def("gap_profile", py::overload_cast<const ModelSpec&, int>(&gap_profile), py::arg("model"),
        py::arg("coarse_points") = 257, py::call_guard<py::gil_scoped_release>());
  m.def("t_ann_linear", py::overload_cast<double>(&t_ann_linear), py::arg("g_min"));
  m.def(
      "t_ann_optimal",
      [](const ModelSpec& spec, double rel_tol, double adiabaticity) {
        OptimalOptions o;
        o.rel_tol = rel_tol;
        o.adiabaticity = adiabaticity;
        return t_ann_optimal(spec, o);
      },
      py::arg("model"), py::arg("rel_tol") = 1e-6, py::arg("adiabaticity") = 1.0,
      py::call_guard<py::gil_scoped_release>());
  m.def("t_ann_grover_override", &t_ann_grover_override, py::arg("n"));
  m.def("q_distribution", &q_distribution, py::arg("n"));
  m.def("q_epsilon", &q_epsilon, py::arg("n"), py::arg("epsilon"));
  m.def("t_comp", &t_comp, py::arg("n"), py::arg("epsilon"), py::arg("t_ann_by_q"),
        py::arg("target_success") = 0.99, py::arg("schedule") = Schedule::Linear);
  m.def("analytic_scaling", &analytic_scaling, py::arg("epsilon"));
  m.def("binary_entropy", &binary_entropy, py::arg("x"));
  m.def("fit_exponent", &fit_exponent, py::arg("points"));

  m.def(
      "verify",
      [](int n_min, int n_max, int draws, int s_points, std::uint64_t seed, double tolerance, int workers) {
        ProtocolOptions o;
        o.n_min = n_min;
        o.n_max = n_max;
        o.draws = draws;
        o.s_points = s_points;
        o.seed = seed;
        o.tolerance = tolerance;
        o.workers = workers;
        const ProtocolReport r = run_protocol(o);
        std::map<std::string, double> worst;
        for (const auto& pm : r.per_model) worst[pm.model] = pm.max_deviation;
        return std::make_pair(r.passed(), worst);
      },
      py::arg("n_min") = 3, py::arg("n_max") = 6, py::arg("draws") = 3, py::arg("s_points") = 11,
      py::arg("seed") = 0, py::arg("tolerance") = 1e-9, py::arg("workers") = 1,
      "Reduced vs brute-force spectra on random instances; returns (passed, max deviation per model).",
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "aqored");
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI command in-process; returns (exit_code, stdout, stderr).");
}
