#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "helmsweep/block_tridiag.hpp"
#include "helmsweep/experiment.hpp"

namespace py = pybind11;
using namespace helmsweep;

namespace {

py::dict report_to_dict(const IterationReport& rep) {
  py::dict d;
  d["method"] = rep.method;
  d["iters"] = rep.iters;
  d["converged"] = rep.converged;
  d["diverged"] = rep.diverged;
  d["final_res"] = rep.final_res;
  d["history"] = rep.history;
  d["wall_ms"] = rep.wall_ms;
  d["resolution_warning"] = rep.resolution_warning;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sweeping-type Helmholtz preconditioner lab";

  m.def("run_experiment",
        [](const std::string& config_json) {
          return report_to_dict(
              run_experiment(ExperimentConfig::from_json(config_json)));
        },
        py::arg("config_json"),
        "Run one experiment described by a JSON config string.");

  m.def("default_config",
        []() { return ExperimentConfig{}.to_json(); },
        "JSON string with every config key at its default.");

  m.def("reproduce_table",
        [](int id, int h) { return reproduce_table(id, h).csv(); },
        py::arg("id"), py::arg("h") = 64,
        "Regenerate one iteration-count study as a CSV string.");

  m.def("verify_suite",
        [](const std::string& name) {
          py::list out;
          for (const auto& c : verify_suite(name)) {
            py::dict d;
            d["name"] = c.name;
            d["pass"] = c.pass;
            d["measured"] = c.measured;
            d["tol"] = c.tol;
            out.append(d);
          }
          return out;
        },
        py::arg("name"),
        "Run a verification suite (nilpotency|equivalence|structure).");

  m.def("solve_field",
        [](const std::string& config_json, int i, int j, bool include_pml) {
          ExperimentConfig cfg = ExperimentConfig::from_json(config_json);
          ExperimentSetup s = build_setup(cfg);
          Vector f = point_rhs(s.op, i, j);
          Vector u = block_lu_solve(block_tridiag_factor(s.op), f);
          std::ostringstream os;
          dump_field(s.op, u, os, include_pml);
          return os.str();
        },
        py::arg("config_json"), py::arg("i"), py::arg("j"),
        py::arg("include_pml") = false,
        "Direct solve for a point source; returns the field as CSV text.");

  m.attr("__version__") = "0.1.0";
}
