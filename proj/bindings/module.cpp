#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qcas/cli.hpp"
#include "qcas/defparse.hpp"
#include "qcas/presets.hpp"
#include "qcas/tableio.hpp"

namespace py = pybind11;

namespace {

// rationals cross the boundary as strings so no precision is lost
std::vector<std::string> oracle_strings(long long beta_max) {
    auto vals = qcas::kontsevich_oracle(beta_max);  // vals[i] holds the count for degree i+1
    std::vector<std::string> out;
    for (const auto& v : vals) out.push_back(qcas::rat_to_string(v));
    return out;
}

}  // namespace

PYBIND11_MODULE(_qcas, m) {
    m.doc() = "exact workbench for associativity relations and curve counts";

    m.def("run", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = qcas::run_command(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    },
          py::arg("args"), "dispatch one command line; returns (exit_code, stdout, stderr)");

    m.def("preset_names", []() {
        std::vector<std::string> names;
        for (const auto& info : qcas::preset_catalog()) names.push_back(info.name);
        return names;
    });

    m.def("preset_definition", [](const std::string& name,
                                  const std::map<std::string, long long>& params) {
        return qcas::print_definition(qcas::get_preset(name, params), qcas::preset_doc(name));
    },
          py::arg("name"), py::arg("params") = std::map<std::string, long long>{});

    m.def("oracle", &oracle_strings, py::arg("beta_max"),
          "independent plane-curve counts N_1..N_beta_max as strings");

    m.def("count_formulas", [](long long r) {
        auto c = qcas::count_formulas(r);
        return py::make_tuple(c.mod_sign.get_str(), c.two_of_three.get_str());
    });

    m.def("brute_count", [](int r) {
        auto c = qcas::brute_count(r);
        return py::make_tuple(c.mod_sign.get_str(), c.two_of_three.get_str());
    });

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const qcas::QcasError& e) {
            PyErr_SetString(PyExc_ValueError,
                            (e.category + ": " + std::string(e.what())).c_str());
        }
    });
}
