#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bundlecoh/cli_run.hpp"
#include "bundlecoh/parab.hpp"
#include "bundlecoh/respair.hpp"
#include "bundlecoh/serialize.hpp"

namespace py = pybind11;
using namespace bundlecoh;

namespace {

std::vector<std::string> int_series_strings(const IntSeries& s, int upto) {
    std::vector<std::string> out;
    for (int r = 0; r <= upto; ++r) out.push_back(to_string(s.coeff(r)));
    return out;
}

py::object py_int(const std::string& decimal) {
    return py::module_::import("builtins").attr("int")(decimal);
}

py::list to_py_ints(const std::vector<std::string>& vals) {
    py::list out;
    for (const auto& v : vals) out.append(py_int(v));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact computations in the cohomology of moduli of bundles";

    m.def(
        "p_moduli",
        [](long n, long d, int g, std::optional<int> cap) {
            long dim = moduli_dimension(n, g);
            int c = cap.value_or(static_cast<int>(2 * dim + 2));
            IntSeries s = p_moduli(n, d, g, c);
            return to_py_ints(int_series_strings(s, static_cast<int>(dim)));
        },
        py::arg("n"), py::arg("d"), py::arg("g"), py::arg("cap") = py::none(),
        "Poincare polynomial coefficients of the moduli space");

    m.def(
        "p_gauge",
        [](int n, int g, int cap) { return to_py_ints(int_series_strings(p_gauge(n, g, cap), cap)); },
        py::arg("n"), py::arg("g"), py::arg("cap"));

    m.def(
        "p_semistable",
        [](long n, long d, int g, int cap) {
            return to_py_ints(int_series_strings(p_semistable(n, d, g, cap), cap));
        },
        py::arg("n"), py::arg("d"), py::arg("g"), py::arg("cap"));

    m.def(
        "p_flag",
        [](const std::vector<int>& mults, int cap) {
            return to_py_ints(int_series_strings(p_flag(mults, cap), cap));
        },
        py::arg("multiplicities"), py::arg("cap"));

    m.def("moduli_dimension", &moduli_dimension, py::arg("n"), py::arg("g"));

    m.def(
        "hn_types",
        [](long n, long d, int g, long codim_cap) {
            py::list out;
            for (const auto& t : enumerate_hn_types(n, d, g, codim_cap)) {
                py::dict item;
                py::list blocks;
                for (auto& [ni, di] : t.blocks) blocks.append(py::make_tuple(ni, di));
                item["blocks"] = std::move(blocks);
                item["codim"] = codim_mu(t, g);
                out.append(std::move(item));
            }
            return out;
        },
        py::arg("n"), py::arg("d"), py::arg("g"), py::arg("codim_cap"));

    m.def("codim", [](const std::vector<std::pair<long, long>>& blocks,
                      int g) { return codim_mu(HNType{blocks}, g); });

    m.def("virtual_rank", &virtual_rank, py::arg("n"), py::arg("d"), py::arg("nhat"),
          py::arg("dhat"), py::arg("g"));

    m.def(
        "relation_window",
        [](long n, long d, long nhat, long dhat, int g) {
            auto w = relation_window(n, d, nhat, dhat, g);
            return py::make_tuple(w.first, w.last);
        },
        py::arg("n"), py::arg("d"), py::arg("nhat"), py::arg("dhat"), py::arg("g"));

    m.def(
        "normalization_coeffs",
        [](int n, long d, int g) {
            auto nc = normalization_coeffs(n, d, g);
            return py::make_tuple(nc.u, nc.v);
        },
        py::arg("n"), py::arg("d"), py::arg("g"));

    m.def(
        "par_rank",
        [](long n, long d, const std::vector<std::string>& weights,
           const std::vector<long>& mults, long nhat, long dhat, const std::vector<long>& jhat,
           int g) {
            ParabolicData pd;
            pd.n = n;
            pd.d = d;
            for (auto& w : weights) pd.weights.push_back(rational_from_string(w));
            pd.mults = mults;
            SubParabolicData sub{nhat, dhat, jhat};
            return par_rank_formula(pd, sub, g);
        },
        py::arg("n"), py::arg("d"), py::arg("weights"), py::arg("mults"), py::arg("nhat"),
        py::arg("dhat"), py::arg("jhat"), py::arg("g"));

    m.def(
        "good_data_check",
        [](long n, long d, const std::vector<std::string>& weights,
           const std::vector<long>& mults) {
            ParabolicData pd;
            pd.n = n;
            pd.d = d;
            for (auto& w : weights) pd.weights.push_back(rational_from_string(w));
            pd.mults = mults;
            auto rep = good_data_check(pd);
            py::dict out;
            out["good"] = rep.good;
            py::list ws;
            for (const auto& w : rep.witnesses) {
                py::dict e;
                e["nhat"] = w.nhat;
                e["dhat"] = w.dhat;
                e["jhat"] = w.jhat;
                e["top_level"] = w.top_level;
                ws.append(std::move(e));
            }
            out["witnesses"] = std::move(ws);
            if (rep.margin) out["margin"] = to_string(*rep.margin);
            return out;
        },
        py::arg("n"), py::arg("d"), py::arg("weights"), py::arg("mults"));

    m.def(
        "weight_degree_count",
        [](const std::vector<int>& J, const std::vector<long>& mults) {
            return weight_degree_count(J, mults);
        },
        py::arg("J"), py::arg("mults"));

    m.def(
        "relations_json",
        [](long n, long d, int g, long nhat, long dhat, std::optional<long> r, bool window,
           std::optional<int> cap) {
            JobSpec spec;
            spec.subcommand = "relations";
            spec.n = n;
            spec.d = d;
            spec.g = g;
            spec.nhat = nhat;
            spec.dhat = dhat;
            spec.r = r;
            spec.window = window;
            if (cap) spec.t_cap = cap;
            std::ostringstream os;
            int code = run(spec, os);
            if (code != 0) throw std::runtime_error(os.str());
            return os.str();
        },
        py::arg("n"), py::arg("d"), py::arg("g"), py::arg("nhat"), py::arg("dhat"),
        py::arg("r") = py::none(), py::arg("window") = true, py::arg("cap") = py::none(),
        "relation records (Kunneth tables) as a JSON string");

    m.def(
        "pairing_json",
        [](long n, long d, int g, long nhat, long dhat, const std::string& eta, int tcap,
           int orientation) {
            JobSpec spec;
            spec.subcommand = "pairing";
            spec.n = n;
            spec.d = d;
            spec.g = g;
            spec.nhat = nhat;
            spec.dhat = dhat;
            spec.eta = eta;
            spec.t_cap = tcap;
            spec.orientation = orientation;
            std::ostringstream os;
            int code = run(spec, os);
            if (code != 0) throw std::runtime_error(os.str());
            return os.str();
        },
        py::arg("n"), py::arg("d"), py::arg("g"), py::arg("nhat"), py::arg("dhat"),
        py::arg("eta") = "1", py::arg("tcap") = 4, py::arg("orientation") = 1,
        "iterated-residue pairing coefficients as a JSON string");

    m.def("selftest", []() {
        std::ostringstream os;
        int code = selftest(os);
        return py::make_tuple(code, os.str());
    });
}
