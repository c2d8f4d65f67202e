#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stickel/golden.hpp"
#include "stickel/lfunctions.hpp"

namespace py = pybind11;
using namespace stickel;

namespace {

FieldPtr field_from(const std::string& family, u64 f, u64 d, const std::vector<u64>& gens) {
    FieldDesc desc;
    desc.kind = family;
    desc.f = f;
    desc.d = d;
    desc.gens = gens;
    return build_field(desc);
}

py::dict report_dict(const AnnihilatorReport& r) {
    py::dict d;
    d["f"] = r.K->modulus();
    d["degree"] = r.K->degree();
    d["p"] = r.setup.p;
    d["ex"] = r.setup.ex;
    d["recipe"] = recipe_name(r.setup.recipe);
    d["c"] = r.setup.c;
    d["fn"] = r.setup.fn;
    d["pN"] = r.setup.pN;
    d["half"] = r.setup.half;
    d["columns"] = r.columns;
    d["summary"] = r.summary;
    py::list cert;
    for (auto& c : r.certification) cert.append(py::make_tuple(c.element, c.status));
    d["certification"] = cert;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stickelberger annihilators and p-adic L-values of real abelian fields";

    py::register_exception<PrecisionError>(m, "PrecisionError");

    m.def(
        "annihilate",
        [](const std::string& family, u64 f, u64 p, unsigned ex, u64 d, std::vector<u64> gens,
           std::optional<std::string> recipe, std::optional<u64> c, unsigned threads) {
            auto K = field_from(family, f, d, gens);
            Recipe r = recipe ? parse_recipe(*recipe) : default_recipe(*K, p);
            py::gil_scoped_release nogil;
            auto rep = annihilator_A(K, p, ex, r, c, {}, threads);
            py::gil_scoped_acquire gil;
            return report_dict(rep);
        },
        py::arg("family"), py::arg("f"), py::arg("p"), py::arg("ex"), py::arg("d") = 0,
        py::arg("gens") = std::vector<u64>{}, py::arg("recipe") = py::none(), py::arg("c") = py::none(),
        py::arg("threads") = 1);

    m.def(
        "analytic_valuation",
        [](const std::string& family, u64 f, u64 p, unsigned M, u64 d, std::vector<u64> gens) {
            auto K = field_from(family, f, d, gens);
            auto A = analytic_valuation(K, p, M);
            py::dict out;
            out["total"] = A.total;
            out["product_valuation"] = A.lp_product;
            out["n0"] = A.n0;
            py::list vals;
            for (auto& L : A.values) {
                py::dict v;
                v["f_chi"] = L.chi.conductor;
                v["order"] = L.chi.order;
                v["value"] = L.value.c;
                v["norm_valuation"] = L.valuation.zero ? -1 : L.valuation.v;
                vals.append(v);
            }
            out["values"] = vals;
            return out;
        },
        py::arg("family"), py::arg("f"), py::arg("p"), py::arg("M") = 4, py::arg("d") = 0,
        py::arg("gens") = std::vector<u64>{});

    m.def(
        "crosscheck",
        [](const std::string& family, u64 f, u64 p, unsigned n, u64 c, u64 d) {
            auto K = field_from(family, f, d, {});
            auto cc = crosscheck(K, p, n, c);
            py::dict out;
            out["lambda_vs_measure"] = cc.lambda_vs_measure;
            out["lambda_vs_reconstruction"] = cc.lambda_vs_reconstruction;
            out["measure_vs_reconstruction"] = cc.measure_vs_reconstruction;
            out["ok"] = cc.all();
            return out;
        },
        py::arg("family"), py::arg("f"), py::arg("p"), py::arg("n"), py::arg("c"), py::arg("d") = 0);

    m.def("golden_tables", []() { return golden_tables(); });
    m.def(
        "run_golden",
        [](const std::string& id, std::vector<u64> rows) {
            py::list out;
            for (auto& row : load_golden(id)) {
                if (!rows.empty() && std::find(rows.begin(), rows.end(), row.f) == rows.end()) continue;
                auto res = run_golden_row(row);
                py::dict d;
                d["f"] = row.f;
                d["expected"] = row.coeffs;
                d["got"] = res.got;
                d["pass"] = res.pass();
                out.append(d);
            }
            return out;
        },
        py::arg("id"), py::arg("rows") = std::vector<u64>{});

    m.def("lambda_coeff", &lambda_coeff, py::arg("a"), py::arg("c"), py::arg("fn"));
    m.def("smallest_primitive_root", &smallest_primitive_root);
    m.def("field_degree", [](const std::string& family, u64 f, u64 d, std::vector<u64> gens) {
        return field_from(family, f, d, gens)->degree();
    }, py::arg("family"), py::arg("f"), py::arg("d") = 0, py::arg("gens") = std::vector<u64>{});
}
