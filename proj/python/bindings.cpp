#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "moore/hochschild.hpp"
#include "moore/json_io.hpp"
#include "moore/moduli.hpp"
#include "moore/parse.hpp"
#include "moore/selftest.hpp"

namespace py = pybind11;
using namespace moore;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
    return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

PowerSeries series_from(const py::object& o) {
    if (py::isinstance<py::str>(o)) return series_from_json_text(o.cast<std::string>());
    return series_from_json(from_py(o));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Moore A-infinity algebras over exact coefficient rings";

    static py::exception<Error> moore_error(m, "MooreError");
    static py::exception<ParseError> parse_error(m, "ParseError", moore_error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            PyErr_SetString(parse_error.ptr(), e.what());
        } catch (const Error& e) {
            PyErr_SetString(moore_error.ptr(), (std::string(e.name()) + ": " + e.what()).c_str());
        }
    });

    py::class_<Ring>(m, "Ring")
        .def(py::init(&Ring::parse), py::arg("spec"))
        .def_property_readonly("spec", &Ring::spec)
        .def_property_readonly("prime", &Ring::prime)
        .def_property_readonly("precision", &Ring::precision)
        .def_property_readonly("laurent", &Ring::laurent)
        .def_property_readonly("symbols", &Ring::symbols)
        .def("is_field", &Ring::is_field)
        .def("element", [](const Ring& r, const std::string& text) { return parse_ring_elem(r, text).str(); },
             "Normal form of a ring element given as text")
        .def("__eq__", &Ring::operator==)
        .def("__hash__", [](const Ring& r) { return std::hash<const void*>{}(r.data()); })
        .def("__repr__", [](const Ring& r) { return "Ring('" + r.spec() + "')"; });

    py::class_<PowerSeries>(m, "Series")
        .def(py::init([](const Ring& r, const std::string& text, int trunc) { return parse_series(r, text, trunc); }),
             py::arg("ring"), py::arg("text"), py::arg("trunc"))
        .def_static("from_json", &series_from, py::arg("doc"), "Series from a JSON string or dict")
        .def_static("identity", &PowerSeries::identity)
        .def("to_json", [](const PowerSeries& s) { return to_py(to_json(s)); })
        .def_property_readonly("ring", &PowerSeries::ring)
        .def_property_readonly("trunc", &PowerSeries::trunc)
        .def("coeff", [](const PowerSeries& s, int i) { return s.coeff(i).str(); })
        .def("order", &PowerSeries::order)
        .def("truncated", &PowerSeries::truncated)
        .def("agrees_with", &PowerSeries::agrees_with)
        .def("__add__", [](const PowerSeries& a, const PowerSeries& b) { return a + b; })
        .def("__sub__", [](const PowerSeries& a, const PowerSeries& b) { return a - b; })
        .def("__mul__", [](const PowerSeries& a, const PowerSeries& b) { return a * b; })
        .def("__neg__", [](const PowerSeries& a) { return -a; })
        .def("__eq__", [](const PowerSeries& a, const PowerSeries& b) { return a == b; })
        .def("__str__", &PowerSeries::str)
        .def("__repr__", [](const PowerSeries& s) {
            return "Series(Ring('" + s.ring().spec() + "'), '" + s.str() + "', " + std::to_string(s.trunc()) + ")";
        });

    m.def("compose", static_cast<PowerSeries (*)(const PowerSeries&, const PowerSeries&)>(&compose), py::arg("u"), py::arg("f"));
    m.def("reversion", &reversion, py::arg("f"));
    m.def("derivative", &derivative, py::arg("u"));
    m.def("height", &height, py::arg("u"));
    m.def("weierstrass_rank", &weierstrass_rank, py::arg("f"));
    m.def("reduce_mod_pi", &reduce_mod_pi, py::arg("u"));

    py::class_<MooreAlgebra>(m, "MooreAlgebra")
        .def_static("even", &MooreAlgebra::even, py::arg("u"), py::arg("d") = 0)
        .def_static("odd", &MooreAlgebra::odd, py::arg("v"), py::arg("w"), py::arg("d") = 1)
        .def_property_readonly("is_even", &MooreAlgebra::is_even)
        .def_readonly("d", &MooreAlgebra::d)
        .def_readonly("u", &MooreAlgebra::u)
        .def_readonly("v", &MooreAlgebra::v)
        .def_readonly("w", &MooreAlgebra::w)
        .def_property_readonly("ring", &MooreAlgebra::ring);

    m.def("act", &act, py::arg("algebra"), py::arg("f"));
    m.def("act_full", &act_full, py::arg("a"), py::arg("b"), py::arg("g"), py::arg("f"));
    m.def("canonicalize", [](const PowerSeries& u) { return to_py(to_json(canonicalize(u))); }, py::arg("u"));
    m.def("orbit_invariant", [](const MooreAlgebra& a) { return to_py(to_json(orbit_invariant(a))); },
          py::arg("algebra"));
    m.def("equivalent", &equivalent, py::arg("a"), py::arg("b"));
    m.def("degree_audit", [](const MooreAlgebra& a) {
        Json list = Json::array();
        for (const auto& v : degree_audit(a)) list.push_back(to_json(v));
        return to_py(list);
    }, py::arg("algebra"));
    m.def("check_square_zero",
          [](const MooreAlgebra& a, int length) { return to_py(to_json(check_square_zero(moore_mstar(a, length)))); },
          py::arg("algebra"), py::arg("length"));

    m.def("hh_closed_form", [](const MooreAlgebra& a) { return to_py(to_json(hh_closed_form(a))); },
          py::arg("algebra"));
    m.def("hh_structure", [](const MooreAlgebra& a) { return to_py(to_json(hh_structure(a))); },
          py::arg("algebra"));
    m.def("hh_bruteforce", [](const MooreAlgebra& a, int maxdeg) { return to_py(to_json(hh_bruteforce(a, maxdeg))); },
          py::arg("algebra"), py::arg("maxdeg"));
    m.def("quotient_dims", &quotient_dims, py::arg("u"), py::arg("maxdeg"));

    m.def("verify_universal", [](const std::string& parity, int arity, int length) {
        if (parity != "even" && parity != "odd") throw Error(ErrorCode::InvalidArgument, "parity is even or odd");
        UniversalCheck u = verify_universal(parity == "odd", arity, length, arity);
        return to_py(Json{{"ring", u.ring.spec()}, {"cobar", to_json(u.cobar)}, {"bar", u.bar_ok}});
    }, py::arg("parity"), py::arg("arity") = 8, py::arg("length") = 10);
    m.def("suites", [] {
        std::vector<std::pair<int, std::string>> out;
        for (const auto& s : suite_list()) out.emplace_back(s.id, s.name);
        return out;
    });
    m.def("run_suite", [](int id, std::uint64_t seed) {
        SuiteResult r = run_suite(id, seed);
        return to_py(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"cases", r.cases},
                          {"detail", r.detail}, {"seconds", r.seconds}});
    }, py::arg("id"), py::arg("seed"));
}
