#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "starcong/canonical.hpp"
#include "starcong/closure.hpp"
#include "starcong/errors.hpp"
#include "starcong/perturbation.hpp"
#include "starcong/stratification.hpp"

namespace py = pybind11;
using namespace starcong;

namespace {

using Rows = std::vector<std::vector<Complex>>;

Mat2 to_mat(const py::object& obj) {
    if (py::isinstance<py::str>(obj)) return parse_matrix(obj.cast<std::string>());
    const auto rows = obj.cast<Rows>();
    if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
        throw InvalidInput("expected a 2x2 matrix");
    return Mat2{rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
}

Rows to_rows(const Mat2& m) { return {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}; }

py::dict certificate_dict(const ObstructionCertificate& c) {
    py::dict d;
    d["kind"] = std::string(certificate_name(c.kind));
    d["margin"] = c.margin;
    d["detail"] = c.detail;
    return d;
}

py::dict summary_dict(const ParameterSummary& s) {
    py::dict d;
    d["count"] = s.count;
    d["min"] = s.min;
    d["max"] = s.max;
    d["mean"] = s.mean;
    return d;
}

}  // namespace

PYBIND11_MODULE(_starcong, m) {
    m.doc() = "Canonical forms of 2x2 complex matrices under *congruence and their closure order";

    // Exception types live for the whole process; raw handles avoid teardown order issues.
    auto add = [](const char* name, PyObject* parent) {
        return py::handle(PyErr_NewException((std::string("starcong.") + name).c_str(), parent, nullptr))
            .inc_ref()
            .ptr();
    };
    static PyObject* base = add("StarcongError", PyExc_RuntimeError);
    static PyObject* invalid = add("InvalidInput", base);
    static PyObject* singular = add("SingularMatrix", base);
    static PyObject* not_herm = add("NotHermitian", base);
    static PyObject* ambiguous = add("AmbiguousClassification", base);
    static PyObject* duplicate = add("DuplicateVertex", invalid);
    static PyObject* degenerate = add("DegenerateDelta", invalid);
    static PyObject* exists = add("ArrowExists", base);
    static PyObject* not_found = add("CertificateNotFound", base);
    static PyObject* no_arrow = add("NoArrow", base);
    for (auto [name, type] : {std::pair{"StarcongError", base}, {"InvalidInput", invalid},
                              {"SingularMatrix", singular}, {"NotHermitian", not_herm},
                              {"AmbiguousClassification", ambiguous}, {"DuplicateVertex", duplicate},
                              {"DegenerateDelta", degenerate}, {"ArrowExists", exists},
                              {"CertificateNotFound", not_found}, {"NoArrow", no_arrow}})
        m.attr(name) = py::handle(type);

    py::register_exception_translator([](std::exception_ptr p) {
        auto raise = [](PyObject* type, const char* what, auto&& decorate) {
            py::object exc = py::handle(type)(what);
            decorate(exc);
            py::set_error(py::handle(type), exc);
        };
        auto plain = [](py::object&) {};
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NoArrow& e) {
            raise(no_arrow, e.what(), [&](py::object& x) { x.attr("certificate") = certificate_dict(e.certificate()); });
        } catch (const AmbiguousClassification& e) {
            raise(ambiguous, e.what(), [&](py::object& x) {
                x.attr("test") = e.test();
                x.attr("margin") = e.margin();
            });
        } catch (const DuplicateVertex& e) {
            raise(duplicate, e.what(), plain);
        } catch (const DegenerateDelta& e) {
            raise(degenerate, e.what(), plain);
        } catch (const InvalidInput& e) {
            raise(invalid, e.what(), plain);
        } catch (const SingularMatrix& e) {
            raise(singular, e.what(), plain);
        } catch (const NotHermitian& e) {
            raise(not_herm, e.what(), plain);
        } catch (const ArrowExists& e) {
            raise(exists, e.what(), plain);
        } catch (const CertificateNotFound& e) {
            raise(not_found, e.what(), plain);
        } catch (const Error& e) {
            raise(base, e.what(), plain);
        }
    });

    py::enum_<Family>(m, "Family")
        .value("Zero", Family::Zero)
        .value("UnitDirectZero", Family::UnitDirectZero)
        .value("UnitPair", Family::UnitPair)
        .value("Hyperbolic", Family::Hyperbolic)
        .value("DeltaTau", Family::DeltaTau);

    py::class_<CanonicalForm>(m, "CanonicalForm")
        .def(py::init([](const std::string& s) { return parse_form(s); }), py::arg("text"))
        .def_static("zero", &CanonicalForm::zero)
        .def_static("unit_direct_zero", &CanonicalForm::unit_direct_zero, py::arg("lam"))
        .def_static("unit_pair", &CanonicalForm::unit_pair, py::arg("mu"), py::arg("nu"))
        .def_static("hyperbolic", &CanonicalForm::hyperbolic, py::arg("sigma"))
        .def_static("delta_tau", &CanonicalForm::delta_tau, py::arg("tau"))
        .def_property_readonly("family", &CanonicalForm::family)
        .def_property_readonly("family_name",
                               [](const CanonicalForm& f) { return std::string(family_name(f.family())); })
        .def("matrix", [](const CanonicalForm& f) { return to_rows(realize(f)); })
        .def("__eq__", [](const CanonicalForm& a, const CanonicalForm& b) { return a == b; })
        .def("__hash__", [](const CanonicalForm& f) { return py::hash(py::str(format_form(f))); })
        .def("__str__", &format_form)
        .def("__repr__", [](const CanonicalForm& f) { return "CanonicalForm('" + format_form(f) + "')"; });
    py::implicitly_convertible<py::str, CanonicalForm>();

    m.def("parse_form", [](const std::string& s) { return parse_form(s); }, py::arg("text"));
    m.def("format_form", &format_form, py::arg("form"));

    m.def(
        "classify",
        [](const py::object& a, double tol) {
            const auto r = classify(to_mat(a), tol);
            py::dict d;
            d["form"] = r.form;
            d["codim"] = codimension(r.form);
            d["margin"] = r.margin;
            d["scale"] = r.scale;
            return d;
        },
        py::arg("a"), py::arg("tol") = kDefaultClassifyTol,
        "Canonical form of a 2x2 matrix given as nested lists or 'a,b;c,d' text.");

    m.def("codimension", &codimension, py::arg("form"));
    m.def(
        "stratum",
        [](const CanonicalForm& f) {
            const auto s = stratum(f);
            py::dict d;
            d["form"] = f;
            d["dim_r"] = s.dim_r;
            d["codim_r"] = s.codim_r;
            d["star_count"] = versal_profile(f).star_count;
            return d;
        },
        py::arg("form"));
    m.def("tangent_space_dim", [](const py::object& a) { return tangent_space_dim(to_mat(a)); }, py::arg("a"));

    m.def("reachable", py::overload_cast<const CanonicalForm&, const CanonicalForm&>(&reachable),
          py::arg("source"), py::arg("target"));
    m.def(
        "witness",
        [](const CanonicalForm& source, const CanonicalForm& target, double delta, std::uint64_t seed) {
            const Witness w = witness(source, target, delta, seed);
            py::dict d;
            d["source"] = w.source;
            d["target"] = w.target;
            d["delta"] = w.delta;
            d["E"] = to_rows(w.e);
            d["S"] = w.s ? py::cast(to_rows(*w.s)) : py::none();
            d["norm_E"] = w.norm_e;
            d["classified"] = w.classified ? py::cast(*w.classified) : py::none();
            d["verified"] = w.verified;
            return d;
        },
        py::arg("source"), py::arg("target"), py::arg("delta") = 1e-4, py::arg("seed") = 0);
    m.def(
        "no_arrow_certificate",
        [](const CanonicalForm& source, const CanonicalForm& target) {
            return certificate_dict(no_arrow_certificate(source, target));
        },
        py::arg("source"), py::arg("target"));

    m.def(
        "sample_neighborhood",
        [](const CanonicalForm& source, double delta, std::size_t samples, std::uint64_t seed) {
            NeighborhoodReport r;
            {
                py::gil_scoped_release release;
                r = sample_neighborhood(source, delta, samples, seed);
            }
            py::dict hist;
            for (int k = 0; k < kFamilyCount; ++k)
                hist[py::str(std::string(family_name(static_cast<Family>(k))))] = r.histogram[static_cast<std::size_t>(k)];
            hist["boundary"] = r.histogram[kBoundaryBucket];
            py::dict d;
            d["source"] = r.source;
            d["delta"] = r.delta;
            d["samples"] = r.samples;
            d["seed"] = r.seed;
            d["histogram"] = hist;
            d["pair_split_distance"] = summary_dict(r.pair_split_distance);
            d["hyp_circle_distance"] = summary_dict(r.hyp_circle_distance);
            d["max_spectrum_drift"] = r.max_spectrum_drift ? py::cast(*r.max_spectrum_drift) : py::none();
            return d;
        },
        py::arg("source"), py::arg("delta") = 1e-4, py::arg("samples") = 10000, py::arg("seed") = 0);

    m.def(
        "hasse_edges",
        [](const std::vector<CanonicalForm>& forms) { return hasse_subgraph(forms).edges; },
        py::arg("forms"), "Covering relations (i, j) of the closure order restricted to forms.");
    m.def(
        "to_dot", [](const std::vector<CanonicalForm>& forms) { return to_dot(hasse_subgraph(forms)); },
        py::arg("forms"));
}
