#include "conelab/builtins.hpp"
#include "conelab/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace conelab;

namespace {

// Rationals cross the boundary as "p/q" strings; structured results as JSON text.
RVector parse_vector(const std::vector<std::string>& v) {
    RVector out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_rational(v[i], "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::string> format_vector(const RVector& v) {
    std::vector<std::string> out;
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact clan and quadratic-map classification";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Clan>(m, "Clan")
        .def_property_readonly("rank", &Clan::rank)
        .def_property_readonly("dim", &Clan::dim)
        .def("product", [](const Clan& c, const std::vector<std::string>& x, const std::vector<std::string>& y) {
            return format_vector(c.product(parse_vector(x), parse_vector(y)));
        })
        .def("validate", [](const Clan& c) { return to_json(validate_axioms(c)).dump(); })
        .def("member", [](const Clan& c, const std::vector<std::string>& x) {
            return std::string(to_string(peel_membership(c, parse_vector(x)).kind));
        })
        .def("to_json", [](const Clan& c) { return clan_to_json(c).dump(); });

    py::class_<QuadraticRep>(m, "QuadraticRep")
        .def_property_readonly("clan", &QuadraticRep::clan)
        .def_property_readonly("dim_e", &QuadraticRep::dim_e)
        .def_property_readonly("blocks", &QuadraticRep::blocks)
        .def("q", [](const QuadraticRep& r, const std::vector<std::string>& nu) { return format_vector(r.q(parse_vector(nu))); })
        .def("validate", [](const QuadraticRep& r, std::uint64_t seed) { return to_json(validate_rep(r, {16, seed})).dump(); },
             py::arg("seed") = 0)
        .def("classify", [](const QuadraticRep& r, std::uint64_t seed) { return to_json(classify(r, seed)).dump(); },
             py::arg("seed") = 0)
        .def("reconstruct", [](const QuadraticRep& r, const std::vector<std::string>& nu) {
            const RVector v = parse_vector(nu);
            const OrbitCertificate cert = reconstruct(r, v);
            Json out = to_json(cert);
            out["verified"] = check_certificate(r, v, cert).passed();
            return out.dump();
        })
        .def("verify", [](const QuadraticRep& r, std::size_t samples, std::uint64_t seed) {
            ImageOptions options;
            options.samples = samples;
            options.seed = seed;
            py::gil_scoped_release release;
            return to_json(verify_image(r, options)).dump();
        }, py::arg("samples") = 100, py::arg("seed") = 0);

    m.def("load_clan", &load_clan, py::arg("spec"));
    m.def("load_rep", &load_rep, py::arg("spec"), py::arg("clan"));
    m.def("builtin_rep", &builtin_rep, py::arg("name"));
    m.def("fixture_dir", [] { return fixture_dir().string(); });
}
