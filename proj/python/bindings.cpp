#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "genfield/hamiltonian.hpp"
#include "genfield/suites.hpp"

namespace py = pybind11;
using namespace genfield;

namespace {

std::array<double, 3> as_point(const std::vector<double>& x) {
    if (x.empty() || x.size() > 3) throw std::invalid_argument("point needs 1..3 coordinates");
    std::array<double, 3> out{0.0, 0.0, 0.0};
    std::copy(x.begin(), x.end(), out.begin());
    return out;
}

FieldKind kind_from_name(const std::string& name) {
    if (name == "phi") return FieldKind::Phi;
    if (name == "pi") return FieldKind::Pi;
    if (name == "grad_phi") return FieldKind::GradPhi;
    if (name == "phi_plus") return FieldKind::PhiPlus;
    if (name == "phi_minus") return FieldKind::PhiMinus;
    if (name == "pi_plus") return FieldKind::PiPlus;
    if (name == "pi_minus") return FieldKind::PiMinus;
    throw std::invalid_argument("unknown field kind: " + name);
}

}  // namespace

PYBIND11_MODULE(genfield_py, m) {
    m.doc() = "operator kernels for the truncated scalar boson field";

    py::class_<MomentumGrid>(m, "MomentumGrid")
        .def(py::init<int, int, double, double>(), py::arg("d"), py::arg("K"), py::arg("L"),
             py::arg("m"))
        .def_property_readonly("n_modes", &MomentumGrid::n_modes)
        .def_property_readonly("dimension", &MomentumGrid::dimension)
        .def("omega", &MomentumGrid::omega, py::arg("mode"))
        .def("weight", &MomentumGrid::weight, py::arg("mode"))
        .def("p", [](const MomentumGrid& g, int mode) {
            const auto& a = g.p(mode);
            return std::vector<double>(a.begin(), a.begin() + g.dimension());
        });

    py::class_<OccupationBasis>(m, "OccupationBasis")
        .def(py::init<int, int>(), py::arg("n_modes"), py::arg("n_max"))
        .def_property_readonly("dim", &OccupationBasis::dim)
        .def("total", &OccupationBasis::total, py::arg("index"))
        .def("occupations", [](const OccupationBasis& b, int index) {
            const auto& occ = b.occupations(index);
            return std::vector<int>(occ.begin(), occ.end());
        });

    m.def(
        "sigma_inner",
        [](const MomentumGrid& g, const std::vector<cplx>& f, const std::vector<cplx>& h) {
            return sigma_inner(g, f, h);
        },
        "one-particle inner product with the 1/omega spectral weight");

    m.def(
        "field_matrix",
        [](const MomentumGrid& g, const OccupationBasis& b, const std::string& profile,
           const std::string& kind, double t, const std::vector<double>& x, int axis) {
            return assemble_field(g, b, ConventionProfile::from_name(profile),
                                  kind_from_name(kind), t, as_point(x), axis)
                .matrix;
        },
        py::arg("grid"), py::arg("basis"), py::arg("profile"), py::arg("kind"), py::arg("t"),
        py::arg("x"), py::arg("axis") = 0);

    m.def(
        "ccr_constant",
        [](const MomentumGrid& g, const OccupationBasis& b, const std::string& profile, double t,
           const std::vector<double>& x1, const std::vector<double>& x2) {
            const CcrCheck c = ccr_check(g, b, ConventionProfile::from_name(profile), t,
                                         as_point(x1), as_point(x2));
            py::dict out;
            out["is_identity_multiple"] = c.is_identity_multiple;
            out["measured"] = c.c_measured;
            out["predicted"] = c.c_predicted;
            out["canonical"] = c.c_canonical;
            out["max_deviation"] = c.max_deviation;
            return out;
        },
        py::arg("grid"), py::arg("basis"), py::arg("profile"), py::arg("t"), py::arg("x1"),
        py::arg("x2"));

    m.def(
        "kg_residual",
        [](const MomentumGrid& g, const OccupationBasis& b, const std::string& profile, double t,
           const std::vector<double>& x) {
            return kg_residual(g, b, ConventionProfile::from_name(profile), t, as_point(x));
        },
        py::arg("grid"), py::arg("basis"), py::arg("profile"), py::arg("t"), py::arg("x"));

    m.def(
        "free_hamiltonian",
        [](const MomentumGrid& g, const OccupationBasis& b, const std::string& profile,
           double t) {
            const HamiltonianBundle h =
                build_free_hamiltonian(g, b, ConventionProfile::from_name(profile), t);
            py::dict out;
            out["product"] = h.h_product;
            out["mode"] = h.h_mode;
            out["wick"] = h.h_wick;
            out["e0"] = h.e0;
            return out;
        },
        py::arg("grid"), py::arg("basis"), py::arg("profile"), py::arg("t") = 0.0);

    m.def(
        "phi4_matrix",
        [](const MomentumGrid& g, const OccupationBasis& b, const std::string& profile,
           double lam, double t) {
            return build_phi4(g, b, ConventionProfile::from_name(profile), lam, t);
        },
        py::arg("grid"), py::arg("basis"), py::arg("profile"), py::arg("lambda"),
        py::arg("t") = 0.0);

    m.def("restricted_spectrum", &restricted_spectrum, py::arg("matrix"), py::arg("basis"),
          py::arg("cap"));
    m.def(
        "oscillator_spectrum",
        [](const MomentumGrid& g, const std::string& profile, const OccupationBasis& b,
           int cap) {
            return oscillator_spectrum(g, ConventionProfile::from_name(profile), b, cap);
        },
        py::arg("grid"), py::arg("profile"), py::arg("basis"), py::arg("cap"));

    m.def(
        "translation_residual",
        [](const MomentumGrid& g, const OccupationBasis& b, const std::string& profile, double t,
           const std::vector<double>& x, const std::vector<double>& a) {
            return translation_check(g, b, ConventionProfile::from_name(profile), t, as_point(x),
                                     as_point(a));
        },
        py::arg("grid"), py::arg("basis"), py::arg("profile"), py::arg("t"), py::arg("x"),
        py::arg("a"));

    m.def("normal_order_text", [](const std::string& text) {
        return print_ladder(normal_order(parse_ladder(text)));
    });
    m.def("wick_order_text",
          [](const std::string& text) { return print_ladder(wick_order(parse_ladder(text))); });

    m.def("catalog", [] { return catalog_names(); });
    m.def(
        "classify_net",
        [](const std::string& name) {
            const Classification c = classify(catalog_net(name), EpsSchedule{});
            py::dict out;
            out["verdict"] = std::string(net_verdict_name(c.verdict));
            out["n_hat"] = std::isfinite(c.n_hat) ? c.n_hat : 0.0;
            out["window_stable"] = c.window_stable;
            out["note"] = c.note;
            return out;
        },
        py::arg("name"));

    m.def("config_schema", [] { return config_schema().dump(2); });
    m.def(
        "run_config",
        [](const std::string& text) {
            const RunConfig cfg = parse_config_text(text);
            return report_to_json(run_suites(cfg)).dump(2);
        },
        "parse a JSON config string, run its suites, return the JSON report");
}
