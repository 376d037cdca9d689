#include "chshlab/bell_suite.hpp"
#include "chshlab/core.hpp"
#include "chshlab/diffraction.hpp"
#include "chshlab/errors.hpp"
#include "chshlab/hv_model.hpp"
#include "chshlab/qm_model.hpp"
#include "chshlab/stats.hpp"
#include "cli.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace chshlab;

namespace {

AngleDeg angle(double degrees) { return AngleDeg::normalized(degrees); }

ChshSetting setting_from(const std::array<double, 4>& s) { return ChshSetting::from_degrees(s[0], s[1], s[2], s[3]); }

std::array<double, 4> setting_tuple(const ChshSetting& s) {
    return {s.a.degrees(), s.b.degrees(), s.a_prime.degrees(), s.b_prime.degrees()};
}

py::dict joint_dict(const JointQuantities& q) {
    py::dict d;
    d["pp"] = q.pp;
    d["nn"] = q.nn;
    d["pn"] = q.pn;
    d["np"] = q.np;
    return d;
}

}  // namespace

PYBIND11_MODULE(_chshlab, m) {
    m.doc() = "CHSH quantities for a local polarization model and the QM closed form";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

    m.attr("DEFAULT_GRID_SIZE") = kDefaultGridSize;

    m.def("normalize_angle", [](double raw) { return normalize_angle(raw).degrees(); }, py::arg("raw"));
    m.def(
        "make_grid",
        [](std::size_t n) {
            const PolarizationGrid grid = make_grid(n);
            std::vector<double> states;
            for (AngleDeg a : grid.states) states.push_back(a.degrees());
            return std::make_pair(states, grid.weights);
        },
        py::arg("n_states"), "Returns (states, weights).");
    m.def("equal_spacing_setting", [](double theta) { return setting_tuple(equal_spacing_setting(theta)); },
          py::arg("theta"));

    m.def("joint_quantities", [](double a, double b, double lambda) {
        return joint_dict(hv::joint_quantities(angle(a), angle(b), angle(lambda)));
    }, py::arg("a"), py::arg("b"), py::arg("lam"));
    m.def("expected_value_single", [](double a, double b, double lambda) {
        return hv::expected_value_single(angle(a), angle(b), angle(lambda));
    }, py::arg("a"), py::arg("b"), py::arg("lam"));
    m.def("chsh_single", [](const std::array<double, 4>& s, double lambda) {
        return hv::chsh_single(setting_from(s), angle(lambda));
    }, py::arg("setting"), py::arg("lam"));
    m.def("ensemble_joint", [](double a, double b, std::size_t n) {
        return joint_dict(hv::ensemble_joint(angle(a), angle(b), make_grid(n)));
    }, py::arg("a"), py::arg("b"), py::arg("n_states") = kDefaultGridSize);
    m.def("expected_value_population", [](double a, double b, std::size_t n) {
        return hv::expected_value_population(angle(a), angle(b), make_grid(n));
    }, py::arg("a"), py::arg("b"), py::arg("n_states") = kDefaultGridSize);
    m.def("chsh_population", [](const std::array<double, 4>& s, std::size_t n) {
        return hv::chsh_population(setting_from(s), make_grid(n));
    }, py::arg("setting"), py::arg("n_states") = kDefaultGridSize);
    m.def("mc_expected_value", [](double a, double b, std::uint64_t samples, std::uint64_t seed) {
        const hv::McEstimate est = hv::mc_expected_value(angle(a), angle(b), samples, seed);
        return std::make_pair(est.estimate, est.std_error);
    }, py::arg("a"), py::arg("b"), py::arg("samples"), py::arg("seed"), "Returns (estimate, std_error).");

    m.def("qm_joint", [](double a, double b) {
        const qm::QmJoint j = qm::qm_joint(angle(a), angle(b));
        return std::make_pair(j.pp, j.nn);
    }, py::arg("a"), py::arg("b"), "Returns (pp, nn).");
    m.def("qm_expected_value", [](double a, double b) { return qm::qm_expected_value(angle(a), angle(b)); },
          py::arg("a"), py::arg("b"));
    m.def("qm_chsh", [](const std::array<double, 4>& s) { return qm::qm_chsh(setting_from(s)); }, py::arg("setting"));

    m.def("scan_individual", [](const std::array<double, 4>& s, std::size_t n) {
        const bell::ScanResult r = bell::scan_individual(setting_from(s), make_grid(n));
        py::dict d;
        std::vector<double> per_state;
        for (const auto& st : r.per_state) per_state.push_back(st.s);
        d["per_state"] = per_state;
        d["s_min"] = r.s_min;
        d["s_max"] = r.s_max;
        d["population_s"] = r.population_s;
        return d;
    }, py::arg("setting"), py::arg("n_states") = kDefaultGridSize);
    m.def("run_population_suite", [](std::size_t n) {
        py::list rows;
        for (const auto& r : bell::run_population_suite(make_grid(n))) {
            py::dict d;
            d["test_index"] = r.test_index;
            d["theta"] = r.theta;
            d["s"] = r.s_value;
            d["paper_value"] = r.published_s;
            d["delta"] = r.delta;
            rows.append(d);
        }
        return rows;
    }, py::arg("n_states") = kDefaultGridSize);
    m.def("compare_models", [](double theta, std::size_t n) {
        const bell::ComparisonRow r = bell::compare_models(theta, make_grid(n));
        py::dict d;
        d["theta"] = r.theta;
        d["hv_s"] = r.hv_s;
        d["qm_s"] = r.qm_s;
        d["hv_violates"] = r.hv_violates;
        d["qm_violates"] = r.qm_violates;
        return d;
    }, py::arg("theta"), py::arg("n_states") = kDefaultGridSize);

    m.def("diffraction_angle", &diffraction::diffraction_angle, py::arg("order"), py::arg("wavelength_m"),
          py::arg("slit_spacing_m"));
    m.def("screen_position", &diffraction::screen_position, py::arg("theta_degrees"), py::arg("screen_distance_m"));
    m.def("median", [](std::vector<double> values) { return stats::median(std::move(values)); }, py::arg("values"));

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs the command-line interface in-process; returns (exit_code, stdout, stderr).");
}
