#include "qnoise/apps.hpp"
#include "qnoise/cavity.hpp"
#include "qnoise/constraints.hpp"
#include "qnoise/netsolve.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace qnoise;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

FrequencyGrid to_grid(const RealArray& omega) {
    if (omega.ndim() != 1) throw InvalidArgument("omega must be one-dimensional");
    return FrequencyGrid(std::vector<double>(omega.data(), omega.data() + omega.size()));
}

py::array_t<cdouble> to_array(const ComplexSpectrum& s) {
    py::array_t<cdouble> out(static_cast<py::ssize_t>(s.size()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < s.size(); ++i) view(i) = s[i];
    return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<std::string> verdict_names(const std::vector<Verdict>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(to_string(x));
    return out;
}

py::dict susceptibility_dict(const SusceptibilitySet& s) {
    py::dict d;
    d["chi_ZF"] = to_array(s.chi_ZF);
    d["chi_FF"] = to_array(s.chi_FF);
    d["chi_ZZ"] = to_array(s.chi_ZZ);
    d["chi_FZ"] = to_array(s.chi_FZ);
    return d;
}

void add_spectra(py::dict& d, const SpectraSet& s) {
    d["S_ZZ"] = to_array(s.s_ZZ);
    d["S_ZF"] = to_array(s.s_ZF);
    d["S_FF"] = to_array(s.s_FF);
}

void add_normalized(py::dict& d, const NormalizedSpectra& n) {
    d["s_zz"] = to_array(n.s_zz);
    d["s_zF"] = to_array(n.s_zF);
}

CavityParams make_params(double gamma, double delta, double gbar, double theta, double hbar) {
    CavityParams p;
    p.gamma = gamma;
    p.delta = delta;
    p.gbar = gbar;
    p.theta = theta;
    p.units.hbar = hbar;
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_qnoise, m) {
    m.doc() = "Noise spectra and quantum-limit checks for linear detectors.";

    auto physics = py::register_exception<PhysicsError>(m, "PhysicsError", PyExc_RuntimeError);
    py::register_exception<NotValidDetector>(m, "NotValidDetector", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<GridMismatch>(m, "GridMismatch", PyExc_ValueError);
    py::register_exception<DegenerateReadout>(m, "DegenerateReadout", physics.ptr());
    py::register_exception<InstabilityError>(m, "InstabilityError", physics.ptr());
    py::register_exception<StabilityError>(m, "StabilityError", physics.ptr());
    py::register_exception<SingularNormalization>(m, "SingularNormalization", physics.ptr());

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init(&make_params), py::arg("gamma") = 1.0, py::arg("delta") = 0.0,
             py::arg("gbar") = 1.0, py::arg("theta") = 0.0, py::arg("hbar") = 1.0)
        .def_readwrite("gamma", &CavityParams::gamma)
        .def_readwrite("delta", &CavityParams::delta)
        .def_readwrite("gbar", &CavityParams::gbar)
        .def_readwrite("theta", &CavityParams::theta)
        .def_property_readonly("hbar", [](const CavityParams& p) { return p.units.hbar; })
        .def("__repr__", [](const CavityParams& p) {
            return "CavityParams(gamma=" + std::to_string(p.gamma) + ", delta=" + std::to_string(p.delta) +
                   ", gbar=" + std::to_string(p.gbar) + ", theta=" + std::to_string(p.theta) + ")";
        });

    py::class_<InputState>(m, "InputState")
        .def_static("vacuum", &InputState::vacuum)
        .def_static("thermal", py::overload_cast<double>(&InputState::thermal), py::arg("n_th"))
        .def_static("squeezed", [](double r, double phi) { return InputState::squeezed(std::polar(r, phi)); },
                    py::arg("r"), py::arg("phi") = 0.0)
        .def_property_readonly("is_pure", &InputState::is_pure);

    py::class_<MechOscillator>(m, "MechOscillator")
        .def_static("from_occupation",
                    [](double omega_m, double gamma_m, double mass, double n, double hbar) {
                        return MechOscillator::from_occupation(omega_m, gamma_m, mass, n, {hbar, 1.0});
                    },
                    py::arg("omega_m"), py::arg("gamma_m"), py::arg("mass"), py::arg("n_occupation"),
                    py::arg("hbar") = 1.0)
        .def_property_readonly("omega_m", &MechOscillator::omega_m)
        .def_property_readonly("gamma_m", &MechOscillator::gamma_m)
        .def_property_readonly("mass", &MechOscillator::mass)
        .def_property_readonly("occupation", &MechOscillator::occupation)
        .def("bare_susceptibility", &MechOscillator::bare_susceptibility, py::arg("omega"));

    m.def("symmetric_grid", [](double omega_max, int n_half) {
        const auto g = make_symmetric_grid(omega_max, n_half);
        return py::array_t<double>(static_cast<py::ssize_t>(g.size()), g.points().data());
    }, py::arg("omega_max"), py::arg("n_half"));

    m.def("cavity_spectra", [](const CavityParams& p, const RealArray& omega) {
        const auto grid = to_grid(omega);
        const auto susc = cavity_susceptibilities(p, grid);
        const auto spec = cavity_spectra(p, grid);
        auto d = susceptibility_dict(susc);
        add_spectra(d, spec);
        add_normalized(d, normalize(spec, susc));
        return d;
    }, py::arg("params"), py::arg("omega"),
       "Closed-form susceptibilities and symmetrized spectra for vacuum input.");

    m.def("network_spectra", [](const CavityParams& p, const RealArray& omega, const InputState& input) {
        const auto grid = to_grid(omega);
        const auto net = build_one_sided_cavity(p, input);
        const auto susc = solve_susceptibilities(net, grid);
        const auto spec = symmetrize(solve_unsym_spectra(net, grid));
        auto d = susceptibility_dict(susc);
        add_spectra(d, spec);
        add_normalized(d, normalize(spec, susc));
        return d;
    }, py::arg("params"), py::arg("omega"), py::arg("input") = InputState::vacuum(),
       "Cavity solved as a general network; omega must be a symmetric grid.");

    m.def("audit", [](const CavityParams& p, const RealArray& omega, const InputState& input) {
        const auto grid = to_grid(omega);
        const auto net = build_one_sided_cavity(p, input);
        const auto r = audit(solve_unsym_spectra(net, grid), solve_susceptibilities(net, grid));
        py::dict d;
        d["uncertainty_gap"] = to_array(r.uncertainty_gap);
        d["gap_scale"] = to_array(r.gap_scale);
        d["product_residual"] = to_array(r.product_residual);
        d["correlation_residual"] = to_array(r.correlation_residual);
        d["kubo_residual"] = to_array(r.kubo_residual);
        d["backaction_margin"] = to_array(r.backaction_margin);
        d["verdict"] = verdict_names(r.verdict);
        return d;
    }, py::arg("params"), py::arg("omega"), py::arg("input") = InputState::vacuum());

    m.def("mimo_check", [](const std::vector<CavityParams>& ps, const RealArray& omega,
                           std::vector<InputState> inputs) {
        const auto grid = to_grid(omega);
        const auto r = mimo_quantum_limit(solve_spectral_matrix(build_cavity_array(ps, std::move(inputs)), grid));
        py::dict d;
        d["det"] = to_array(r.det);
        d["scale"] = to_array(r.scale);
        d["verdict"] = verdict_names(r.verdict);
        return d;
    }, py::arg("params"), py::arg("omega"), py::arg("inputs"),
       "Determinant check for an array of uncoupled cavities.");

    m.def("qubit_rates", [](const CavityParams& p) {
        const auto r = qubit_rates(p);
        py::dict d;
        d["gamma_meas"] = r.gamma_meas;
        d["gamma_phi"] = r.gamma_phi;
        d["ratio"] = r.ratio;
        d["theta_opt"] = r.theta_opt;
        return d;
    }, py::arg("params"));

    m.def("optimal_angle", &optimal_angle, py::arg("gamma"), py::arg("delta"));

    m.def("sideband_asymmetry", [](const CavityParams& p, const MechOscillator& osc, std::size_t n_points) {
        const auto grid = sideband_grid(p, osc, n_points);
        const auto r = sideband_asymmetry(p, osc, grid);
        py::dict d;
        d["omega"] = py::array_t<double>(static_cast<py::ssize_t>(grid.size()), grid.points().data());
        d["spectrum_red"] = to_array(r.spectrum_red);
        d["spectrum_blue"] = to_array(r.spectrum_blue);
        d["area_red"] = r.area_red;
        d["area_blue"] = r.area_blue;
        d["ratio"] = r.ratio;
        d["warnings"] = r.warnings;
        return d;
    }, py::arg("params"), py::arg("oscillator"), py::arg("n_points") = 4001,
       "Blue/red sideband area ratio at detunings of plus and minus omega_m.");
}
