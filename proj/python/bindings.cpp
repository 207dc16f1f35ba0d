#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minlen/errors.hpp"
#include "minlen/fm.hpp"
#include "minlen/gup.hpp"
#include "minlen/specfun.hpp"
#include "minlen/spectrum.hpp"
#include "minlen/states.hpp"
#include "minlen/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace minlen;

namespace {

void bind_errors(py::module_& m) {
    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<UndeformedBranchError>(m, "UndeformedBranchError", domain.ptr());
    py::register_exception<NoBoundStateError>(m, "NoBoundStateError", domain.ptr());
    py::register_exception<ModelDegenerateError>(m, "ModelDegenerateError", domain.ptr());
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_RuntimeError);
}

void bind_specfun(py::module_& m) {
    m.def("gegenbauer", &specfun::gegenbauer, "n"_a, "lam"_a, "x"_a);
    m.def("gegenbauer_derivative", &specfun::gegenbauer_derivative, "n"_a, "lam"_a, "x"_a);
    m.def("gegenbauer_norm_squared", &specfun::gegenbauer_norm_squared, "n"_a, "t"_a);
    m.def("hyp2f1_terminating", &specfun::hyp2f1_terminating, "n"_a, "b"_a, "c"_a, "x"_a);
    m.def("ln_gamma", &specfun::ln_gamma, "x"_a);
    m.def(
        "gauss_legendre",
        [](int order) {
            const auto rule = specfun::gauss_legendre(order);
            return py::make_tuple(std::vector<double>(rule.nodes().begin(), rule.nodes().end()),
                                  std::vector<double>(rule.weights().begin(), rule.weights().end()));
        },
        "order"_a, "Nodes and weights of the Gauss-Legendre rule on [-1, 1].");
}

void bind_fm(py::module_& m) {
    py::class_<fm::FmProblem>(m, "FmProblem")
        .def(py::init<double, double, double, double, double, double>(), "k1"_a, "k2"_a, "k3"_a, "A"_a, "B"_a,
             "C"_a)
        .def_readonly("k1", &fm::FmProblem::k1)
        .def_readonly("k2", &fm::FmProblem::k2)
        .def_readonly("k3", &fm::FmProblem::k3)
        .def_readonly("A", &fm::FmProblem::A)
        .def_readonly("B", &fm::FmProblem::B)
        .def_readonly("C", &fm::FmProblem::C)
        .def("__repr__", [](const fm::FmProblem& p) {
            return py::str("FmProblem(k1={}, k2={}, k3={}, A={}, B={}, C={})").format(p.k1, p.k2, p.k3, p.A, p.B,
                                                                                     p.C);
        });
    m.def(
        "fm_exponents",
        [](const fm::FmProblem& p) {
            const auto e = fm::fm_exponents(p);
            return py::make_tuple(e.k4, e.k5);
        },
        "problem"_a);
    m.def("fm_quantization_residual", &fm::fm_quantization_residual, "problem"_a, "n"_a);
    m.def("fm_quartic_condition", &fm::fm_quartic_condition, "problem"_a, "n"_a);
    m.def("fm_wavefunction", &fm::fm_wavefunction, "problem"_a, "n"_a, "s"_a);
}

void bind_gup(py::module_& m) {
    py::class_<DeformedAlgebra>(m, "DeformedAlgebra")
        .def(py::init<double, double, double>(), "eta"_a, "gamma"_a = 0.0, "hbar"_a = 1.0)
        .def_property_readonly("eta", &DeformedAlgebra::eta)
        .def_property_readonly("gamma", &DeformedAlgebra::gamma)
        .def_property_readonly("hbar", &DeformedAlgebra::hbar)
        .def_property_readonly("alpha", &DeformedAlgebra::alpha)
        .def_property_readonly("undeformed", &DeformedAlgebra::undeformed);

    py::class_<OscillatorSystem>(m, "OscillatorSystem")
        .def(py::init<double, double, DeformedAlgebra>(), "mass"_a, "omega"_a, "algebra"_a)
        .def(py::init([](double mass, double omega, double eta, double gamma, double hbar) {
                 return OscillatorSystem(mass, omega, DeformedAlgebra(eta, gamma, hbar));
             }),
             "mass"_a = 1.0, "omega"_a = 1.0, "eta"_a = 0.1, "gamma"_a = 0.0, "hbar"_a = 1.0)
        .def_property_readonly("mass", &OscillatorSystem::mass)
        .def_property_readonly("omega", &OscillatorSystem::omega)
        .def_property_readonly("eta", &OscillatorSystem::eta)
        .def_property_readonly("gamma", &OscillatorSystem::gamma)
        .def_property_readonly("hbar", &OscillatorSystem::hbar)
        .def_property_readonly("algebra", &OscillatorSystem::algebra);

    m.def("minimal_length", &minimal_length, "algebra"_a);
    m.def("uncertainty_bound", &uncertainty_bound, "algebra"_a, "delta_p"_a);
    m.def("scalar_weight", &scalar_weight, "algebra"_a, "p"_a);
    m.def("rho_of_p", &rho_of_p, "algebra"_a, "p"_a);
    m.def("p_of_rho", &p_of_rho, "algebra"_a, "rho"_a);
    m.def(
        "tilde_params",
        [](const OscillatorSystem& s, double e) {
            const auto t = tilde_params(s, e);
            return py::make_tuple(t.a_tilde, t.b_tilde);
        },
        "system"_a, "energy_rel"_a);
    m.def("fm_problem_of", &fm_problem_of, "system"_a, "energy_rel"_a);
    m.def("v_exponent", &v_exponent, "system"_a, "energy_rel"_a);
    m.def(
        "nr_parameters",
        [](const OscillatorSystem& s) {
            const auto p = nr_parameters(s);
            return py::make_tuple(p.v, p.lambda);
        },
        "system"_a);
    m.def(
        "ode_residual",
        [](const OscillatorSystem& s, double e, const std::function<double(double)>& f, double p) {
            return ode_residual(s, e, f, p);
        },
        "system"_a, "energy_rel"_a, "state_eval"_a, "p"_a);
}

void bind_spectrum(py::module_& m) {
    py::enum_<SolveMethod>(m, "SolveMethod")
        .value("fixed_point", SolveMethod::fixed_point)
        .value("bisection", SolveMethod::bisection)
        .value("closed_form", SolveMethod::closed_form);

    py::class_<SpectrumResult>(m, "SpectrumResult")
        .def_readonly("n", &SpectrumResult::n)
        .def_readonly("energy", &SpectrumResult::energy)
        .def_readonly("residual", &SpectrumResult::residual)
        .def_readonly("iterations", &SpectrumResult::iterations)
        .def_readonly("method", &SpectrumResult::method)
        .def("__repr__", [](const SpectrumResult& r) {
            return py::str("SpectrumResult(n={}, energy={!r}, method={})")
                .format(r.n, r.energy, std::string(to_string(r.method)));
        });

    m.def("rel_residual", &rel_residual, "system"_a, "n"_a, "energy"_a);
    m.def("energy_relativistic", &energy_relativistic, "system"_a, "n"_a);
    m.def("energy_relativistic_bisection", &energy_relativistic_bisection, "system"_a, "n"_a);
    m.def("energy_nonrel", &energy_nonrel, "system"_a, "n"_a);
    m.def("nr_limit_of_relativistic", &nr_limit_of_relativistic, "system"_a, "n"_a);
    m.def(
        "ratio_sweep",
        [](double mass, double omega, const std::vector<int>& n_values, const std::vector<double>& xi_grid,
           double hbar, double gamma) {
            py::list out;
            for (const auto& r : ratio_sweep({mass, omega, hbar, gamma}, n_values, xi_grid)) {
                out.append(py::make_tuple(r.xi, r.n, r.e_n, r.e_0, r.ratio));
            }
            return out;
        },
        "mass"_a, "omega"_a, "n_values"_a, "xi_grid"_a, "hbar"_a = 1.0, "gamma"_a = 0.0,
        "Rows (xi, n, E_n, E_0, ratio) of the nonrelativistic sweep, ordered by xi then n.");
}

void bind_states(py::module_& m) {
    py::enum_<Branch>(m, "Branch")
        .value("relativistic", Branch::relativistic)
        .value("nonrelativistic", Branch::nonrelativistic);
    py::enum_<LadderDirection>(m, "LadderDirection")
        .value("raise_", LadderDirection::raise)
        .value("lower", LadderDirection::lower);
    py::enum_<RaisingForm>(m, "RaisingForm")
        .value("with_rho", RaisingForm::with_rho)
        .value("literal", RaisingForm::literal);

    py::class_<OscillatorState>(m, "OscillatorState")
        .def_property_readonly("n", &OscillatorState::n)
        .def_property_readonly("v", &OscillatorState::v)
        .def_property_readonly("lam", &OscillatorState::lambda)
        .def_property_readonly("norm", &OscillatorState::norm)
        .def_property_readonly("branch", &OscillatorState::branch)
        .def_property_readonly("system", &OscillatorState::system)
        .def("__call__", &OscillatorState::operator(), "rho"_a)
        .def("at_momentum", &OscillatorState::at_momentum, "p"_a)
        .def(
            "sample",
            [](const OscillatorState& s, const std::vector<double>& rho) {
                std::vector<double> out;
                out.reserve(rho.size());
                for (double r : rho) out.push_back(s(r));
                return out;
            },
            "rho"_a);

    m.def("make_state", &make_state, "system"_a, "n"_a, "branch"_a = Branch::relativistic,
          "quad_order"_a = specfun::kDefaultQuadratureOrder);
    m.def("ladder_partner", &ladder_partner, "state"_a, "n"_a, "quad_order"_a = specfun::kDefaultQuadratureOrder);
    m.def("inner_product", &inner_product, "a"_a, "b"_a, "order"_a = specfun::kDefaultQuadratureOrder);
    m.def("reference_norm", &reference_norm, "state"_a);
    m.def(
        "ladder_coeffs",
        [](int n, double lambda) {
            const auto c = ladder_coeffs(n, lambda);
            return py::dict("l_minus"_a = c.l_minus, "l_plus"_a = c.l_plus, "l_zero"_a = c.l_zero);
        },
        "n"_a, "lam"_a);
    m.def("apply_ladder", &apply_ladder, "state"_a, "direction"_a, "rho"_a, "form"_a = RaisingForm::with_rho);
    m.def(
        "su11_check",
        [](double lambda, int n_max) {
            const auto r = su11_check(lambda, n_max);
            return py::dict("commutator"_a = r.commutator_deviation, "raise_weight"_a = r.raise_weight_deviation,
                            "lower_weight"_a = r.lower_weight_deviation, "casimir"_a = r.casimir_deviation,
                            "casimir_commutator"_a = r.casimir_commutator_deviation,
                            "number_operator"_a = r.number_operator_deviation, "max"_a = r.max_deviation());
        },
        "lam"_a, "n_max"_a);
}

void bind_verify(py::module_& m) {
    m.def(
        "verify",
        [](const OscillatorSystem& system, int n_max, int quad_order, RaisingForm form) {
            py::list out;
            for (const auto& r : run_verification({system, n_max, quad_order, form})) {
                out.append(py::dict("name"_a = r.name, "status"_a = std::string(to_string(r.status)),
                                    "deviation"_a = r.deviation, "threshold"_a = r.threshold, "note"_a = r.note));
            }
            return out;
        },
        "system"_a, "n_max"_a = 8, "quad_order"_a = specfun::kDefaultQuadratureOrder,
        "raising_form"_a = RaisingForm::with_rho, "Run the invariant suite; one dict per check.");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Harmonic oscillator with a minimal-length deformed commutator";
    bind_errors(m);
    bind_specfun(m);
    bind_fm(m);
    bind_gup(m);
    bind_spectrum(m);
    bind_states(m);
    bind_verify(m);
}
