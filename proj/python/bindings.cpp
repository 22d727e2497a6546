#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "radplan/bspso.hpp"
#include "radplan/econ.hpp"
#include "radplan/planner.hpp"
#include "radplan/powerflow.hpp"
#include "radplan/report_io.hpp"

namespace py = pybind11;
using namespace radplan;

namespace {

py::dict report_dict(const EvaluationReport& r) {
    py::dict d;
    const auto& b = r.breakdown;
    d["cond_cost"] = b.cond_cost;
    d["loss_cost"] = b.loss_cost;
    d["cap_cost"] = b.cap_cost;
    d["dg_cost"] = b.dg_cost;
    d["per_year_ploss_kw"] = b.per_year_ploss;
    d["per_year_loss_cost"] = b.per_year_loss_cost;
    d["u_ind"] = r.u_ind;
    d["u_final"] = r.u_final;
    d["feasible"] = r.feasible;
    d["total_objective"] = r.total_objective;
    py::list violations;
    for (const auto& v : r.violations) {
        violations.append(py::dict(py::arg("year") = v.year, py::arg("kind") = v.kind,
                                   py::arg("location") = v.location, py::arg("value") = v.value,
                                   py::arg("limit") = v.limit));
    }
    d["violations"] = violations;
    return d;
}

py::dict plan_dict(const PlanResult& r) {
    py::dict d;
    d["best_design"] = r.best_design;
    d["report"] = report_dict(r.report);
    d["history"] = r.swarm_history;
    d["seed"] = r.seed;
    d["particles"] = r.particles;
    d["iterations"] = r.iterations;
    d["feasible_found"] = r.feasible_found;
    return d;
}

Scenario make_scenario(const std::string& mode, double omega) { return Scenario{parse_mode(mode), omega}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Radial distribution planning with a binary-selective particle swarm";

    py::register_exception<CaseError>(m, "CaseError", PyExc_ValueError);
    py::register_exception<TopologyError>(m, "TopologyError", PyExc_ValueError);

    py::class_<ConductorType>(m, "ConductorType")
        .def_readonly("id", &ConductorType::id)
        .def_readonly("r_per_km", &ConductorType::r_per_km)
        .def_readonly("x_per_km", &ConductorType::x_per_km)
        .def_readonly("price_per_km", &ConductorType::price_per_km)
        .def_readonly("i_max", &ConductorType::i_max);
    py::class_<CapacitorType>(m, "CapacitorType")
        .def_readonly("id", &CapacitorType::id)
        .def_readonly("q_kvar", &CapacitorType::q_kvar)
        .def_readonly("capital_cost", &CapacitorType::capital_cost)
        .def_readonly("install_cost", &CapacitorType::install_cost);
    py::class_<Bus>(m, "Bus")
        .def_readonly("id", &Bus::id)
        .def_readonly("s_load_kva", &Bus::s_load_kva)
        .def_readonly("power_factor", &Bus::power_factor);
    py::class_<Section>(m, "Section")
        .def_readonly("id", &Section::id)
        .def_readonly("from_bus", &Section::from_bus)
        .def_readonly("to_bus", &Section::to_bus)
        .def_readonly("length_km", &Section::length_km);

    py::class_<NetworkCase>(m, "NetworkCase")
        .def_readonly("buses", &NetworkCase::buses)
        .def_readonly("sections", &NetworkCase::sections)
        .def_readonly("conductor_catalog", &NetworkCase::conductor_catalog)
        .def_readonly("capacitor_catalog", &NetworkCase::capacitor_catalog)
        .def("to_json", &serialize_case)
        .def("sizable_sections", [](const NetworkCase& c) { return radial_topology(c).sizable_sections; })
        .def("candidate_buses", [](const NetworkCase& c) { return radial_topology(c).candidate_buses; })
        .def("__eq__", [](const NetworkCase& a, const NetworkCase& b) { return a == b; });

    py::class_<Design>(m, "Design")
        .def(py::init<>())
        .def_readwrite("conductor", &Design::conductor)
        .def_readwrite("capacitor", &Design::capacitor)
        .def_readwrite("dg", &Design::dg)
        .def("__eq__", [](const Design& a, const Design& b) { return a == b; });

    py::class_<pso::SwarmConfig>(m, "SwarmConfig")
        .def(py::init<>())
        .def_readwrite("n_particles", &pso::SwarmConfig::n_particles)
        .def_readwrite("it_max", &pso::SwarmConfig::it_max)
        .def_readwrite("c1", &pso::SwarmConfig::c1)
        .def_readwrite("c2", &pso::SwarmConfig::c2)
        .def_readwrite("w_max", &pso::SwarmConfig::w_max)
        .def_readwrite("w_min", &pso::SwarmConfig::w_min)
        .def_readwrite("v_max", &pso::SwarmConfig::v_max)
        .def_readwrite("seed", &pso::SwarmConfig::seed)
        .def_readwrite("threads", &pso::SwarmConfig::threads)
        .def_readwrite("binary_inertia", &pso::SwarmConfig::binary_inertia);

    m.def("builtin_case_26bus", &builtin_case_26bus);
    m.def("parse_case", [](const std::string& text) { return parse_case(text); }, py::arg("text"));
    m.def("load_case", &resolve_case, py::arg("path"), "Case-file path or 'builtin:26bus'");
    m.def("uniform_design", [](const NetworkCase& c, int conductor_id) {
        return uniform_design(c, radial_topology(c), conductor_id);
    }, py::arg("case"), py::arg("conductor_id") = 1);

    m.def("loss_factor", &econ::loss_factor);
    m.def("escalate", &econ::escalate);
    m.def("voltage_index", [](const std::vector<double>& u) { return econ::voltage_index(u); });
    m.def("objective", &econ::objective, py::arg("cond_cost"), py::arg("loss_cost"), py::arg("omega"));

    m.def("sigmoid", &pso::sigmoid);
    m.def("selective_position_update", [](double v, int n, double rd) {
        return pso::selective_position_update(v, pso::VariableSpec::selective(n), rd);
    }, py::arg("v"), py::arg("n"), py::arg("rd"));

    m.def("power_flow", [](const NetworkCase& c, const Design& d, int year) {
        const auto pu = to_per_unit(c);
        const auto inj = pf::year_injections(pu, d, year);
        const auto s = pf::solve(pu, d, inj);
        py::dict out;
        out["u"] = s.u;
        out["delta"] = s.delta;
        out["branch_i_amp"] = s.branch_i_amp;
        out["ploss_kw"] = s.ploss_kw;
        out["converged"] = s.converged;
        out["iterations"] = s.iterations;
        out["max_mismatch"] = s.max_mismatch;
        out["nodal_mismatch"] = pf::nodal_mismatch(s, pu, d, inj);
        return out;
    }, py::arg("case"), py::arg("design"), py::arg("year") = 0);

    m.def("evaluate", [](const NetworkCase& c, const Design& d, const std::string& scenario, double omega) {
        return report_dict(evaluate(d, c, make_scenario(scenario, omega)));
    }, py::arg("case"), py::arg("design"), py::arg("scenario") = "conductors", py::arg("omega") = 0.5);

    m.def("optimize", [](const NetworkCase& c, const std::string& scenario, double omega,
                         const pso::SwarmConfig& cfg) {
        PlanResult r;
        {
            py::gil_scoped_release release;
            r = optimize(c, make_scenario(scenario, omega), cfg);
        }
        return plan_dict(r);
    }, py::arg("case"), py::arg("scenario") = "conductors", py::arg("omega") = 0.5,
       py::arg("config") = pso::SwarmConfig{});

    m.def("exhaustive_oracle", [](const NetworkCase& c, const std::string& scenario, double omega) {
        PlanResult r;
        {
            py::gil_scoped_release release;
            r = exhaustive_oracle(c, make_scenario(scenario, omega));
        }
        return plan_dict(r);
    }, py::arg("case"), py::arg("scenario") = "conductors", py::arg("omega") = 0.5);

    m.def("omega_sweep", [](const NetworkCase& c, const std::vector<double>& grid, const pso::SwarmConfig& cfg) {
        SweepResult s;
        {
            py::gil_scoped_release release;
            s = omega_sweep(c, cfg, grid);
        }
        return io::sweep_csv(s);
    }, py::arg("case"), py::arg("grid"), py::arg("config") = pso::SwarmConfig{},
       "Runs the sweep and returns the sweep CSV text");
}
