#include "radplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radplan {

std::string to_string(Scenario::Mode m) {
    return m == Scenario::Mode::full ? "full" : "conductors";
}

Scenario::Mode parse_mode(const std::string& s) {
    if (s == "full") return Scenario::Mode::full;
    if (s == "conductors" || s == "conductors_only") return Scenario::Mode::conductors_only;
    throw std::invalid_argument("unknown scenario '" + s + "' (expected conductors|full)");
}

Evaluator::Evaluator(const NetworkCase& c) : pu_(to_per_unit(c)) {}

namespace {

void check_budgets(const NetworkCase& c, double cap_cost, double dg_cost, std::vector<pf::Violation>& out) {
    const auto& e = c.economics;
    if (cap_cost > e.cap_budget) out.push_back({0, "capacitor budget", -1, cap_cost, e.cap_budget});
    if (dg_cost > e.dg_budget) out.push_back({0, "dg budget", -1, dg_cost, e.dg_budget});
}

double max_loading(const pf::PowerFlowSolution& s, const NetworkCase& c, const Design& d) {
    double worst = 0.0;
    for (std::size_t k = 0; k < d.conductor.size(); ++k) {
        worst = std::max(worst, s.branch_i_amp[k] / c.conductor(d.conductor[k]).i_max);
    }
    return worst;
}

}  // namespace

EvaluationReport Evaluator::evaluate(const Design& d, const Scenario& sc) const {
    const auto& c = pu_.physical;
    check_design(d, c, pu_.topology);
    const int horizon = c.economics.horizon_years;

    EvaluationReport r;
    auto& cost = r.breakdown;
    cost.cond_cost = econ::conductor_capital(d, c, pu_.topology);
    cost.cap_cost = econ::capacitor_cost(d, c.capacitor_catalog);
    cost.dg_cost = econ::dg_cost(d, c.dg_type);
    check_budgets(c, cost.cap_cost, cost.dg_cost, r.violations);

    cost.per_year_ploss.assign(horizon, 0.0);
    for (int t = 1; t <= horizon; ++t) {
        const auto inj = pf::year_injections(pu_, d, t);
        const auto sol = pf::solve(pu_, d, inj);
        cost.per_year_ploss[t - 1] = sol.ploss_kw;

        YearSummary ys;
        ys.year = t;
        ys.converged = sol.converged;
        ys.iterations = sol.iterations;
        ys.ploss_kw = sol.ploss_kw;
        ys.min_u = *std::min_element(sol.u.begin(), sol.u.end());
        ys.max_loading = max_loading(sol, c, d);
        r.per_year.push_back(ys);

        if (!sol.converged) {
            r.violations.push_back({t, "divergence", -1, sol.max_mismatch, 1e-8});
        } else {
            auto v = pf::check_limits(sol, pu_, d, t);
            r.violations.insert(r.violations.end(), v.begin(), v.end());
        }
        if (t == horizon) {
            r.u_final = sol.u;
            r.u_ind = econ::voltage_index(sol.u);
        }
    }

    const auto loss = econ::loss_cost_horizon(cost.per_year_ploss, c.economics);
    cost.loss_cost = loss.total;
    cost.per_year_loss_cost = loss.per_year;
    r.feasible = r.violations.empty();
    r.total_objective = econ::objective(cost.cond_cost, cost.loss_cost, sc.omega);
    return r;
}

double violation_measure(std::span<const pf::Violation> vs) {
    double total = 0.0;
    for (const auto& v : vs) {
        if (v.kind == "divergence") {
            total += 1e3;
        } else {
            total += std::abs(v.value - v.limit) / std::max(std::abs(v.limit), 1e-12);
        }
    }
    return total;
}

pso::Evaluation Evaluator::score(const Design& d, const Scenario& sc) const {
    const auto& c = pu_.physical;
    const int horizon = c.economics.horizon_years;
    const double cond = econ::conductor_capital(d, c, pu_.topology);
    std::vector<pf::Violation> found;
    check_budgets(c, econ::capacitor_cost(d, c.capacitor_catalog), econ::dg_cost(d, c.dg_type), found);

    std::vector<double> ploss(horizon, 0.0);
    for (int t = horizon; t >= 1; --t) {
        const auto sol = pf::solve(pu_, d, pf::year_injections(pu_, d, t));
        if (!sol.converged) {
            found.push_back({t, "divergence", -1, sol.max_mismatch, 1e-8});
            continue;
        }
        auto v = pf::check_limits(sol, pu_, d, t);
        found.insert(found.end(), v.begin(), v.end());
        ploss[t - 1] = sol.ploss_kw;
    }
    if (!found.empty()) return {0.0, false, violation_measure(found)};
    const auto loss = econ::loss_cost_horizon(ploss, c.economics);
    return {econ::objective(cond, loss.total, sc.omega), true, 0.0};
}

std::vector<pso::VariableSpec> encode_specs(const NetworkCase& c, const Scenario& sc) {
    const auto topo = radial_topology(c);
    std::vector<pso::VariableSpec> specs;
    const int n_cond = static_cast<int>(c.conductor_catalog.size());
    const int n_cap = static_cast<int>(c.capacitor_catalog.size());
    if (n_cond < 2) throw std::invalid_argument("conductor catalog needs at least two types to optimize");
    const auto [c_first, c_last] = kConductorThresholds;
    specs.assign(topo.sizable_sections.size(), pso::VariableSpec::selective(n_cond, c_first, c_last));
    if (sc.mode == Scenario::Mode::full) {
        if (n_cap < 2) throw std::invalid_argument("capacitor catalog needs a size besides 'none'");
        specs.insert(specs.end(), topo.candidate_buses.size(),
                     pso::VariableSpec::selective(n_cap, kCapacitorThresholds[0], kCapacitorThresholds[1]));
        specs.insert(specs.end(), topo.candidate_buses.size(), pso::VariableSpec::binary());
    }
    return specs;
}

namespace {

Design decode_with(std::span<const int> position, const NetworkCase& c, const Topology& topo,
                   const Scenario& sc) {
    const std::size_t n_sec = topo.sizable_sections.size();
    const std::size_t n_bus = topo.candidate_buses.size();
    const std::size_t expected = sc.mode == Scenario::Mode::full ? n_sec + 2 * n_bus : n_sec;
    if (position.size() != expected) {
        throw std::invalid_argument("position has " + std::to_string(position.size()) + " entries, layout needs " +
                                    std::to_string(expected));
    }
    Design d = uniform_design(c, topo, 1);
    std::copy_n(position.begin(), n_sec, d.conductor.begin());
    if (sc.mode == Scenario::Mode::full) {
        std::copy_n(position.begin() + n_sec, n_bus, d.capacitor.begin());
        std::copy_n(position.begin() + n_sec + n_bus, n_bus, d.dg.begin());
    }
    check_design(d, c, topo);
    return d;
}

// Odometer step, last variable fastest. False after the final position.
bool next_position(std::vector<int>& pos, std::span<const pso::VariableSpec> specs) {
    for (std::size_t i = pos.size(); i-- > 0;) {
        if (pos[i] < specs[i].highest()) {
            ++pos[i];
            return true;
        }
        pos[i] = specs[i].lowest();
    }
    return false;
}

}  // namespace

Design decode(std::span<const int> position, const NetworkCase& c, const Scenario& sc) {
    return decode_with(position, c, radial_topology(c), sc);
}

std::vector<int> encode(const Design& d, const NetworkCase& c, const Scenario& sc) {
    check_design(d, c, radial_topology(c));
    std::vector<int> pos = d.conductor;
    if (sc.mode == Scenario::Mode::full) {
        pos.insert(pos.end(), d.capacitor.begin(), d.capacitor.end());
        pos.insert(pos.end(), d.dg.begin(), d.dg.end());
    }
    return pos;
}

EvaluationReport evaluate(const Design& d, const NetworkCase& c, const Scenario& sc) {
    return Evaluator(c).evaluate(d, sc);
}

PlanResult optimize(const NetworkCase& c, const Scenario& sc, const pso::SwarmConfig& cfg) {
    const Evaluator ev(c);
    const auto specs = encode_specs(c, sc);
    const auto& topo = ev.topology();
    auto objective = [&](std::span<const int> pos) { return ev.score(decode_with(pos, c, topo, sc), sc); };
    const auto best = pso::run(objective, specs, cfg);

    PlanResult out;
    out.best_design = decode_with(best.gbest_position, c, topo, sc);
    out.report = ev.evaluate(out.best_design, sc);
    out.swarm_history = best.objective_history;
    out.scenario = sc;
    out.seed = cfg.seed;
    out.particles = cfg.n_particles;
    out.iterations = cfg.it_max;
    out.feasible_found = best.feasible_found;
    return out;
}

SweepResult omega_sweep(const NetworkCase& c, const pso::SwarmConfig& cfg, std::span<const double> grid) {
    SweepResult out;
    for (double omega : grid) {
        if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("omega grid values must lie in [0, 1]");
        const auto plan = optimize(c, Scenario{Scenario::Mode::conductors_only, omega}, cfg);
        const auto& b = plan.report.breakdown;
        double total_kw = 0.0;
        for (double p : b.per_year_ploss) total_kw += p;
        out.rows.push_back({omega, b.cond_cost, b.loss_cost, total_kw, plan.report.u_ind, plan.report.feasible,
                            plan.best_design.conductor});
    }
    return out;
}

double search_space_size(const NetworkCase& c, const Scenario& sc) {
    double size = 1.0;
    for (const auto& s : encode_specs(c, sc)) size *= s.highest() - s.lowest() + 1;
    return size;
}

PlanResult exhaustive_oracle(const NetworkCase& c, const Scenario& sc) {
    const double size = search_space_size(c, sc);
    if (size > oracle_limit) {
        throw std::length_error("search space of " + std::to_string(size) + " designs exceeds the oracle limit");
    }
    const Evaluator ev(c);
    const auto& topo = ev.topology();
    const auto specs = encode_specs(c, sc);

    std::vector<int> pos(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) pos[i] = specs[i].lowest();
    std::vector<int> best_pos = pos;
    pso::Evaluation best{0.0, false};
    long long visited = 0;

    while (true) {
        const auto e = ev.score(decode_with(pos, c, topo, sc), sc);
        ++visited;
        if (e.feasible && (!best.feasible || e.objective < best.objective)) {
            best = e;
            best_pos = pos;
        }
        if (!next_position(pos, specs)) break;
    }

    PlanResult out;
    out.best_design = decode_with(best_pos, c, topo, sc);
    out.report = ev.evaluate(out.best_design, sc);
    out.scenario = sc;
    out.iterations = static_cast<int>(visited);
    out.feasible_found = best.feasible;
    return out;
}

}  // namespace radplan
