#include "radplan/powerflow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radplan/econ.hpp"

namespace radplan::pf {

Admittance branch_admittance(const ConductorType& conductor, double length_km) {
    if (!(length_km > 0.0)) {
        throw std::invalid_argument("branch admittance needs a positive length; merge zero-length sections");
    }
    const cplx y = 1.0 / (length_km * cplx(conductor.r_per_km, conductor.x_per_km));
    return {y.real(), y.imag()};
}

YearInjections year_injections(const PerUnitCase& pu, const Design& d, int year) {
    const auto& c = pu.physical;
    check_design(d, c, pu.topology);
    const double growth = c.economics.load_growth;

    YearInjections inj;
    inj.demand.reserve(pu.load_pu.size());
    for (const auto& s : pu.load_pu) {
        inj.demand.emplace_back(econ::demand_at_year(s.real(), growth, year),
                                econ::demand_at_year(s.imag(), growth, year));
    }
    inj.dg.assign(pu.load_pu.size(), cplx{});
    inj.capacitor_q.assign(pu.load_pu.size(), 0.0);

    const auto& candidates = pu.topology.candidate_buses;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        const int idx = pu.bus_index(candidates[j]);
        if (d.dg[j]) {
            inj.dg[idx] = cplx(pu.kw_to_pu(c.dg_type.p_rated_kw), pu.kw_to_pu(c.dg_type.q_rated_kvar));
        }
        inj.capacitor_q[idx] = pu.kw_to_pu(c.capacitor(d.capacitor[j]).q_kvar);
    }
    return inj;
}

namespace {

std::vector<cplx> branch_impedances(const PerUnitCase& pu, const Design& d) {
    std::vector<cplx> z;
    z.reserve(pu.branches.size());
    for (std::size_t k = 0; k < pu.branches.size(); ++k) {
        const auto& cond = pu.physical.conductor(d.conductor[k]);
        const double len = pu.branches[k].length_km;
        z.emplace_back(pu.ohm_to_pu(len * cond.r_per_km), pu.ohm_to_pu(len * cond.x_per_km));
    }
    return z;
}

// Net complex demand per electrical node: load - DG - j Qc.
std::vector<cplx> node_demand(const PerUnitCase& pu, const YearInjections& inj) {
    std::vector<cplx> s(pu.nodes.size());
    for (std::size_t b = 0; b < pu.node_of_bus.size(); ++b) {
        s[pu.node_of_bus[b]] += inj.demand[b] - inj.dg[b] - cplx(0.0, inj.capacitor_q[b]);
    }
    return s;
}

}  // namespace

PowerFlowSolution solve(const PerUnitCase& pu, const Design& d, const YearInjections& inj,
                        const SolveOptions& opt) {
    check_design(d, pu.physical, pu.topology);
    const auto& nodes = pu.nodes;
    const std::size_t n = nodes.size();
    const auto z = branch_impedances(pu, d);
    const auto demand = node_demand(pu, inj);

    std::vector<cplx> v(n, cplx(1.0, 0.0));
    std::vector<cplx> acc(n);
    std::vector<cplx> injected(n);

    PowerFlowSolution sol;
    for (int it = 1; it <= opt.max_iterations; ++it) {
        sol.iterations = it;

        // backward: accumulate load currents toward the root
        for (std::size_t i = 1; i < n; ++i) acc[i] = std::conj(demand[i] / v[i]);
        for (std::size_t i = n - 1; i >= 1; --i) {
            if (nodes[i].parent > 0) acc[nodes[i].parent] += acc[i];
        }
        // forward: voltage drops from the root outward
        for (std::size_t i = 1; i < n; ++i) {
            v[i] = v[nodes[i].parent] - z[nodes[i].branch] * acc[i];
        }

        // complex-power mismatch against the specified net injection
        std::fill(injected.begin(), injected.end(), cplx{});
        for (std::size_t i = 1; i < n; ++i) {
            const cplx i_branch = (v[nodes[i].parent] - v[i]) / z[nodes[i].branch];
            injected[nodes[i].parent] += i_branch;
            injected[i] -= i_branch;
        }
        double worst = 0.0;
        bool finite = true;
        for (std::size_t i = 1; i < n; ++i) {
            const cplx s_calc = v[i] * std::conj(injected[i]);
            const double m = std::abs(s_calc + demand[i]);
            if (!std::isfinite(m)) finite = false;
            worst = std::max(worst, m);
        }
        sol.max_mismatch = finite ? worst : INFINITY;
        if (!finite) break;
        if (worst <= opt.tolerance) {
            sol.converged = true;
            break;
        }
    }

    const std::size_t n_bus = pu.node_of_bus.size();
    sol.u.resize(n_bus);
    sol.delta.resize(n_bus);
    for (std::size_t b = 0; b < n_bus; ++b) {
        const cplx vb = v[pu.node_of_bus[b]];
        sol.u[b] = std::abs(vb);
        sol.delta[b] = std::arg(vb);
    }

    sol.branch_i_pu.assign(pu.branches.size(), 0.0);
    sol.branch_i_amp.assign(pu.branches.size(), 0.0);
    cplx from_root{};
    for (std::size_t i = 1; i < n; ++i) {
        const int k = nodes[i].branch;
        const cplx i_branch = (v[nodes[i].parent] - v[i]) / z[k];
        sol.branch_i_pu[k] = std::abs(i_branch);
        sol.branch_i_amp[k] = pu.pu_to_amp(sol.branch_i_pu[k]);
        if (nodes[i].parent == 0) from_root += i_branch;
    }
    const cplx s_slack = v[0] * std::conj(from_root) + demand[0];
    sol.p_slack = s_slack.real();
    sol.q_slack = s_slack.imag();
    sol.ploss_kw = total_loss(sol, pu, inj);
    return sol;
}

PowerFlowSolution solve(const PerUnitCase& pu, const Design& d, int year, const SolveOptions& opt) {
    return solve(pu, d, year_injections(pu, d, year), opt);
}

double nodal_mismatch(const PowerFlowSolution& s, const PerUnitCase& pu, const Design& d,
                      const YearInjections& inj) {
    const auto& nodes = pu.nodes;
    const std::size_t n = nodes.size();

    struct Entry {
        int other;
        double g, b;
    };
    std::vector<double> g_self(n, 0.0), b_self(n, 0.0);
    std::vector<std::vector<Entry>> off(n);
    for (std::size_t k = 0; k < pu.branches.size(); ++k) {
        const auto& br = pu.branches[k];
        const auto y = branch_admittance(pu.physical.conductor(d.conductor[k]), br.length_km);
        const double g = y.g * pu.z_base_ohm;
        const double b = y.b * pu.z_base_ohm;
        g_self[br.from_node] += g;
        b_self[br.from_node] += b;
        g_self[br.to_node] += g;
        b_self[br.to_node] += b;
        off[br.from_node].push_back({br.to_node, -g, -b});
        off[br.to_node].push_back({br.from_node, -g, -b});
    }

    std::vector<double> p_spec(n, 0.0), q_spec(n, 0.0);
    for (std::size_t b = 0; b < pu.node_of_bus.size(); ++b) {
        const int node = pu.node_of_bus[b];
        p_spec[node] += inj.dg[b].real() - inj.demand[b].real();
        q_spec[node] += inj.dg[b].imag() + inj.capacitor_q[b] - inj.demand[b].imag();
    }

    std::vector<double> u(n), delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int idx = pu.bus_index(nodes[i].head_bus);
        u[i] = s.u[idx];
        delta[i] = s.delta[idx];
    }

    double worst = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        double p = u[j] * u[j] * g_self[j];
        double q = -u[j] * u[j] * b_self[j];
        for (const auto& e : off[j]) {
            const double th = delta[j] - delta[e.other];
            p += u[j] * u[e.other] * (e.g * std::cos(th) + e.b * std::sin(th));
            q += u[j] * u[e.other] * (e.g * std::sin(th) - e.b * std::cos(th));
        }
        worst = std::max({worst, std::abs(p - p_spec[j]), std::abs(q - q_spec[j])});
    }
    return worst;
}

double total_loss(const PowerFlowSolution& s, const PerUnitCase& pu, const YearInjections& inj) {
    double gen = s.p_slack;
    double load = 0.0;
    for (std::size_t b = 0; b < inj.demand.size(); ++b) {
        gen += inj.dg[b].real();
        load += inj.demand[b].real();
    }
    return pu.pu_to_kw(gen - load);
}

double branch_loss_pu(const PowerFlowSolution& s, const PerUnitCase& pu, const Design& d) {
    double sum = 0.0;
    for (std::size_t k = 0; k < pu.branches.size(); ++k) {
        const double r = pu.ohm_to_pu(pu.branches[k].length_km * pu.physical.conductor(d.conductor[k]).r_per_km);
        sum += s.branch_i_pu[k] * s.branch_i_pu[k] * r;
    }
    return sum;
}

std::vector<Violation> check_limits(const PowerFlowSolution& s, const PerUnitCase& pu, const Design& d,
                                    int year) {
    const auto& c = pu.physical;
    const auto& e = c.economics;
    std::vector<Violation> out;
    for (std::size_t b = 0; b < c.buses.size(); ++b) {
        const double u = s.u[b];
        if (u < e.v_min) out.push_back({year, "voltage", c.buses[b].id, u, e.v_min});
        if (u > e.v_max) out.push_back({year, "voltage", c.buses[b].id, u, e.v_max});
    }
    for (std::size_t k = 0; k < pu.branches.size(); ++k) {
        const double limit = c.conductor(d.conductor[k]).i_max;
        if (s.branch_i_amp[k] > limit) {
            out.push_back({year, "current", pu.branches[k].section_id, s.branch_i_amp[k], limit});
        }
    }
    return out;
}

}  // namespace radplan::pf
