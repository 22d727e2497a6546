#include "radplan/econ.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace radplan {

namespace econ {

double loss_factor(double lf) {
    if (!(lf > 0.0 && lf <= 1.0)) throw std::domain_error("load factor must lie in (0, 1]");
    return 0.2 * lf + 0.8 * lf * lf;
}

double escalate(double base, double rate, int t) { return base * std::pow(1.0 + rate, t); }

double demand_at_year(double d0, double growth, int t) { return d0 * std::pow(1.0 + growth, t); }

double conductor_capital(const Design& d, const NetworkCase& c, const Topology& topo) {
    if (d.conductor.size() != topo.sizable_sections.size()) {
        throw std::invalid_argument("unassigned section in design");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < d.conductor.size(); ++k) {
        total += c.conductor(d.conductor[k]).price_per_km * c.section(topo.sizable_sections[k]).length_km;
    }
    return total;
}

LossCost loss_cost_horizon(std::span<const double> per_year_ploss_kw, const Economics& e) {
    if (static_cast<int>(per_year_ploss_kw.size()) != e.horizon_years) {
        throw std::invalid_argument("per-year loss list must have one entry per horizon year");
    }
    const double lsf = loss_factor(e.load_factor);
    LossCost out;
    out.per_year.reserve(per_year_ploss_kw.size());
    for (std::size_t i = 0; i < per_year_ploss_kw.size(); ++i) {
        const int t = static_cast<int>(i) + 1;
        const double cp = escalate(e.cp0, e.inflation, t);
        const double ce = escalate(e.ce0, e.inflation, t);
        const double cost = per_year_ploss_kw[i] * (cp + ce * lsf * hours_per_year);
        out.per_year.push_back(cost);
        out.total += cost;
    }
    return out;
}

double capacitor_cost(const Design& d, const std::vector<CapacitorType>& catalog) {
    double total = 0.0;
    for (int id : d.capacitor) {
        if (id < 1 || id > static_cast<int>(catalog.size())) {
            throw std::invalid_argument("capacitor id out of range");
        }
        total += catalog[id - 1].total_cost();
    }
    return total;
}

double dg_cost(const Design& d, const DGType& dg) {
    int placed = 0;
    for (int flag : d.dg) placed += flag != 0;
    return placed * dg.total_cost;
}

double voltage_index(std::span<const double> u) {
    double sum = 0.0;
    for (double v : u) sum += std::abs(1.0 - v);
    return sum;
}

double objective(double cond_cost, double loss_cost, double omega) {
    if (!(omega >= 0.0 && omega <= 1.0)) throw std::domain_error("omega must lie in [0, 1]");
    return omega * cond_cost + (1.0 - omega) * loss_cost;
}

}  // namespace econ
}  // namespace radplan
