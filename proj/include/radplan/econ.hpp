#pragma once

#include <span>
#include <vector>

#include "radplan/design.hpp"
#include "radplan/netmodel.hpp"

namespace radplan::econ {

inline constexpr double hours_per_year = 8760.0;

/// Average-to-peak loss ratio from the load factor: 0.2 LF + 0.8 LF^2.
/// Throws std::domain_error unless 0 < lf <= 1.
double loss_factor(double lf);

/// base * (1 + rate)^t. Used for the cost of power and energy.
double escalate(double base, double rate, int t);

/// d0 * (1 + growth)^t, applied alike to active and reactive demand.
double demand_at_year(double d0, double growth, int t);

double conductor_capital(const Design& d, const NetworkCase& c, const Topology& topo);

struct LossCost {
    double total = 0.0;
    std::vector<double> per_year;
};

/// per_year_ploss_kw[i] is the peak loss of year i + 1.
LossCost loss_cost_horizon(std::span<const double> per_year_ploss_kw, const Economics& e);

double capacitor_cost(const Design& d, const std::vector<CapacitorType>& catalog);
double dg_cost(const Design& d, const DGType& dg);

/// Sum of |1 - u| over all buses.
double voltage_index(std::span<const double> u);

/// omega * cond_cost + (1 - omega) * loss_cost.
double objective(double cond_cost, double loss_cost, double omega);

struct CostBreakdown {
    double cond_cost = 0.0;
    double loss_cost = 0.0;
    double cap_cost = 0.0;
    double dg_cost = 0.0;
    std::vector<double> per_year_ploss;      // kW, years 1..T
    std::vector<double> per_year_loss_cost;

    /// Conductor plus loss cost, unweighted.
    double plain_objective() const { return cond_cost + loss_cost; }
};

}  // namespace radplan::econ
