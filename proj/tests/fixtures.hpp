#pragma once

#include "radplan/netmodel.hpp"

namespace radplan::testing {

inline Economics toy_economics() {
    Economics e;
    e.cp0 = 168;
    e.ce0 = 0.06;
    e.inflation = 0.05;
    e.load_growth = 0.02;
    e.load_factor = 0.25;
    e.horizon_years = 10;
    e.v_min = 0.95;
    e.v_max = 1.0;
    e.cap_budget = 5000;
    e.dg_budget = 10000;
    e.base_mva = 1.0;
    e.base_kv = 20.0;
    return e;
}

/// Substation bus 0 feeding bus 1 through `length_km` of the first catalog conductor.
inline NetworkCase two_bus_case(double length_km = 1.0, double load_kva = 500, double pf = 0.85) {
    NetworkCase c;
    c.buses = {{0, 0, pf}, {1, load_kva, pf}};
    c.sections = {{1, 0, 1, length_km}};
    c.conductor_catalog = {{1, 0.158, 0.23, 151, 520}, {2, 1.374, 0.39, 15, 107}};
    c.capacitor_catalog = {{1, 300, 975, 100}, {2, 0, 0, 0}};
    c.dg_type = {500, 300, 4000};
    c.economics = toy_economics();
    return c;
}

/// Five buses, four sections: 0-1-2-3 main run with a lateral 1-4.
/// Small enough for exhaustive enumeration in both scenarios (4096 designs
/// with DG allowed anywhere but a budget for two units).
inline NetworkCase oracle_case_5bus() {
    NetworkCase c;
    const double pf = 0.85;
    c.buses = {{0, 0, pf}, {1, 120, pf}, {2, 260, pf}, {3, 400, pf}, {4, 300, pf}};
    c.sections = {{1, 0, 1, 1.2}, {2, 1, 2, 1.8}, {3, 2, 3, 2.4}, {4, 1, 4, 1.5}};
    c.conductor_catalog = {{1, 0.158, 0.23, 151, 520}, {2, 0.782, 0.28, 31, 150}};
    c.capacitor_catalog = {{1, 300, 975, 100}, {2, 0, 0, 0}};
    c.dg_type = {400, 200, 4000};
    c.economics = toy_economics();
    c.economics.horizon_years = 5;
    c.economics.cp0 = 16.8;
    c.economics.ce0 = 0.006;
    c.economics.cap_budget = 2200;
    c.economics.dg_budget = 8000;
    return c;
}

}  // namespace radplan::testing
