#include <algorithm>

#include "radplan/netmodel.hpp"

namespace radplan {

NetworkCase builtin_case_26bus() {
    constexpr double pf = 0.85;

    struct Row {
        int section, from, to;
        double length_km, s_load_kva;
    };
    // Load is carried by the "to" bus of each section.
    static constexpr Row rows[] = {
        {1, 0, 1, 0.000, 0},     {2, 1, 2, 1.175, 0},     {3, 2, 3, 0.625, 950},
        {4, 3, 4, 1.825, 0},     {5, 4, 5, 0.850, 0},     {6, 5, 6, 1.125, 850},
        {7, 6, 7, 2.625, 0},     {8, 7, 8, 2.925, 640},   {9, 8, 9, 1.175, 813},
        {10, 1, 10, 0.650, 800}, {11, 10, 11, 1.825, 400}, {12, 11, 12, 0.825, 950},
        {13, 12, 13, 1.125, 825}, {14, 13, 14, 2.625, 725}, {15, 14, 15, 2.925, 900},
        {16, 2, 16, 1.175, 300}, {17, 16, 17, 0.650, 750}, {18, 17, 18, 1.825, 350},
        {19, 18, 19, 0.825, 400}, {20, 19, 20, 1.125, 700}, {21, 3, 21, 2.625, 125},
        {22, 4, 22, 2.925, 565}, {23, 5, 23, 1.175, 682}, {24, 7, 24, 0.650, 900},
        {25, 7, 25, 1.825, 575}, {26, 25, 26, 0.825, 200},
    };

    NetworkCase c;
    c.buses.push_back(Bus{0, 0.0, pf});
    for (const auto& r : rows) {
        c.buses.push_back(Bus{r.to, r.s_load_kva, pf});
        c.sections.push_back(Section{r.section, r.from, r.to, r.length_km});
    }
    std::sort(c.buses.begin(), c.buses.end(), [](const Bus& a, const Bus& b) { return a.id < b.id; });

    c.conductor_catalog = {
        {1, 0.158, 0.23, 151, 520},
        {2, 0.271, 0.25, 81, 310},
        {3, 0.455, 0.26, 48, 212},
        {4, 0.782, 0.28, 31, 150},
        {5, 1.374, 0.39, 15, 107},
    };
    c.capacitor_catalog = {
        {1, 1200, 2040, 100},
        {2, 600, 1320, 100},
        {3, 300, 975, 100},
        {4, 0, 0, 0},
    };
    c.dg_type = DGType{500, 300, 4000};

    auto& e = c.economics;
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
    return c;
}

}  // namespace radplan
