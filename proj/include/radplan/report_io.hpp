#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "radplan/planner.hpp"

namespace radplan::io {

/// Shortest round-trip decimal text, '.' separator, no grouping.
std::string format_number(double v);

std::string design_json(const Design& d, const NetworkCase& c);

/// Accepts either a bare design object or a result document with
/// `best_design`. Capacitor and DG entries are optional (default none / 0).
Design read_design_json(std::string_view text, const NetworkCase& c);

std::string result_json(const PlanResult& r, const NetworkCase& c);

struct ResultFile {
    Design best_design;
    bool feasible = false;
    double u_ind = 0.0;
    double cond_cost = 0.0;
    double loss_cost = 0.0;
    double cap_cost = 0.0;
    double dg_cost = 0.0;
    double total_objective = 0.0;
    std::vector<double> history;
    std::size_t violation_count = 0;
};

ResultFile read_result_json(std::string_view text, const NetworkCase& c);

/// Fixed-width summary in the conductor / capacitor / DG arrangement layout.
std::string result_table(const PlanResult& r, const NetworkCase& c);

std::string sweep_csv(const SweepResult& s);
SweepResult read_sweep_csv(std::string_view text);

std::string pf_bus_csv(const pf::PowerFlowSolution& s, const PerUnitCase& pu);
std::string pf_section_csv(const pf::PowerFlowSolution& s, const PerUnitCase& pu, const Design& d);

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Plain comma-separated text without quoting, as emitted by this toolkit.
Csv read_csv(std::string_view text);

}  // namespace radplan::io
