#pragma once

#include <vector>

#include "radplan/netmodel.hpp"

namespace radplan {

/// A concrete plan. Vectors are aligned with Topology::sizable_sections
/// (conductor) and Topology::candidate_buses (capacitor, dg).
struct Design {
    std::vector<int> conductor;  // catalog id per sizable section
    std::vector<int> capacitor;  // catalog id per candidate bus; last id = none
    std::vector<int> dg;         // 0/1 per candidate bus

    bool operator==(const Design&) const = default;
};

/// Every sizable section gets `conductor_id`; no capacitors, no DG.
Design uniform_design(const NetworkCase& c, const Topology& topo, int conductor_id);

/// Throws std::invalid_argument when sizes or ids do not fit the case.
void check_design(const Design& d, const NetworkCase& c, const Topology& topo);

}  // namespace radplan
