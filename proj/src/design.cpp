#include "radplan/design.hpp"

#include <stdexcept>
#include <string>

namespace radplan {

Design uniform_design(const NetworkCase& c, const Topology& topo, int conductor_id) {
    Design d;
    d.conductor.assign(topo.sizable_sections.size(), conductor_id);
    d.capacitor.assign(topo.candidate_buses.size(), c.no_capacitor_id());
    d.dg.assign(topo.candidate_buses.size(), 0);
    return d;
}

void check_design(const Design& d, const NetworkCase& c, const Topology& topo) {
    if (d.conductor.size() != topo.sizable_sections.size()) {
        throw std::invalid_argument("design assigns " + std::to_string(d.conductor.size()) +
                                    " conductors for " + std::to_string(topo.sizable_sections.size()) +
                                    " sizable sections");
    }
    if (d.capacitor.size() != topo.candidate_buses.size() || d.dg.size() != topo.candidate_buses.size()) {
        throw std::invalid_argument("design capacitor/dg vectors do not match the candidate buses");
    }
    const int n_cond = static_cast<int>(c.conductor_catalog.size());
    for (int id : d.conductor) {
        if (id < 1 || id > n_cond) throw std::invalid_argument("conductor id out of range");
    }
    for (int id : d.capacitor) {
        if (id < 1 || id > c.no_capacitor_id()) throw std::invalid_argument("capacitor id out of range");
    }
    for (int flag : d.dg) {
        if (flag != 0 && flag != 1) throw std::invalid_argument("dg flag must be 0 or 1");
    }
}

}  // namespace radplan
