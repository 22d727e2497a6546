#include "radplan/netmodel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace radplan {

double Bus::p_load_kw() const { return s_load_kva * power_factor; }

double Bus::q_load_kvar() const {
    return s_load_kva * std::sqrt(std::max(0.0, 1.0 - power_factor * power_factor));
}

CaseError::CaseError(std::string kind, const std::string& detail)
    : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

namespace {

template <class T>
const T& find_by_id(const std::vector<T>& items, int id, const char* what) {
    auto it = std::find_if(items.begin(), items.end(), [id](const T& x) { return x.id == id; });
    if (it == items.end()) {
        throw std::out_of_range(std::string("no ") + what + " with id " + std::to_string(id));
    }
    return *it;
}

[[noreturn]] void violation(const std::string& detail) {
    throw CaseError("invariant violation", detail);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

const Bus& NetworkCase::bus(int id) const { return find_by_id(buses, id, "bus"); }
const Section& NetworkCase::section(int id) const { return find_by_id(sections, id, "section"); }
const ConductorType& NetworkCase::conductor(int id) const {
    return find_by_id(conductor_catalog, id, "conductor type");
}
const CapacitorType& NetworkCase::capacitor(int id) const {
    return find_by_id(capacitor_catalog, id, "capacitor type");
}

const ParentLink& Topology::parent_of(int bus) const {
    auto it = parent.find(bus);
    if (it == parent.end()) {
        throw std::out_of_range("bus " + std::to_string(bus) + " has no parent");
    }
    return it->second;
}

Topology radial_topology(const NetworkCase& c) {
    std::set<int> bus_ids;
    for (const auto& b : c.buses) bus_ids.insert(b.id);
    if (!bus_ids.count(0)) throw TopologyError("root not found");

    std::map<int, std::vector<const Section*>> adjacent;
    for (const auto& s : c.sections) {
        if (!bus_ids.count(s.from_bus) || !bus_ids.count(s.to_bus)) {
            throw TopologyError("section " + std::to_string(s.id) + " references an unknown bus");
        }
        if (s.from_bus == s.to_bus) {
            throw TopologyError("cycle detected at section " + std::to_string(s.id));
        }
        adjacent[s.from_bus].push_back(&s);
        adjacent[s.to_bus].push_back(&s);
    }

    Topology topo;
    topo.root = 0;
    topo.electrical_node[0] = 0;
    std::set<int> visited{0};
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int bus = queue.front();
        queue.pop_front();
        topo.order.push_back(bus);
        const int via = bus == 0 ? -1 : topo.parent.at(bus).section_id;
        for (const Section* s : adjacent[bus]) {
            if (s->id == via) continue;
            const int next = s->from_bus == bus ? s->to_bus : s->from_bus;
            if (visited.count(next)) {
                throw TopologyError("cycle detected at section " + std::to_string(s->id));
            }
            visited.insert(next);
            topo.parent[next] = ParentLink{bus, s->id};
            topo.electrical_node[next] = s->length_km > 0.0 ? next : topo.electrical_node[bus];
            queue.push_back(next);
        }
    }
    for (int id : bus_ids) {
        if (!visited.count(id)) throw TopologyError("disconnected bus " + std::to_string(id));
    }

    for (const auto& s : c.sections) {
        if (s.length_km > 0.0) topo.sizable_sections.push_back(s.id);
    }
    std::sort(topo.sizable_sections.begin(), topo.sizable_sections.end());
    for (int id : bus_ids) {
        if (id != topo.root) topo.candidate_buses.push_back(id);
    }
    return topo;
}

void validate(const NetworkCase& c) {
    if (c.buses.empty()) violation("no buses");

    std::set<int> bus_ids;
    int roots = 0;
    for (const auto& b : c.buses) {
        if (b.id < 0) violation("negative bus id " + std::to_string(b.id));
        if (!bus_ids.insert(b.id).second) violation("duplicate bus id " + std::to_string(b.id));
        if (!finite(b.s_load_kva) || b.s_load_kva < 0.0) {
            violation("bus " + std::to_string(b.id) + " has negative load");
        }
        if (!(b.power_factor > 0.0 && b.power_factor <= 1.0)) {
            violation("bus " + std::to_string(b.id) + " power factor outside (0, 1]");
        }
        if (b.id == 0) {
            ++roots;
            if (b.s_load_kva != 0.0) violation("substation bus 0 carries load");
        }
    }
    if (roots != 1) violation("no substation bus with id 0");

    std::set<int> section_ids;
    for (const auto& s : c.sections) {
        if (!section_ids.insert(s.id).second) {
            violation("duplicate section id " + std::to_string(s.id));
        }
        if (s.from_bus == s.to_bus) violation("section " + std::to_string(s.id) + " is a self-loop");
        if (!bus_ids.count(s.from_bus) || !bus_ids.count(s.to_bus)) {
            violation("section " + std::to_string(s.id) + " references an unknown bus");
        }
        if (!finite(s.length_km) || s.length_km < 0.0) {
            violation("section " + std::to_string(s.id) + " has negative length");
        }
    }
    if (c.sections.size() + 1 != c.buses.size()) {
        violation("section count must equal bus count - 1");
    }

    if (c.conductor_catalog.empty()) violation("conductor catalog is empty");
    for (std::size_t i = 0; i < c.conductor_catalog.size(); ++i) {
        const auto& k = c.conductor_catalog[i];
        if (k.id != static_cast<int>(i) + 1) violation("conductor catalog ids not contiguous");
        if (!(k.r_per_km > 0.0 && k.x_per_km > 0.0 && k.price_per_km > 0.0 && k.i_max > 0.0) ||
            !finite(k.r_per_km) || !finite(k.x_per_km) || !finite(k.price_per_km) || !finite(k.i_max)) {
            violation("conductor type " + std::to_string(k.id) + " has non-positive data");
        }
        if (i > 0 && !(k.i_max < c.conductor_catalog[i - 1].i_max)) {
            violation("conductor catalog not sorted largest to smallest");
        }
    }

    if (c.capacitor_catalog.empty()) violation("capacitor catalog is empty");
    for (std::size_t i = 0; i < c.capacitor_catalog.size(); ++i) {
        const auto& k = c.capacitor_catalog[i];
        if (k.id != static_cast<int>(i) + 1) violation("capacitor catalog ids not contiguous");
        if (!(k.q_kvar >= 0.0 && k.capital_cost >= 0.0 && k.install_cost >= 0.0) ||
            !finite(k.q_kvar) || !finite(k.capital_cost) || !finite(k.install_cost)) {
            violation("capacitor type " + std::to_string(k.id) + " has negative data");
        }
        if (i > 0 && !(k.q_kvar < c.capacitor_catalog[i - 1].q_kvar)) {
            violation("capacitor catalog not sorted largest to smallest");
        }
    }
    const auto& none = c.capacitor_catalog.back();
    if (none.q_kvar != 0.0 || none.total_cost() != 0.0) {
        violation("last capacitor type must be the zero-size, zero-cost entry");
    }

    const auto& dg = c.dg_type;
    if (!(dg.p_rated_kw > 0.0) || !(dg.q_rated_kvar >= 0.0) || !(dg.total_cost >= 0.0) ||
        !finite(dg.p_rated_kw) || !finite(dg.q_rated_kvar) || !finite(dg.total_cost)) {
        violation("DG type data out of range");
    }

    const auto& e = c.economics;
    const double reals[] = {e.cp0, e.ce0, e.inflation, e.load_growth, e.load_factor, e.v_min,
                            e.v_max, e.cap_budget, e.dg_budget, e.base_mva, e.base_kv};
    for (double v : reals) {
        if (!finite(v)) violation("non-finite economics value");
    }
    if (e.cp0 < 0.0 || e.ce0 < 0.0) violation("negative cost of power or energy");
    if (!(e.load_factor > 0.0 && e.load_factor <= 1.0)) violation("load factor outside (0, 1]");
    if (e.inflation <= -1.0 || e.load_growth <= -1.0) violation("escalation rate at or below -100%");
    if (e.horizon_years < 1) violation("horizon must be at least one year");
    if (!(e.v_min < e.v_max)) violation("v_min must be below v_max");
    if (e.cap_budget < 0.0 || e.dg_budget < 0.0) violation("negative budget");
    if (!(e.base_mva > 0.0 && e.base_kv > 0.0)) violation("base quantities must be positive");

    try {
        radial_topology(c);
    } catch (const TopologyError& err) {
        violation(err.what());
    }
}

int PerUnitCase::bus_index(int bus_id) const {
    auto it = bus_index_by_id.find(bus_id);
    if (it == bus_index_by_id.end()) throw std::out_of_range("unknown bus " + std::to_string(bus_id));
    return it->second;
}

PerUnitCase to_per_unit(const NetworkCase& c) {
    PerUnitCase pu;
    pu.physical = c;
    pu.topology = radial_topology(c);
    const auto& e = c.economics;
    pu.s_base_kva = e.base_mva * 1000.0;
    pu.z_base_ohm = e.base_kv * e.base_kv / e.base_mva;
    pu.i_base_amp = e.base_mva * 1000.0 / (std::sqrt(3.0) * e.base_kv);

    for (std::size_t i = 0; i < c.buses.size(); ++i) {
        const auto& b = c.buses[i];
        pu.bus_index_by_id[b.id] = static_cast<int>(i);
        pu.load_pu.emplace_back(pu.kw_to_pu(b.p_load_kw()), pu.kw_to_pu(b.q_load_kvar()));
    }

    const auto& topo = pu.topology;
    for (std::size_t k = 0; k < topo.sizable_sections.size(); ++k) {
        pu.branch_index_by_section[topo.sizable_sections[k]] = static_cast<int>(k);
    }
    pu.branches.resize(topo.sizable_sections.size());
    pu.node_of_bus.assign(c.buses.size(), -1);

    for (int bus : topo.order) {
        const int head = topo.electrical_node.at(bus);
        if (head == bus) {
            PerUnitCase::Node node;
            node.head_bus = bus;
            if (bus != topo.root) {
                const auto& link = topo.parent_of(bus);
                node.parent = pu.node_of_bus[pu.bus_index(link.parent_bus)];
                node.branch = pu.branch_index_by_section.at(link.section_id);
                auto& br = pu.branches[node.branch];
                br.section_id = link.section_id;
                br.from_node = node.parent;
                br.to_node = static_cast<int>(pu.nodes.size());
                br.length_km = c.section(link.section_id).length_km;
            }
            pu.node_of_bus[pu.bus_index(bus)] = static_cast<int>(pu.nodes.size());
            pu.nodes.push_back(std::move(node));
        }
        const int n = pu.node_of_bus[pu.bus_index(head)];
        pu.node_of_bus[pu.bus_index(bus)] = n;
        pu.nodes[n].buses.push_back(bus);
    }
    return pu;
}

}  // namespace radplan
