#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace radplan {

/// One row of the conductor catalog. Catalogs are ordered largest first (id 1).
struct ConductorType {
    int id = 0;
    double r_per_km = 0.0;      // ohm/km
    double x_per_km = 0.0;      // ohm/km
    double price_per_km = 0.0;  // currency/km
    double i_max = 0.0;         // A

    bool operator==(const ConductorType&) const = default;
};

/// One row of the capacitor catalog. The last entry is the "no capacitor" choice.
struct CapacitorType {
    int id = 0;
    double q_kvar = 0.0;
    double capital_cost = 0.0;
    double install_cost = 0.0;

    double total_cost() const { return capital_cost + install_cost; }
    bool operator==(const CapacitorType&) const = default;
};

struct DGType {
    double p_rated_kw = 0.0;
    double q_rated_kvar = 0.0;
    double total_cost = 0.0;  // capital + installation

    bool operator==(const DGType&) const = default;
};

struct Bus {
    int id = 0;
    double s_load_kva = 0.0;  // peak apparent load at year 0
    double power_factor = 1.0;

    double p_load_kw() const;
    double q_load_kvar() const;
    bool operator==(const Bus&) const = default;
};

struct Section {
    int id = 0;
    int from_bus = 0;
    int to_bus = 0;
    double length_km = 0.0;

    bool operator==(const Section&) const = default;
};

struct Economics {
    double cp0 = 0.0;          // cost of power, currency/kW
    double ce0 = 0.0;          // cost of energy, currency/kWh
    double inflation = 0.0;
    double load_growth = 0.0;
    double load_factor = 1.0;
    int horizon_years = 1;
    double v_min = 0.95;       // p.u.
    double v_max = 1.0;        // p.u.
    double cap_budget = 0.0;
    double dg_budget = 0.0;
    double base_mva = 1.0;
    double base_kv = 1.0;

    bool operator==(const Economics&) const = default;
};

struct NetworkCase {
    std::vector<Bus> buses;
    std::vector<Section> sections;
    std::vector<ConductorType> conductor_catalog;
    std::vector<CapacitorType> capacitor_catalog;
    DGType dg_type;
    Economics economics;

    const Bus& bus(int id) const;
    const Section& section(int id) const;
    const ConductorType& conductor(int id) const;
    const CapacitorType& capacitor(int id) const;
    int no_capacitor_id() const { return static_cast<int>(capacitor_catalog.size()); }

    bool operator==(const NetworkCase&) const = default;
};

/// Raised by parse_case and validate. `kind` is one of "syntax error",
/// "missing field", "invariant violation".
class CaseError : public std::runtime_error {
public:
    CaseError(std::string kind, const std::string& detail);
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Raised by radial_topology: "cycle detected", "disconnected bus", "root not found".
class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParentLink {
    int parent_bus = 0;
    int section_id = 0;
};

struct Topology {
    int root = 0;
    std::map<int, ParentLink> parent;   // every non-root bus
    std::vector<int> order;             // breadth-first from root
    std::vector<int> sizable_sections;  // ascending section id, length > 0
    std::vector<int> candidate_buses;   // ascending bus id, all non-root buses
    std::map<int, int> electrical_node; // bus id -> bus id of its merged group head

    const ParentLink& parent_of(int bus) const;
};

/// Throws CaseError for any violated NetworkCase invariant (topology included).
void validate(const NetworkCase& c);

NetworkCase parse_case(std::string_view text);
std::string serialize_case(const NetworkCase& c);
NetworkCase load_case_file(const std::string& path);

/// The 26-bus, 20 kV / 1 MVA planning case with its catalogs and economics.
NetworkCase builtin_case_26bus();

/// Accepts "builtin:26bus" or a case-file path.
NetworkCase resolve_case(const std::string& spec);

Topology radial_topology(const NetworkCase& c);

/// Per-unit view of a case. Buses joined by zero-length sections share a node.
struct PerUnitCase {
    struct Node {
        int head_bus = 0;          // representative bus id
        int parent = -1;           // node index, -1 for the slack node
        int branch = -1;           // index into branches for the link to parent
        std::vector<int> buses;    // bus ids merged into this node
    };
    struct Branch {
        int section_id = 0;
        int from_node = 0;
        int to_node = 0;
        double length_km = 0.0;
    };

    NetworkCase physical;
    Topology topology;
    double s_base_kva = 0.0;
    double z_base_ohm = 0.0;
    double i_base_amp = 0.0;
    std::vector<std::complex<double>> load_pu;  // year-0 demand per bus index
    std::vector<Node> nodes;                    // parents precede children; node 0 is slack
    std::vector<int> node_of_bus;               // bus index -> node index
    std::vector<Branch> branches;               // aligned with topology.sizable_sections
    std::map<int, int> bus_index_by_id;
    std::map<int, int> branch_index_by_section;

    int bus_index(int bus_id) const;

    double kw_to_pu(double kw) const { return kw / s_base_kva; }
    double pu_to_kw(double pu) const { return pu * s_base_kva; }
    double ohm_to_pu(double ohm) const { return ohm / z_base_ohm; }
    double pu_to_ohm(double pu) const { return pu * z_base_ohm; }
    double amp_to_pu(double amp) const { return amp / i_base_amp; }
    double pu_to_amp(double pu) const { return pu * i_base_amp; }
};

PerUnitCase to_per_unit(const NetworkCase& c);

}  // namespace radplan
