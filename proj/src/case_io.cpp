#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "radplan/netmodel.hpp"

namespace radplan {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw CaseError("syntax error", where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw CaseError("missing field", where + "." + key);
    return *it;
}

double number(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_number()) throw CaseError("syntax error", where + "." + key + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw CaseError("syntax error", where + "." + key + " is not finite");
    return d;
}

int integer(const json& obj, const char* key, const std::string& where) {
    const json& v = field(obj, key, where);
    if (!v.is_number_integer()) throw CaseError("syntax error", where + "." + key + " must be an integer");
    return v.get<int>();
}

const json& array(const json& obj, const char* key) {
    const json& v = field(obj, key, "case");
    if (!v.is_array()) throw CaseError("syntax error", std::string("case.") + key + " must be an array");
    return v;
}

std::string at(const char* key, std::size_t i) {
    return std::string(key) + "[" + std::to_string(i) + "]";
}

}  // namespace

NetworkCase parse_case(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& err) {
        throw CaseError("syntax error", "at byte " + std::to_string(err.byte) + ": " + err.what());
    } catch (const json::out_of_range& err) {
        throw CaseError("syntax error", err.what());
    }

    NetworkCase c;
    const auto& buses = array(root, "buses");
    for (std::size_t i = 0; i < buses.size(); ++i) {
        const auto w = at("buses", i);
        c.buses.push_back(Bus{integer(buses[i], "id", w), number(buses[i], "s_load_kva", w),
                              number(buses[i], "power_factor", w)});
    }
    const auto& sections = array(root, "sections");
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const auto w = at("sections", i);
        c.sections.push_back(Section{integer(sections[i], "id", w), integer(sections[i], "from", w),
                                     integer(sections[i], "to", w), number(sections[i], "length_km", w)});
    }
    const auto& conductors = array(root, "conductor_catalog");
    for (std::size_t i = 0; i < conductors.size(); ++i) {
        const auto w = at("conductor_catalog", i);
        const auto& o = conductors[i];
        c.conductor_catalog.push_back(ConductorType{integer(o, "id", w), number(o, "r_per_km", w),
                                                    number(o, "x_per_km", w), number(o, "price_per_km", w),
                                                    number(o, "i_max", w)});
    }
    const auto& capacitors = array(root, "capacitor_catalog");
    for (std::size_t i = 0; i < capacitors.size(); ++i) {
        const auto w = at("capacitor_catalog", i);
        const auto& o = capacitors[i];
        c.capacitor_catalog.push_back(CapacitorType{integer(o, "id", w), number(o, "q_kvar", w),
                                                    number(o, "capital_cost", w),
                                                    number(o, "install_cost", w)});
    }
    const auto& dg = field(root, "dg_type", "case");
    c.dg_type = DGType{number(dg, "p_rated_kw", "dg_type"), number(dg, "q_rated_kvar", "dg_type"),
                       number(dg, "total_cost", "dg_type")};

    const auto& e = field(root, "economics", "case");
    auto& econ = c.economics;
    econ.cp0 = number(e, "cp0", "economics");
    econ.ce0 = number(e, "ce0", "economics");
    econ.inflation = number(e, "inflation", "economics");
    econ.load_growth = number(e, "load_growth", "economics");
    econ.load_factor = number(e, "load_factor", "economics");
    econ.horizon_years = integer(e, "horizon_years", "economics");
    econ.v_min = number(e, "v_min", "economics");
    econ.v_max = number(e, "v_max", "economics");
    econ.cap_budget = number(e, "cap_budget", "economics");
    econ.dg_budget = number(e, "dg_budget", "economics");
    econ.base_mva = number(root, "base_mva", "case");
    econ.base_kv = number(root, "base_kv", "case");

    validate(c);
    return c;
}

std::string serialize_case(const NetworkCase& c) {
    ordered_json root;
    root["base_mva"] = c.economics.base_mva;
    root["base_kv"] = c.economics.base_kv;
    root["buses"] = ordered_json::array();
    for (const auto& b : c.buses) {
        root["buses"].push_back({{"id", b.id}, {"s_load_kva", b.s_load_kva}, {"power_factor", b.power_factor}});
    }
    root["sections"] = ordered_json::array();
    for (const auto& s : c.sections) {
        root["sections"].push_back(
            {{"id", s.id}, {"from", s.from_bus}, {"to", s.to_bus}, {"length_km", s.length_km}});
    }
    root["conductor_catalog"] = ordered_json::array();
    for (const auto& k : c.conductor_catalog) {
        root["conductor_catalog"].push_back({{"id", k.id},
                                             {"r_per_km", k.r_per_km},
                                             {"x_per_km", k.x_per_km},
                                             {"price_per_km", k.price_per_km},
                                             {"i_max", k.i_max}});
    }
    root["capacitor_catalog"] = ordered_json::array();
    for (const auto& k : c.capacitor_catalog) {
        root["capacitor_catalog"].push_back({{"id", k.id},
                                             {"q_kvar", k.q_kvar},
                                             {"capital_cost", k.capital_cost},
                                             {"install_cost", k.install_cost}});
    }
    root["dg_type"] = {{"p_rated_kw", c.dg_type.p_rated_kw},
                       {"q_rated_kvar", c.dg_type.q_rated_kvar},
                       {"total_cost", c.dg_type.total_cost}};
    const auto& e = c.economics;
    root["economics"] = {{"cp0", e.cp0},
                         {"ce0", e.ce0},
                         {"inflation", e.inflation},
                         {"load_growth", e.load_growth},
                         {"load_factor", e.load_factor},
                         {"horizon_years", e.horizon_years},
                         {"v_min", e.v_min},
                         {"v_max", e.v_max},
                         {"cap_budget", e.cap_budget},
                         {"dg_budget", e.dg_budget}};
    return root.dump(2) + "\n";
}

NetworkCase load_case_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read case file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_case(buf.str());
}

NetworkCase resolve_case(const std::string& spec) {
    if (spec == "builtin:26bus") return builtin_case_26bus();
    return load_case_file(spec);
}

}  // namespace radplan
