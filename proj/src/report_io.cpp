#include "radplan/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace radplan::io {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

ordered_json design_object(const Design& d, const Topology& topo) {
    ordered_json o;
    o["conductors"] = ordered_json::array();
    for (std::size_t k = 0; k < d.conductor.size(); ++k) {
        o["conductors"].push_back({{"section", topo.sizable_sections[k]}, {"type", d.conductor[k]}});
    }
    o["capacitors"] = ordered_json::array();
    o["dg"] = ordered_json::array();
    for (std::size_t j = 0; j < topo.candidate_buses.size(); ++j) {
        o["capacitors"].push_back({{"bus", topo.candidate_buses[j]}, {"type", d.capacitor[j]}});
        o["dg"].push_back({{"bus", topo.candidate_buses[j]}, {"placed", d.dg[j]}});
    }
    return o;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

Design design_from(const json& o, const NetworkCase& c, const Topology& topo) {
    Design d = uniform_design(c, topo, 1);
    std::vector<bool> assigned(d.conductor.size(), false);
    auto index_of = [](const std::vector<int>& ids, int id, const char* what) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i] == id) return i;
        }
        throw std::invalid_argument(std::string("design names unknown ") + what + " " + std::to_string(id));
    };
    try {
        for (const auto& e : o.at("conductors")) {
            const auto k = index_of(topo.sizable_sections, e.at("section").get<int>(), "sizable section");
            d.conductor[k] = e.at("type").get<int>();
            assigned[k] = true;
        }
        if (o.contains("capacitors")) {
            for (const auto& e : o["capacitors"]) {
                const auto j = index_of(topo.candidate_buses, e.at("bus").get<int>(), "bus");
                d.capacitor[j] = e.at("type").get<int>();
            }
        }
        if (o.contains("dg")) {
            for (const auto& e : o["dg"]) {
                const auto j = index_of(topo.candidate_buses, e.at("bus").get<int>(), "bus");
                d.dg[j] = e.at("placed").get<int>();
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed design: ") + e.what());
    }
    for (std::size_t k = 0; k < assigned.size(); ++k) {
        if (!assigned[k]) {
            throw std::invalid_argument("design leaves section " + std::to_string(topo.sizable_sections[k]) +
                                        " unassigned");
        }
    }
    check_design(d, c, topo);
    return d;
}

}  // namespace

std::string design_json(const Design& d, const NetworkCase& c) {
    return design_object(d, radial_topology(c)).dump(2) + "\n";
}

Design read_design_json(std::string_view text, const NetworkCase& c) {
    const json root = parse_json(text);
    const auto topo = radial_topology(c);
    return design_from(root.contains("best_design") ? root["best_design"] : root, c, topo);
}

std::string result_json(const PlanResult& r, const NetworkCase& c) {
    const auto topo = radial_topology(c);
    const auto& rep = r.report;
    const auto& b = rep.breakdown;

    ordered_json root;
    root["scenario"] = to_string(r.scenario.mode);
    root["omega"] = r.scenario.omega;
    root["seed"] = r.seed;
    root["particles"] = r.particles;
    root["iterations"] = r.iterations;
    root["feasible"] = rep.feasible;
    root["best_design"] = design_object(r.best_design, topo);
    root["costs"] = {{"cond_cost", b.cond_cost},
                     {"loss_cost", b.loss_cost},
                     {"cap_cost", b.cap_cost},
                     {"dg_cost", b.dg_cost},
                     {"total_cost", b.plain_objective()},
                     {"weighted_objective", rep.total_objective},
                     {"per_year_ploss_kw", b.per_year_ploss},
                     {"per_year_loss_cost", b.per_year_loss_cost}};
    root["u_ind"] = rep.u_ind;
    root["violations"] = ordered_json::array();
    for (const auto& v : rep.violations) {
        root["violations"].push_back(
            {{"year", v.year}, {"kind", v.kind}, {"location", v.location}, {"value", v.value}, {"limit", v.limit}});
    }
    root["history"] = r.swarm_history;
    return root.dump(2) + "\n";
}

ResultFile read_result_json(std::string_view text, const NetworkCase& c) {
    const json root = parse_json(text);
    ResultFile out;
    try {
        out.best_design = design_from(root.at("best_design"), c, radial_topology(c));
        out.feasible = root.at("feasible").get<bool>();
        out.u_ind = root.at("u_ind").get<double>();
        const auto& costs = root.at("costs");
        out.cond_cost = costs.at("cond_cost").get<double>();
        out.loss_cost = costs.at("loss_cost").get<double>();
        out.cap_cost = costs.at("cap_cost").get<double>();
        out.dg_cost = costs.at("dg_cost").get<double>();
        out.total_objective = costs.at("weighted_objective").get<double>();
        out.history = root.at("history").get<std::vector<double>>();
        out.violation_count = root.at("violations").size();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed result file: ") + e.what());
    }
    return out;
}

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string result_table(const PlanResult& r, const NetworkCase& c) {
    const auto pu = to_per_unit(c);
    const auto& topo = pu.topology;
    const auto& rep = r.report;
    const auto& b = rep.breakdown;
    std::ostringstream out;

    out << "Scenario: " << to_string(r.scenario.mode) << "  omega=" << format_number(r.scenario.omega)
        << "  seed=" << r.seed << "  particles=" << r.particles << "  iterations=" << r.iterations << "\n";
    out << "Feasible: " << (rep.feasible ? "yes" : "no") << "\n\n";

    out << "Conductors arrangement (U at ending bus, year " << c.economics.horizon_years << ")\n";
    out << pad("Section", 8) << pad("Cond.", 7) << pad("U (p.u.)", 10) << "\n";
    std::vector<int> sections;
    for (const auto& s : c.sections) sections.push_back(s.id);
    std::sort(sections.begin(), sections.end());
    for (int id : sections) {
        const int end_bus = [&] {
            for (const auto& [bus, link] : topo.parent) {
                if (link.section_id == id) return bus;
            }
            return c.section(id).to_bus;
        }();
        auto k = pu.branch_index_by_section.find(id);
        const std::string cond = k == pu.branch_index_by_section.end() ? "-"
                                                                        : std::to_string(r.best_design.conductor[k->second]);
        const std::string u = rep.u_final.empty() ? "-" : fixed(rep.u_final[pu.bus_index(end_bus)], 4);
        out << pad(std::to_string(id), 8) << pad(cond, 7) << pad(u, 10) << "\n";
    }

    out << "\nCapacitors arrangement\n" << pad("Bus", 8) << pad("Cap.", 7) << pad("kVAr", 10) << "\n";
    bool any = false;
    for (std::size_t j = 0; j < topo.candidate_buses.size(); ++j) {
        const int id = r.best_design.capacitor[j];
        if (id == c.no_capacitor_id()) continue;
        any = true;
        out << pad(std::to_string(topo.candidate_buses[j]), 8) << pad(std::to_string(id), 7)
            << pad(format_number(c.capacitor(id).q_kvar), 10) << "\n";
    }
    if (!any) out << "  (none)\n";

    out << "\nDG arrangement\n" << pad("Bus", 8) << "  Rating\n";
    any = false;
    for (std::size_t j = 0; j < topo.candidate_buses.size(); ++j) {
        if (!r.best_design.dg[j]) continue;
        any = true;
        out << pad(std::to_string(topo.candidate_buses[j]), 8) << "  " << format_number(c.dg_type.p_rated_kw)
            << " kW - " << format_number(c.dg_type.q_rated_kvar) << " kVAr\n";
    }
    if (!any) out << "  (none)\n";

    double total_kw = 0.0;
    for (double p : b.per_year_ploss) total_kw += p;
    out << "\nConductor Cost = " << fixed(b.cond_cost, 2) << "\n";
    out << "Loss Cost = " << fixed(b.loss_cost, 2) << "\n";
    out << "Capacitor Cost = " << fixed(b.cap_cost, 2) << "\n";
    out << "DG Cost = " << fixed(b.dg_cost, 2) << "\n";
    out << "Sum of yearly Ploss = " << fixed(total_kw, 2) << " kW\n";
    out << "U_ind = " << fixed(rep.u_ind, 4) << "\n";
    out << "Total_Cost = " << fixed(b.plain_objective(), 2) << "\n";
    out << "Weighted objective = " << fixed(rep.total_objective, 2) << "\n";
    if (!rep.violations.empty()) {
        out << "\nViolations\n";
        for (const auto& v : rep.violations) {
            out << "  year " << v.year << "  " << v.kind << "  at " << v.location << "  value "
                << format_number(v.value) << "  limit " << format_number(v.limit) << "\n";
        }
    }
    return out.str();
}

std::string sweep_csv(const SweepResult& s) {
    std::string out = "omega,cond_cost,loss_cost,total_ploss_kw,u_ind,profile\n";
    for (const auto& row : s.rows) {
        out += format_number(row.omega) + "," + format_number(row.cond_cost) + "," + format_number(row.loss_cost) +
               "," + format_number(row.total_ploss_kw) + "," + format_number(row.u_ind) + ",";
        for (std::size_t k = 0; k < row.profile.size(); ++k) {
            if (k) out += "|";
            out += std::to_string(row.profile[k]);
        }
        out += "\n";
    }
    return out;
}

Csv read_csv(std::string_view text) {
    auto split = [](std::string_view line) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cells.emplace_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return cells;
    };
    Csv csv;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = nl + 1;
        if (line.empty()) continue;
        if (first) {
            csv.header = split(line);
            first = false;
        } else {
            csv.rows.push_back(split(line));
            if (csv.rows.back().size() != csv.header.size()) {
                throw std::invalid_argument("CSV row width does not match header");
            }
        }
    }
    return csv;
}

namespace {

double to_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

}  // namespace

SweepResult read_sweep_csv(std::string_view text) {
    const auto csv = read_csv(text);
    const std::vector<std::string> expected{"omega", "cond_cost", "loss_cost", "total_ploss_kw", "u_ind", "profile"};
    if (csv.header != expected) throw std::invalid_argument("unexpected sweep CSV header");
    SweepResult out;
    for (const auto& r : csv.rows) {
        SweepRow row{to_double(r[0]), to_double(r[1]), to_double(r[2]), to_double(r[3]), to_double(r[4]), true, {}};
        std::size_t start = 0;
        const std::string& prof = r[5];
        while (start <= prof.size() && !prof.empty()) {
            const auto bar = prof.find('|', start);
            row.profile.push_back(static_cast<int>(to_double(prof.substr(start, bar - start))));
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string pf_bus_csv(const pf::PowerFlowSolution& s, const PerUnitCase& pu) {
    std::string out = "bus,u_pu,delta_rad\n";
    for (std::size_t b = 0; b < pu.physical.buses.size(); ++b) {
        out += std::to_string(pu.physical.buses[b].id) + "," + format_number(s.u[b]) + "," +
               format_number(s.delta[b]) + "\n";
    }
    return out;
}

std::string pf_section_csv(const pf::PowerFlowSolution& s, const PerUnitCase& pu, const Design& d) {
    std::string out = "section,i_amp,i_max_amp\n";
    for (std::size_t k = 0; k < pu.branches.size(); ++k) {
        out += std::to_string(pu.branches[k].section_id) + "," + format_number(s.branch_i_amp[k]) + "," +
               format_number(pu.physical.conductor(d.conductor[k]).i_max) + "\n";
    }
    return out;
}

}  // namespace radplan::io
