#include "radplan/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "radplan/planner.hpp"
#include "radplan/report_io.hpp"

namespace radplan::cli {

namespace fs = std::filesystem;

namespace {

// Input problems (unreadable files, invalid cases or designs) map to exit 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string case_positional;
    std::string case_flag;
    std::string scenario = "conductors";
    double omega = 0.5;
    std::string grid = "0:0.1:1";
    std::uint64_t seed = 0;
    int particles = pso::SwarmConfig{}.n_particles;
    int iters = pso::SwarmConfig{}.it_max;
    unsigned threads = 1;
    std::string design_path;
    int year = 0;
    std::string out_dir = ".";

    std::string case_spec() const { return case_flag.empty() ? case_positional : case_flag; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file '" + path.string() + "'");
    out << text;
}

NetworkCase load_case(const Options& o) {
    const auto spec = o.case_spec();
    if (spec.empty()) throw CLI::RequiredError("a case (positional or --case)");
    if (spec == "builtin:26bus") return builtin_case_26bus();
    try {
        return parse_case(read_file(spec));
    } catch (const CaseError& e) {
        throw InputError(spec + ": " + e.what());
    }
}

fs::path ensure_out_dir(const Options& o) {
    fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory '" + o.out_dir + "': " + ec.message());
    return dir;
}

pso::SwarmConfig swarm_config(const Options& o) {
    pso::SwarmConfig cfg;
    cfg.n_particles = o.particles;
    cfg.it_max = o.iters;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    return cfg;
}

int cmd_validate(const Options& o, std::ostream& out) {
    const auto c = load_case(o);
    radial_topology(c);
    out << c.buses.size() << " buses, " << c.sections.size() << " sections, radial: ok\n";
    return ok;
}

int cmd_pf(const Options& o, std::ostream& out) {
    const auto c = load_case(o);
    const auto pu = to_per_unit(c);
    if (o.year < 0 || o.year > c.economics.horizon_years) {
        throw CLI::ValidationError("--year", "must lie in 0.." + std::to_string(c.economics.horizon_years));
    }
    Design d = uniform_design(c, pu.topology, 1);
    if (!o.design_path.empty()) {
        try {
            d = io::read_design_json(read_file(o.design_path), c);
        } catch (const std::invalid_argument& e) {
            throw InputError(o.design_path + ": " + e.what());
        }
    }
    const auto inj = pf::year_injections(pu, d, o.year);
    const auto sol = pf::solve(pu, d, inj);
    const auto dir = ensure_out_dir(o);
    write_file(dir / "pf_buses.csv", io::pf_bus_csv(sol, pu));
    write_file(dir / "pf_sections.csv", io::pf_section_csv(sol, pu, d));
    const auto violations = pf::check_limits(sol, pu, d, o.year);
    out << "year " << o.year << ": converged=" << (sol.converged ? "yes" : "no") << " iterations=" << sol.iterations
        << " max_mismatch=" << io::format_number(sol.max_mismatch) << " ploss_kw=" << io::format_number(sol.ploss_kw)
        << " violations=" << violations.size() << "\n";
    return ok;
}

Scenario scenario_of(const Options& o) { return Scenario{parse_mode(o.scenario), o.omega}; }

int cmd_plan(const Options& o, std::ostream& out) {
    const auto c = load_case(o);
    const auto sc = scenario_of(o);
    const auto result = optimize(c, sc, swarm_config(o));
    const auto dir = ensure_out_dir(o);
    const auto table = io::result_table(result, c);
    write_file(dir / "result.json", io::result_json(result, c));
    write_file(dir / "table.txt", table);
    out << table;
    return result.report.feasible ? ok : no_feasible_design;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const auto c = load_case(o);
    const auto grid = parse_grid(o.grid);
    const auto sweep = omega_sweep(c, swarm_config(o), grid);
    const auto dir = ensure_out_dir(o);
    const auto csv = io::sweep_csv(sweep);
    write_file(dir / "sweep.csv", csv);
    out << csv;
    for (const auto& row : sweep.rows) {
        if (!row.feasible) return no_feasible_design;
    }
    return ok;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos) throw std::invalid_argument("omega grid must be START:STEP:END");
    double start = 0, step = 0, end = 0;
    try {
        start = std::stod(text.substr(0, first));
        step = std::stod(text.substr(first + 1, second - first - 1));
        end = std::stod(text.substr(second + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("omega grid must be START:STEP:END");
    }
    if (!(step > 0.0)) throw std::invalid_argument("omega grid step must be positive");
    if (!(start >= 0.0 && end <= 1.0 && start <= end)) {
        throw std::invalid_argument("omega grid must satisfy 0 <= START <= END <= 1");
    }
    const int count = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    for (int i = 0; i < count; ++i) {
        // Rounded so 0.1 steps print as 0.3 rather than 0.30000000000000004.
        grid.push_back(std::round((start + i * step) * 1e12) / 1e12);
    }
    return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radial distribution planning: conductor sizing, capacitor and DG placement", "radplan"};
    app.require_subcommand(1);
    Options o;

    auto add_case = [&](CLI::App* sub) {
        sub->add_option("CASE", o.case_positional, "Case file path or builtin:26bus");
        sub->add_option("--case", o.case_flag, "Case file path or builtin:26bus");
    };
    auto add_swarm = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
        sub->add_option("--particles", o.particles, "Swarm size")->check(CLI::Range(2, 1000000))->capture_default_str();
        sub->add_option("--iters", o.iters, "Swarm iterations")->check(CLI::Range(1, 100000000))->capture_default_str();
        sub->add_option("--threads", o.threads, "Evaluation threads (0 = all cores)")->capture_default_str();
        sub->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    };

    auto* validate_cmd = app.add_subcommand("validate", "Parse and check a case");
    add_case(validate_cmd);

    auto* pf_cmd = app.add_subcommand("pf", "Solve one year's power flow and dump CSVs");
    add_case(pf_cmd);
    pf_cmd->add_option("--design", o.design_path, "Design or result JSON (default: all type-1 conductors)");
    pf_cmd->add_option("--year", o.year, "Planning year")->capture_default_str();
    pf_cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();

    auto* plan_cmd = app.add_subcommand("plan", "Optimize a plan and write result.json and table.txt");
    add_case(plan_cmd);
    plan_cmd->add_option("--scenario", o.scenario, "conductors|full")
        ->check(CLI::IsMember({"conductors", "full"}))
        ->capture_default_str();
    plan_cmd->add_option("--omega", o.omega, "Weight of conductor cost")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    add_swarm(plan_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "Conductor-only optimization over an omega grid");
    add_case(sweep_cmd);
    sweep_cmd->add_option("--omega-grid", o.grid, "START:STEP:END")->capture_default_str();
    add_swarm(sweep_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (*validate_cmd) return cmd_validate(o, out);
        if (*pf_cmd) return cmd_pf(o, out);
        if (*plan_cmd) return cmd_plan(o, out);
        if (*sweep_cmd) {
            parse_grid(o.grid);
            return cmd_sweep(o, out);
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return usage_error;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const CaseError& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
    return usage_error;
}

}  // namespace radplan::cli
