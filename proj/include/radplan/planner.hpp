#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "radplan/bspso.hpp"
#include "radplan/design.hpp"
#include "radplan/econ.hpp"
#include "radplan/netmodel.hpp"
#include "radplan/powerflow.hpp"

namespace radplan {

struct Scenario {
    enum class Mode { conductors_only, full };

    Mode mode = Mode::conductors_only;
    double omega = 0.5;
};

std::string to_string(Scenario::Mode m);
Scenario::Mode parse_mode(const std::string& s);

struct YearSummary {
    int year = 0;
    bool converged = false;
    int iterations = 0;
    double ploss_kw = 0.0;
    double min_u = 1.0;
    double max_loading = 0.0;  // max I / I_max over sizable sections
};

struct EvaluationReport {
    econ::CostBreakdown breakdown;
    double u_ind = 0.0;            // year T
    std::vector<double> u_final;   // per bus index, year T
    bool feasible = false;
    std::vector<pf::Violation> violations;
    double total_objective = 0.0;  // weighted by the scenario's omega
    std::vector<YearSummary> per_year;
};

/// Precomputed per-unit view of a case, reused across many evaluations.
/// Immutable after construction; evaluate() is safe to call concurrently.
class Evaluator {
public:
    explicit Evaluator(const NetworkCase& c);

    const PerUnitCase& per_unit() const { return pu_; }
    const NetworkCase& network() const { return pu_.physical; }
    const Topology& topology() const { return pu_.topology; }

    EvaluationReport evaluate(const Design& d, const Scenario& sc) const;

    /// Feasibility, weighted objective and, when infeasible, the summed
    /// relative size of all violations.
    pso::Evaluation score(const Design& d, const Scenario& sc) const;

private:
    PerUnitCase pu_;
};

/// Sum of |value - limit| / |limit| over violations; divergence counts 1e3.
double violation_measure(std::span<const pf::Violation> vs);

/// Selective thresholds (a_1, a_n) used for conductor and capacitor choices.
inline constexpr double kConductorThresholds[2] = {-0.2, -0.5};
inline constexpr double kCapacitorThresholds[2] = {0.5, 0.0};

std::vector<pso::VariableSpec> encode_specs(const NetworkCase& c, const Scenario& sc);

/// Throws std::invalid_argument on a layout mismatch.
Design decode(std::span<const int> position, const NetworkCase& c, const Scenario& sc);

/// Inverse of decode for designs representable in the scenario.
std::vector<int> encode(const Design& d, const NetworkCase& c, const Scenario& sc);

EvaluationReport evaluate(const Design& d, const NetworkCase& c, const Scenario& sc);

struct PlanResult {
    Design best_design;
    EvaluationReport report;
    std::vector<double> swarm_history;
    Scenario scenario;
    std::uint64_t seed = 0;
    int particles = 0;
    int iterations = 0;
    bool feasible_found = false;
};

PlanResult optimize(const NetworkCase& c, const Scenario& sc, const pso::SwarmConfig& cfg);

struct SweepRow {
    double omega = 0.0;
    double cond_cost = 0.0;
    double loss_cost = 0.0;
    double total_ploss_kw = 0.0;
    double u_ind = 0.0;
    bool feasible = false;
    std::vector<int> profile;  // conductor id per sizable section
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// Conductor-only optimization per omega.
SweepResult omega_sweep(const NetworkCase& c, const pso::SwarmConfig& cfg, std::span<const double> grid);

inline constexpr double oracle_limit = 1e6;

/// Enumerates every design; ties go to the lexicographically smallest
/// position. Throws std::length_error above oracle_limit designs.
PlanResult exhaustive_oracle(const NetworkCase& c, const Scenario& sc);

/// Number of designs in the scenario's search space.
double search_space_size(const NetworkCase& c, const Scenario& sc);

}  // namespace radplan
