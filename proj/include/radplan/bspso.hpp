#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace radplan::pso {

/// A decision variable: a bit, or a choice among n ordered catalog entries
/// (index 1 = largest). Selective thresholds must satisfy
/// 0.5 >= a_1 > a_2 > ... > a_n >= -0.5.
struct VariableSpec {
    enum class Kind { binary, selective };

    Kind kind = Kind::binary;
    int n = 2;
    std::vector<double> thresholds;

    static VariableSpec binary();
    /// Uniformly spaced thresholds a_i = 0.5 - (i - 1) / (n - 1).
    static VariableSpec selective(int n);
    /// Thresholds spaced linearly from a_1 = first to a_n = last.
    static VariableSpec selective(int n, double first, double last);
    static VariableSpec selective(std::vector<double> thresholds);

    int lowest() const { return kind == Kind::binary ? 0 : 1; }
    int highest() const { return kind == Kind::binary ? 1 : n; }
};

struct SwarmConfig {
    int n_particles = 50;
    int it_max = 200;
    double c1 = 2.0;
    double c2 = 2.0;
    double w_max = 0.9;
    double w_min = 0.4;
    double v_max = 6.0;
    std::uint64_t seed = 0;
    double penalty = 1e18;
    unsigned threads = 1;  // 0 = hardware concurrency
    /// Inertia for binary variables; negative follows the w_max..w_min schedule.
    double binary_inertia = 0.9;

    /// Throws std::invalid_argument on inconsistent settings.
    void check() const;
};

/// Objective value plus feasibility. Infeasible evaluations never outrank a
/// feasible one; among themselves they rank by `violation` (smaller is better).
struct Evaluation {
    double objective = 0.0;
    bool feasible = true;
    double violation = 0.0;
};

using Objective = std::function<Evaluation(std::span<const int>)>;

struct Particle {
    std::vector<int> position;
    std::vector<double> velocity;
    std::vector<int> pbest_position;
    double pbest_objective = 0.0;
    bool pbest_feasible = false;
    double pbest_violation = 0.0;
};

struct BestRecord {
    std::vector<int> gbest_position;
    double gbest_objective = 0.0;
    double gbest_violation = 0.0;           // of the least-violating design while none is feasible
    std::vector<double> objective_history;  // entry 0 = after initialization
    bool feasible_found = false;
};

/// Counter-based random stream; one per (seed, particle, iteration).
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t particle, std::uint64_t iteration);
    std::uint64_t next();
    /// Uniform in [0, 1).
    double uniform();

private:
    std::uint64_t state_;
};

double sigmoid(double v);

/// Linear decay from w_max at it = 0 to w_min at it = it_max.
double inertia(int it, const SwarmConfig& cfg);

/// Maps a position value to [0, 1]: bits as-is, choice idx to (n - idx) / (n - 1).
double normalized(int value, const VariableSpec& spec);

double velocity_update(double v, double s, double pbest, double gbest, double w, double rand1, double rand2,
                       const SwarmConfig& cfg);
double velocity_update(double v, double s, double pbest, double gbest, double w, Stream& rng,
                       const SwarmConfig& cfg);

/// 1 iff rand < sigmoid(v).
int binary_position_update(double v, double rand);
int binary_position_update(double v, Stream& rng);

/// Smallest index i with rd + a_i < sigmoid(v); n when no condition holds.
int selective_position_update(double v, const VariableSpec& spec, double rd);
int selective_position_update(double v, const VariableSpec& spec, Stream& rng);

BestRecord run(const Objective& problem, std::span<const VariableSpec> specs, const SwarmConfig& cfg);

}  // namespace radplan::pso
