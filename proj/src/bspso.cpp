#include "radplan/bspso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace radplan::pso {

VariableSpec VariableSpec::binary() { return VariableSpec{Kind::binary, 2, {}}; }

VariableSpec VariableSpec::selective(int n) {
    if (n < 2) throw std::invalid_argument("selective variable needs at least two choices");
    return selective(n, 0.5, -0.5);
}

VariableSpec VariableSpec::selective(int n, double first, double last) {
    if (n < 2) throw std::invalid_argument("selective variable needs at least two choices");
    std::vector<double> a(n);
    for (int i = 0; i < n; ++i) a[i] = first - (first - last) * i / (n - 1);
    return selective(std::move(a));
}

VariableSpec VariableSpec::selective(std::vector<double> thresholds) {
    if (thresholds.size() < 2) throw std::invalid_argument("selective variable needs at least two choices");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (thresholds[i] > 0.5 || thresholds[i] < -0.5) {
            throw std::invalid_argument("selective thresholds must lie in [-0.5, 0.5]");
        }
        if (i > 0 && !(thresholds[i] < thresholds[i - 1])) {
            throw std::invalid_argument("selective thresholds must be strictly decreasing");
        }
    }
    const int n = static_cast<int>(thresholds.size());
    return VariableSpec{Kind::selective, n, std::move(thresholds)};
}

void SwarmConfig::check() const {
    if (n_particles < 2) throw std::invalid_argument("swarm needs at least two particles");
    if (it_max < 1) throw std::invalid_argument("it_max must be at least 1");
    if (w_min > w_max) throw std::invalid_argument("w_min must not exceed w_max");
    if (!(v_max > 0.0)) throw std::invalid_argument("v_max must be positive");
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Stream::Stream(std::uint64_t seed, std::uint64_t particle, std::uint64_t iteration) {
    std::uint64_t x = seed;
    std::uint64_t h = splitmix64(x);
    x = h ^ (particle * 0xd1342543de82ef95ULL);
    h = splitmix64(x);
    x = h ^ (iteration * 0xa0761d6478bd642fULL);
    state_ = splitmix64(x);
}

std::uint64_t Stream::next() { return splitmix64(state_); }

double Stream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

double inertia(int it, const SwarmConfig& cfg) {
    return cfg.w_max - (cfg.w_max - cfg.w_min) / cfg.it_max * it;
}

double normalized(int value, const VariableSpec& spec) {
    if (spec.kind == VariableSpec::Kind::binary) return value;
    return static_cast<double>(spec.n - value) / (spec.n - 1);
}

double velocity_update(double v, double s, double pbest, double gbest, double w, double rand1, double rand2,
                       const SwarmConfig& cfg) {
    const double next = w * v + cfg.c1 * rand1 * (pbest - s) + cfg.c2 * rand2 * (gbest - s);
    return std::clamp(next, -cfg.v_max, cfg.v_max);
}

double velocity_update(double v, double s, double pbest, double gbest, double w, Stream& rng,
                       const SwarmConfig& cfg) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    return velocity_update(v, s, pbest, gbest, w, r1, r2, cfg);
}

int binary_position_update(double v, double rand) { return rand < sigmoid(v) ? 1 : 0; }

int binary_position_update(double v, Stream& rng) { return binary_position_update(v, rng.uniform()); }

int selective_position_update(double v, const VariableSpec& spec, double rd) {
    const double sig = sigmoid(v);
    for (int i = 0; i < spec.n; ++i) {
        if (rd + spec.thresholds[i] < sig) return i + 1;
    }
    return spec.n;
}

int selective_position_update(double v, const VariableSpec& spec, Stream& rng) {
    return selective_position_update(v, spec, rng.uniform());
}

namespace {

void evaluate_all(const Objective& problem, const std::vector<Particle>& swarm, std::vector<Evaluation>& out,
                  unsigned threads) {
    const std::size_t n = swarm.size();
    auto eval_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = problem(swarm[i].position);
    };
    if (threads <= 1 || n < 2) {
        eval_range(0, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, n);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back(eval_range, n * t / workers, n * (t + 1) / workers);
    }
}

// Feasible beats infeasible; feasible ones compare by objective, infeasible
// ones by violation. Ties keep the incumbent.
bool improves(const Evaluation& e, bool best_feasible, double best_objective, double best_violation) {
    if (e.feasible) return !best_feasible || e.objective < best_objective;
    return !best_feasible && e.violation < best_violation;
}

}  // namespace

BestRecord run(const Objective& problem, std::span<const VariableSpec> specs, const SwarmConfig& cfg) {
    cfg.check();
    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    const std::size_t dim = specs.size();
    const std::size_t n = static_cast<std::size_t>(cfg.n_particles);

    std::vector<Particle> swarm(n);
    for (std::size_t p = 0; p < n; ++p) {
        Stream rng(cfg.seed, p, 0);
        auto& part = swarm[p];
        part.position.resize(dim);
        part.velocity.resize(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            const int span = specs[d].highest() - specs[d].lowest() + 1;
            const int pick = std::min(span - 1, static_cast<int>(rng.uniform() * span));
            part.position[d] = specs[d].lowest() + pick;
            part.velocity[d] = 2.0 * rng.uniform() - 1.0;
        }
    }

    std::vector<Evaluation> evals(n);
    auto sanitize = [&](Evaluation& e) {
        if (!std::isfinite(e.objective)) e.feasible = false;
        if (!e.feasible) {
            e.objective = cfg.penalty;
            if (!(e.violation >= 0.0)) e.violation = INFINITY;
        } else {
            e.violation = 0.0;
        }
    };

    BestRecord best;
    best.gbest_objective = cfg.penalty;
    best.gbest_violation = INFINITY;
    best.gbest_position = swarm[0].position;
    auto offer_global = [&](const Evaluation& e, const std::vector<int>& pos) {
        if (!improves(e, best.feasible_found, best.gbest_objective, best.gbest_violation)) return;
        best.gbest_position = pos;
        best.gbest_objective = e.objective;
        best.gbest_violation = e.violation;
        best.feasible_found = e.feasible;
    };

    evaluate_all(problem, swarm, evals, threads);
    for (std::size_t p = 0; p < n; ++p) {
        sanitize(evals[p]);
        auto& part = swarm[p];
        part.pbest_position = part.position;
        part.pbest_objective = evals[p].objective;
        part.pbest_feasible = evals[p].feasible;
        part.pbest_violation = evals[p].violation;
        offer_global(evals[p], part.position);
    }
    best.objective_history.push_back(best.gbest_objective);

    std::vector<double> gbest_norm(dim);
    for (int it = 0; it < cfg.it_max; ++it) {
        const double w = inertia(it, cfg);
        for (std::size_t d = 0; d < dim; ++d) gbest_norm[d] = normalized(best.gbest_position[d], specs[d]);

        for (std::size_t p = 0; p < n; ++p) {
            Stream rng(cfg.seed, p, static_cast<std::uint64_t>(it) + 1);
            auto& part = swarm[p];
            for (std::size_t d = 0; d < dim; ++d) {
                const auto& spec = specs[d];
                const double s = normalized(part.position[d], spec);
                const double pb = normalized(part.pbest_position[d], spec);
                const double wd = spec.kind == VariableSpec::Kind::binary && cfg.binary_inertia >= 0.0
                                      ? cfg.binary_inertia
                                      : w;
                part.velocity[d] = velocity_update(part.velocity[d], s, pb, gbest_norm[d], wd, rng, cfg);
                part.position[d] = spec.kind == VariableSpec::Kind::binary
                                       ? binary_position_update(part.velocity[d], rng)
                                       : selective_position_update(part.velocity[d], spec, rng);
            }
        }

        evaluate_all(problem, swarm, evals, threads);
        for (std::size_t p = 0; p < n; ++p) {
            sanitize(evals[p]);
            auto& part = swarm[p];
            if (improves(evals[p], part.pbest_feasible, part.pbest_objective, part.pbest_violation)) {
                part.pbest_position = part.position;
                part.pbest_objective = evals[p].objective;
                part.pbest_feasible = evals[p].feasible;
                part.pbest_violation = evals[p].violation;
            }
            offer_global(evals[p], part.position);
        }
        best.objective_history.push_back(best.gbest_objective);
    }
    return best;
}

}  // namespace radplan::pso
