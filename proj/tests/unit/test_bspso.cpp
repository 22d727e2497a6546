#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "radplan/bspso.hpp"

using namespace radplan::pso;

namespace {

SwarmConfig small_config(std::uint64_t seed, int particles = 10, int iters = 30) {
    SwarmConfig cfg;
    cfg.seed = seed;
    cfg.n_particles = particles;
    cfg.it_max = iters;
    return cfg;
}

std::vector<VariableSpec> mixed_specs() {
    return {VariableSpec::selective(5), VariableSpec::binary(), VariableSpec::selective(3),
            VariableSpec::selective(4, 0.5, 0.0), VariableSpec::binary(), VariableSpec::selective(2)};
}

// Separable target: minimum 0 at position (3, 1, 2, 4, 0, 1).
Evaluation mixed_objective(std::span<const int> s) {
    const int target[] = {3, 1, 2, 4, 0, 1};
    double f = 0;
    for (std::size_t i = 0; i < s.size(); ++i) f += std::abs(s[i] - target[i]);
    return {f, true};
}

}  // namespace

TEST_SUITE("bspso") {

TEST_CASE("sigmoid") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(2.0) == doctest::Approx(0.880797).epsilon(1e-6));
    CHECK(sigmoid(40.0) == doctest::Approx(1.0));
    CHECK(sigmoid(-40.0) == doctest::Approx(0.0));
    CHECK(sigmoid(1.0) + sigmoid(-1.0) == doctest::Approx(1.0));
}

TEST_CASE("inertia schedule") {
    SwarmConfig cfg;
    cfg.it_max = 200;
    CHECK(inertia(0, cfg) == doctest::Approx(0.9));
    CHECK(inertia(200, cfg) == doctest::Approx(0.4));
    CHECK(inertia(100, cfg) == doctest::Approx(0.65));
}

TEST_CASE("velocity update") {
    SwarmConfig cfg;
    CHECK(velocity_update(1.5, 0.3, 0.3, 0.3, 0.7, 0.4, 0.9, cfg) == doctest::Approx(0.7 * 1.5));
    CHECK(velocity_update(0.0, 0.0, 1.0, 1.0, 0.9, 1.0, 1.0, cfg) == doctest::Approx(4.0));
    cfg.v_max = 3.0;
    CHECK(velocity_update(0.0, 0.0, 1.0, 1.0, 0.9, 1.0, 1.0, cfg) == 3.0);
    cfg.v_max = 6.0;
    CHECK(velocity_update(10.0, 0.5, 0.5, 0.5, 0.9, 0.2, 0.2, cfg) == 6.0);
    CHECK(velocity_update(-10.0, 0.5, 0.5, 0.5, 0.9, 0.2, 0.2, cfg) == -6.0);

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> any(-50, 50), unit(0, 1);
    for (int i = 0; i < 2000; ++i) {
        const double v = velocity_update(any(gen), unit(gen), unit(gen), unit(gen), unit(gen), unit(gen), unit(gen), cfg);
        CHECK(std::abs(v) <= cfg.v_max);
    }
}

TEST_CASE("binary position rule") {
    CHECK(binary_position_update(38.0, 0.999999) == 1);
    CHECK(binary_position_update(-38.0, 1e-6) == 0);
    CHECK(binary_position_update(0.0, 0.3) == 1);
    CHECK(binary_position_update(0.0, 0.5) == 0);
}

TEST_CASE("selective thresholds") {
    const auto def = VariableSpec::selective(5);
    const std::vector<double> expected{0.5, 0.25, 0.0, -0.25, -0.5};
    REQUIRE(def.thresholds.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(def.thresholds[i] == doctest::Approx(expected[i]));

    const auto lin = VariableSpec::selective(4, -0.2, -0.5);
    CHECK(lin.thresholds.front() == -0.2);
    CHECK(lin.thresholds.back() == doctest::Approx(-0.5));
    CHECK(lin.thresholds[1] == doctest::Approx(-0.3));

    CHECK_THROWS(VariableSpec::selective(1));
    CHECK_THROWS(VariableSpec::selective(std::vector<double>{0.2, 0.3}));
    CHECK_THROWS(VariableSpec::selective(std::vector<double>{0.7, 0.0}));
    CHECK_THROWS(VariableSpec::selective(std::vector<double>{0.0, -0.6}));
    CHECK(VariableSpec::binary().thresholds.empty());
}

TEST_CASE("selective position rule examples") {
    const auto spec = VariableSpec::selective(std::vector<double>{0.4, 0.2, 0.0, -0.2, -0.4});
    auto v_for = [](double sig) { return std::log(sig / (1.0 - sig)); };
    CHECK(selective_position_update(v_for(0.95), spec, 0.5) == 1);
    CHECK(selective_position_update(v_for(0.5), spec, 0.5) == 4);
    CHECK(selective_position_update(v_for(0.05), spec, 0.9) == 5);
}

TEST_CASE("selective rule is monotone in the velocity") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> rd(0, 1), vel(-8, 8);
    for (int n : {2, 4, 5}) {
        for (const auto& spec : {VariableSpec::selective(n), VariableSpec::selective(n, -0.2, -0.5),
                                 VariableSpec::selective(n, 0.5, 0.0)}) {
            for (int trial = 0; trial < 2000; ++trial) {
                const double r = rd(gen);
                double a = vel(gen), b = vel(gen);
                if (a > b) std::swap(a, b);
                const int ia = selective_position_update(a, spec, r);
                const int ib = selective_position_update(b, spec, r);
                CHECK(ib <= ia);
                CHECK(ia >= 1);
                CHECK(ia <= n);
            }
            CHECK(selective_position_update(-1e3, spec, 0.999) == n);
        }
    }
}

TEST_CASE("normalized positions") {
    CHECK(normalized(1, VariableSpec::selective(5)) == 1.0);
    CHECK(normalized(5, VariableSpec::selective(5)) == 0.0);
    CHECK(normalized(2, VariableSpec::selective(3)) == 0.5);
    CHECK(normalized(1, VariableSpec::binary()) == 1.0);
    CHECK(normalized(0, VariableSpec::binary()) == 0.0);
}

TEST_CASE("random streams") {
    Stream a(5, 1, 2), b(5, 1, 2), c(5, 2, 1), d(6, 1, 2);
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
    Stream u(0, 0, 0);
    double lo = 1, hi = 0;
    for (int i = 0; i < 10000; ++i) {
        const double r = u.uniform();
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        REQUIRE(r >= 0.0);
        REQUIRE(r < 1.0);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("config validation") {
    SwarmConfig cfg;
    CHECK_NOTHROW(cfg.check());
    cfg.n_particles = 1;
    CHECK_THROWS(cfg.check());
    cfg = {};
    cfg.it_max = 0;
    CHECK_THROWS(cfg.check());
    cfg = {};
    cfg.w_min = 1.0;
    CHECK_THROWS(cfg.check());
    cfg = {};
    cfg.v_max = 0;
    CHECK_THROWS(cfg.check());
}

TEST_CASE("one binary variable is minimized quickly") {
    const std::vector<VariableSpec> specs{VariableSpec::binary()};
    auto f = [](std::span<const int> s) { return Evaluation{static_cast<double>(s[0]), true}; };
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto best = run(f, specs, small_config(seed, 5, 10));
        CHECK(best.feasible_found);
        CHECK(best.gbest_position[0] == 0);
        CHECK(best.objective_history[5] == 0.0);
    }
}

TEST_CASE("all infeasible") {
    const auto specs = mixed_specs();
    auto f = [](std::span<const int>) { return Evaluation{1.0, false}; };
    const auto best = run(f, specs, small_config(3));
    CHECK_FALSE(best.feasible_found);
    CHECK(best.gbest_objective == SwarmConfig{}.penalty);
    for (double h : best.objective_history) CHECK(h == SwarmConfig{}.penalty);
}

TEST_CASE("least violating position leads while nothing is feasible") {
    const std::vector<VariableSpec> specs(8, VariableSpec::binary());
    double least = std::numeric_limits<double>::infinity();
    std::vector<int> least_pos;
    auto f = [&](std::span<const int> s) {
        const double ones = std::accumulate(s.begin(), s.end(), 0.0);
        if (ones < least) {
            least = ones;
            least_pos.assign(s.begin(), s.end());
        }
        // Feasible only with at most one bit set.
        return ones <= 1 ? Evaluation{-ones, true} : Evaluation{0.0, false, ones - 1};
    };
    const auto best = run(f, specs, small_config(9, 6, 60));
    CHECK(best.feasible_found);
    CHECK(std::accumulate(best.gbest_position.begin(), best.gbest_position.end(), 0) == 1);
    CHECK(best.gbest_objective == -1.0);

    least = std::numeric_limits<double>::infinity();
    auto never = [&](std::span<const int> s) {
        const double ones = std::accumulate(s.begin(), s.end(), 0.0);
        if (ones < least) {
            least = ones;
            least_pos.assign(s.begin(), s.end());
        }
        return Evaluation{0.0, false, ones};
    };
    const auto none = run(never, specs, small_config(9, 6, 20));
    CHECK_FALSE(none.feasible_found);
    CHECK(none.gbest_violation == least);
    CHECK(none.gbest_position == least_pos);
}

TEST_CASE("gbest is the best feasible evaluation ever seen") {
    const auto specs = mixed_specs();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        double best_seen = std::numeric_limits<double>::infinity();
        auto f = [&](std::span<const int> s) {
            auto e = mixed_objective(s);
            e.feasible = (s[0] + s[2]) % 2 == 0;  // an arbitrary infeasible half
            if (!e.feasible) {
                e.violation = 1.0;
                e.objective = -100.0;  // must never leak into the result
            } else {
                best_seen = std::min(best_seen, e.objective);
            }
            return e;
        };
        const auto best = run(f, specs, small_config(seed));
        CHECK(best.feasible_found);
        CHECK(best.gbest_objective == best_seen);
        CHECK((best.gbest_position[0] + best.gbest_position[2]) % 2 == 0);
        for (std::size_t i = 1; i < best.objective_history.size(); ++i) {
            CHECK(best.objective_history[i] <= best.objective_history[i - 1]);
        }
    }
}

TEST_CASE("non-finite objectives count as infeasible") {
    const std::vector<VariableSpec> specs{VariableSpec::selective(3)};
    auto f = [](std::span<const int> s) {
        return Evaluation{s[0] == 1 ? std::numeric_limits<double>::quiet_NaN() : double(s[0]), true};
    };
    const auto best = run(f, specs, small_config(1, 6, 20));
    CHECK(best.gbest_position[0] == 2);
    CHECK(best.gbest_objective == 2.0);
}

TEST_CASE("swarm reaches the separable optimum") {
    const auto specs = mixed_specs();
    const auto best = run(mixed_objective, specs, small_config(4, 20, 60));
    CHECK(best.gbest_objective == 0.0);
    CHECK(best.objective_history.size() == 61);
}

TEST_CASE("determinism across runs and thread counts") {
    const auto specs = mixed_specs();
    auto cfg = small_config(77, 12, 25);
    const auto a = run(mixed_objective, specs, cfg);
    const auto b = run(mixed_objective, specs, cfg);
    cfg.threads = 4;
    const auto c = run(mixed_objective, specs, cfg);
    CHECK(a.gbest_position == b.gbest_position);
    CHECK(a.objective_history == b.objective_history);
    CHECK(a.gbest_position == c.gbest_position);
    CHECK(a.objective_history == c.objective_history);

    cfg.seed = 78;
    cfg.threads = 1;
    cfg.it_max = 1;
    const auto d = run(mixed_objective, specs, cfg);
    cfg.seed = 77;
    const auto e = run(mixed_objective, specs, cfg);
    CHECK(e.objective_history[0] == a.objective_history[0]);
    CHECK(d.objective_history.size() == 2);
}

}  // TEST_SUITE
