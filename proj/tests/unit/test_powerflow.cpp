#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "fixtures.hpp"
#include "radplan/powerflow.hpp"

using namespace radplan;
using cplx = std::complex<double>;

namespace {

struct TwoBusRef {
    double u = 0.0;
    double delta = 0.0;
    double loss_pu = 0.0;
};

// Hand-iterated sweep for slack -> Z -> load S (all p.u.):
//   I = conj(S / V2);  V2 = 1 - Z I;  repeat until V2 stops moving.
TwoBusRef hand_sweep(cplx z, cplx s) {
    cplx v2 = 1.0;
    for (int k = 0; k < 200; ++k) {
        const cplx i = std::conj(s / v2);
        const cplx next = 1.0 - z * i;
        const bool done = std::abs(next - v2) < 1e-16;
        v2 = next;
        if (done) break;
    }
    const cplx i = std::conj(s / v2);
    return {std::abs(v2), std::arg(v2), std::norm(i) * z.real()};
}

// Closed form: |V2|^4 + (2(PR + QX) - 1)|V2|^2 + |S|^2 |Z|^2 = 0 (larger root),
// loss = |S|^2 R / |V2|^2.
TwoBusRef closed_form(cplx z, cplx s) {
    const double b = 2.0 * (s.real() * z.real() + s.imag() * z.imag()) - 1.0;
    const double c = std::norm(s) * std::norm(z);
    const double u2 = (-b + std::sqrt(b * b - 4.0 * c)) / 2.0;
    return {std::sqrt(u2), 0.0, std::norm(s) * z.real() / u2};
}

struct TwoBusRun {
    PerUnitCase pu;
    Design d;
    pf::YearInjections inj;
    pf::PowerFlowSolution sol;
};

TwoBusRun run_two_bus(double length_km, double load_kva, double pf_ = 0.85, int conductor = 1) {
    const auto c = testing::two_bus_case(length_km, load_kva, pf_);
    TwoBusRun r{to_per_unit(c), {}, {}, {}};
    r.d = uniform_design(c, r.pu.topology, conductor);
    r.inj = pf::year_injections(r.pu, r.d, 0);
    r.sol = pf::solve(r.pu, r.d, r.inj);
    return r;
}

}  // namespace

TEST_SUITE("powerflow") {

TEST_CASE("branch admittance") {
    const auto c = testing::two_bus_case();
    const auto y1 = pf::branch_admittance(c.conductor(1), 1.0);
    CHECK(y1.g == doctest::Approx(2.02918).epsilon(1e-5));
    CHECK(y1.b == doctest::Approx(-2.95387).epsilon(1e-5));
    const cplx ref = 1.0 / cplx(0.158, 0.23);
    CHECK(std::abs(y1.g - ref.real()) <= 1e-12);
    CHECK(std::abs(y1.b - ref.imag()) <= 1e-12);

    const auto y2 = pf::branch_admittance(c.conductor(1), 2.0);
    CHECK(y2.g == doctest::Approx(y1.g / 2).epsilon(1e-15));
    CHECK(y2.b == doctest::Approx(y1.b / 2).epsilon(1e-15));

    const auto y5 = pf::branch_admittance(c.conductor(2), 0.825);  // type-5 data
    const cplx ref5 = 1.0 / (0.825 * cplx(1.374, 0.39));
    CHECK(y5.g == doctest::Approx(ref5.real()).epsilon(1e-14));
    CHECK(y5.b == doctest::Approx(ref5.imag()).epsilon(1e-14));

    CHECK_THROWS_AS(pf::branch_admittance(c.conductor(1), 0.0), std::invalid_argument);
}

TEST_CASE("no-load flat solution") {
    const auto r = run_two_bus(1.0, 0.0);
    CHECK(r.sol.converged);
    CHECK(r.sol.iterations == 1);
    for (double u : r.sol.u) CHECK(u == 1.0);
    for (double a : r.sol.delta) CHECK(a == 0.0);
    CHECK(r.sol.ploss_kw == 0.0);
    CHECK(pf::nodal_mismatch(r.sol, r.pu, r.d, r.inj) == 0.0);
    CHECK(pf::total_loss(r.sol, r.pu, r.inj) == 0.0);
}

TEST_CASE("two-bus analytic oracle") {
    struct Row {
        double length, load, pf;
        int conductor;
    };
    for (const auto& row : {Row{1.0, 500, 0.85, 1}, Row{4.0, 2500, 0.85, 1}, Row{3.0, 800, 0.9, 2},
                            Row{0.4, 120, 1.0, 2}}) {
        CAPTURE(row.length);
        CAPTURE(row.load);
        const auto r = run_two_bus(row.length, row.load, row.pf, row.conductor);
        const auto& k = r.pu.physical.conductor(row.conductor);
        const cplx z = cplx(k.r_per_km, k.x_per_km) * row.length / 400.0;
        const double p = row.load * row.pf / 1000.0;
        const cplx s(p, row.load * std::sqrt(1 - row.pf * row.pf) / 1000.0);

        const auto hand = hand_sweep(z, s);
        const auto exact = closed_form(z, s);
        CHECK(std::abs(hand.u - exact.u) <= 1e-12);

        REQUIRE(r.sol.converged);
        const int b1 = r.pu.bus_index(1);
        CHECK(r.sol.u[r.pu.bus_index(0)] == 1.0);
        CHECK(r.sol.delta[r.pu.bus_index(0)] == 0.0);
        CHECK(std::abs(r.sol.u[b1] - hand.u) <= 1e-8);
        CHECK(std::abs(r.sol.delta[b1] - hand.delta) <= 1e-8);
        CHECK(std::abs(r.sol.u[b1] - exact.u) <= 1e-8);
        // Generation minus demand carries the residual mismatch (<= 1e-8 p.u.).
        const double loss_pu = r.pu.kw_to_pu(r.sol.ploss_kw);
        const double loss_tol = std::max(1e-6 * exact.loss_pu, 1e-8);
        CHECK(std::abs(loss_pu - hand.loss_pu) <= loss_tol);
        CHECK(std::abs(loss_pu - exact.loss_pu) <= loss_tol);
        CHECK(std::abs(loss_pu - pf::branch_loss_pu(r.sol, r.pu, r.d)) <= 1e-8);
        CHECK(r.sol.branch_i_amp[0] == doctest::Approx(r.sol.branch_i_pu[0] * r.pu.i_base_amp));
    }
}

TEST_CASE("two-bus reference case: 1 km type 1, 500 kVA") {
    const auto r = run_two_bus(1.0, 500);
    const cplx z = cplx(0.158, 0.23) / 400.0;
    const cplx s = cplx(0.425, 0.5 * std::sqrt(1 - 0.85 * 0.85));
    const auto hand = hand_sweep(z, s);
    REQUIRE(r.sol.converged);
    CHECK(std::abs(r.sol.u[1] - hand.u) <= 1e-8);
    const double loss_pu = r.pu.kw_to_pu(r.sol.ploss_kw);
    CHECK(std::abs(loss_pu - hand.loss_pu) <= 1e-6 * hand.loss_pu);
    CHECK(std::abs(r.pu.kw_to_pu(pf::total_loss(r.sol, r.pu, r.inj)) - pf::branch_loss_pu(r.sol, r.pu, r.d)) <= 1e-9);
    CHECK(pf::nodal_mismatch(r.sol, r.pu, r.d, r.inj) <= 1e-8);
}

TEST_CASE("26-bus, all type 1, year 0") {
    const auto c = builtin_case_26bus();
    const auto pu = to_per_unit(c);
    const auto d = uniform_design(c, pu.topology, 1);
    const auto inj = pf::year_injections(pu, d, 0);
    const auto s = pf::solve(pu, d, inj);
    CHECK(s.converged);
    CHECK(s.iterations <= 50);
    CHECK(s.max_mismatch <= 1e-8);
    CHECK(pf::nodal_mismatch(s, pu, d, inj) <= 1e-8);
    CHECK(s.ploss_kw > 0.0);
    CHECK(std::abs(pu.kw_to_pu(pf::total_loss(s, pu, inj)) - pf::branch_loss_pu(s, pu, d)) <= 1e-6);
    CHECK(s.u[pu.bus_index(1)] == s.u[pu.bus_index(0)]);  // merged through a zero-length section
    CHECK(pf::check_limits(s, pu, d, 0).empty());

    SUBCASE("perturbed voltage breaks the balance") {
        auto bad = s;
        bad.u[pu.bus_index(12)] += 0.01;
        CHECK(pf::nodal_mismatch(bad, pu, d, inj) > 1e-4);
    }
}

TEST_CASE("year injections") {
    auto c = testing::two_bus_case(1.0, 500);
    const auto pu = to_per_unit(c);
    auto d = uniform_design(c, pu.topology, 1);
    d.capacitor[0] = 1;
    d.dg[0] = 1;
    const auto y0 = pf::year_injections(pu, d, 0);
    const auto y3 = pf::year_injections(pu, d, 3);
    const int b = pu.bus_index(1);
    CHECK(y3.demand[b].real() == doctest::Approx(y0.demand[b].real() * std::pow(1.02, 3)).epsilon(1e-14));
    CHECK(y3.demand[b].imag() == doctest::Approx(y0.demand[b].imag() * std::pow(1.02, 3)).epsilon(1e-14));
    CHECK(y0.capacitor_q[b] == doctest::Approx(0.3));
    CHECK(y3.capacitor_q[b] == y0.capacitor_q[b]);
    CHECK(y0.dg[b] == cplx(0.5, 0.3));
    CHECK(y3.dg[b] == y0.dg[b]);
    CHECK(y0.dg[pu.bus_index(0)] == cplx(0, 0));
}

TEST_CASE("local DG and capacitor lower the loss") {
    auto c = testing::two_bus_case(2.0, 500);
    const auto b = to_per_unit(c).bus_index(1);
    c.dg_type = {c.buses[b].p_load_kw(), c.buses[b].q_load_kvar(), 4000};
    const auto pu = to_per_unit(c);
    auto d = uniform_design(c, pu.topology, 1);
    const auto base = pf::solve(pu, d, 0);

    auto with_dg = d;
    with_dg.dg[0] = 1;
    const auto inj = pf::year_injections(pu, with_dg, 0);
    const auto s = pf::solve(pu, with_dg, inj);
    REQUIRE(s.converged);
    CHECK(s.ploss_kw < base.ploss_kw);
    CHECK(std::abs(s.ploss_kw) <= 1e-9);
    CHECK(pf::nodal_mismatch(s, pu, with_dg, inj) <= 1e-8);

    auto with_cap = d;
    with_cap.capacitor[0] = 1;
    const auto sc = pf::solve(pu, with_cap, 0);
    CHECK(sc.ploss_kw <= base.ploss_kw);
    CHECK(sc.u[b] > base.u[b]);
}

TEST_CASE("limit checks") {
    SUBCASE("undervoltage on a long line") {
        const auto r = run_two_bus(30.0, 3000);
        REQUIRE(r.sol.converged);
        const auto v = pf::check_limits(r.sol, r.pu, r.d, 4);
        REQUIRE(!v.empty());
        CHECK(v[0].kind == "voltage");
        CHECK(v[0].location == 1);
        CHECK(v[0].year == 4);
        CHECK(v[0].limit == 0.95);
        CHECK(v[0].value < 0.95);
    }
    SUBCASE("overcurrent on a thin conductor") {
        auto c = testing::two_bus_case(0.1, 600);
        c.conductor_catalog[1].i_max = 10.0;
        const auto pu = to_per_unit(c);
        const auto d = uniform_design(c, pu.topology, 2);
        const auto s = pf::solve(pu, d, 0);
        const auto v = pf::check_limits(s, pu, d, 0);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == "current");
        CHECK(v[0].location == 1);
        CHECK(v[0].value == doctest::Approx(s.branch_i_amp[0]));
        CHECK(v[0].limit == 10.0);
        CHECK(s.branch_i_amp[0] > 10.0);
    }
    SUBCASE("overvoltage from DG") {
        auto c = testing::two_bus_case(5.0, 10);
        c.dg_type = {2000, 1500, 4000};
        const auto pu = to_per_unit(c);
        auto d = uniform_design(c, pu.topology, 2);
        d.dg[0] = 1;
        const auto s = pf::solve(pu, d, 0);
        REQUIRE(s.converged);
        const auto v = pf::check_limits(s, pu, d, 0);
        REQUIRE(!v.empty());
        CHECK(v[0].kind == "voltage");
        CHECK(v[0].value > 1.0);
    }
}

TEST_CASE("divergence is reported, not thrown") {
    const auto r = run_two_bus(30.0, 200000);
    CHECK_FALSE(r.sol.converged);
    CHECK(r.sol.iterations <= 50);
}

}  // TEST_SUITE
