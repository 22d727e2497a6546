#pragma once

#include <complex>
#include <string>
#include <vector>

#include "radplan/design.hpp"
#include "radplan/netmodel.hpp"

namespace radplan::pf {

using cplx = std::complex<double>;

/// Series admittance of a conductor run, in siemens.
struct Admittance {
    double g = 0.0;
    double b = 0.0;
};

/// Real and imaginary part of 1 / (L (R + jX)). Throws std::invalid_argument
/// for non-positive length.
Admittance branch_admittance(const ConductorType& conductor, double length_km);

/// Per-bus quantities in p.u., indexed like PerUnitCase::physical.buses.
struct YearInjections {
    std::vector<cplx> demand;
    std::vector<cplx> dg;
    std::vector<double> capacitor_q;
};

/// Demand escalated to `year`, plus the design's DG and capacitor output.
YearInjections year_injections(const PerUnitCase& pu, const Design& d, int year);

struct PowerFlowSolution {
    std::vector<double> u;             // p.u., per bus index
    std::vector<double> delta;         // rad, per bus index
    std::vector<double> branch_i_pu;   // per sizable section
    std::vector<double> branch_i_amp;
    double p_slack = 0.0;
    double q_slack = 0.0;
    double ploss_kw = 0.0;
    bool converged = false;
    int iterations = 0;
    double max_mismatch = 0.0;
};

struct SolveOptions {
    double tolerance = 1e-8;  // p.u. complex-power mismatch
    int max_iterations = 50;
};

/// Backward/forward sweep. Never throws on divergence; check `converged`.
PowerFlowSolution solve(const PerUnitCase& pu, const Design& d, const YearInjections& inj,
                        const SolveOptions& opt = {});
PowerFlowSolution solve(const PerUnitCase& pu, const Design& d, int year, const SolveOptions& opt = {});

/// Largest absolute active/reactive balance residual over non-slack nodes,
/// evaluated in polar form from the branch conductances and susceptances.
double nodal_mismatch(const PowerFlowSolution& s, const PerUnitCase& pu, const Design& d,
                      const YearInjections& inj);

/// Generation minus demand, in kW.
double total_loss(const PowerFlowSolution& s, const PerUnitCase& pu, const YearInjections& inj);

/// Sum of |I|^2 R over the sizable branches, in p.u.
double branch_loss_pu(const PowerFlowSolution& s, const PerUnitCase& pu, const Design& d);

struct Violation {
    int year = 0;
    std::string kind;   // voltage, current, divergence, capacitor budget, dg budget
    int location = -1;  // bus id or section id; -1 for system-wide
    double value = 0.0;
    double limit = 0.0;
};

std::vector<Violation> check_limits(const PowerFlowSolution& s, const PerUnitCase& pu, const Design& d,
                                    int year = 0);

}  // namespace radplan::pf
