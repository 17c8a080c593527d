#pragma once

#include <vector>

#include "singstep/core_model.hpp"
#include "singstep/errors.hpp"

namespace singstep {

struct SolutionTrace {
    TimeGrid grid;
    std::vector<double> values;  // U_0 .. U_N
    SchemeId scheme;
};

// Implicit Euler: (1 - kappa tau) U^n = U^{n-1} + tau f(t_n).
inline SolutionTrace step_ie(const ManufacturedProblem& problem, const TimeGrid& grid,
                             double kappa) {
    const double tau = grid.tau;
    if (kappa * tau >= 1.0) throw StepSizeViolation("implicit Euler: kappa*tau >= 1");
    SolutionTrace trace{grid, std::vector<double>(grid.steps + 1), SchemeId::ie};
    trace.values[0] = problem.initial(0.0);
    const double denom = 1.0 - kappa * tau;
    for (int n = 1; n <= grid.steps; ++n) {
        trace.values[n] = (trace.values[n - 1] + tau * problem.forcing(grid.node(n), 0.0)) / denom;
    }
    return trace;
}

// Crank-Nicolson with the forcing sampled at the half node t_{n-1/2}:
// (1 - kappa tau/2) U^n = (1 + kappa tau/2) U^{n-1} + tau f(t_{n-1/2}).
inline SolutionTrace step_cn(const ManufacturedProblem& problem, const TimeGrid& grid,
                             double kappa) {
    const double tau = grid.tau;
    if (kappa * tau / 2.0 >= 1.0) throw StepSizeViolation("Crank-Nicolson: kappa*tau/2 >= 1");
    SolutionTrace trace{grid, std::vector<double>(grid.steps + 1), SchemeId::cn};
    trace.values[0] = problem.initial(0.0);
    const double denom = 1.0 - kappa * tau / 2.0;
    const double numer = 1.0 + kappa * tau / 2.0;
    for (int n = 1; n <= grid.steps; ++n) {
        trace.values[n] =
            (numer * trace.values[n - 1] + tau * problem.forcing(grid.half_node(n), 0.0)) / denom;
    }
    return trace;
}

// Two-step BDF with an implicit Euler step for U^1:
// (3/2 - kappa tau) U^n = 2 U^{n-1} - U^{n-2}/2 + tau f(t_n), n >= 2.
inline SolutionTrace step_bdf2(const ManufacturedProblem& problem, const TimeGrid& grid,
                               double kappa) {
    const double tau = grid.tau;
    if (kappa * tau >= 1.5) throw StepSizeViolation("BDF2: kappa*tau >= 3/2");
    SolutionTrace trace{grid, std::vector<double>(grid.steps + 1), SchemeId::bdf2};
    trace.values[0] = problem.initial(0.0);
    trace.values[1] =
        (trace.values[0] + tau * problem.forcing(grid.node(1), 0.0)) / (1.0 - kappa * tau);
    const double denom = 1.5 - kappa * tau;
    for (int n = 2; n <= grid.steps; ++n) {
        trace.values[n] = (2.0 * trace.values[n - 1] - 0.5 * trace.values[n - 2] +
                           tau * problem.forcing(grid.node(n), 0.0)) /
                          denom;
    }
    return trace;
}

inline SolutionTrace run_ode_scheme(SchemeId scheme, const ManufacturedProblem& problem,
                                    const TimeGrid& grid, double kappa) {
    switch (scheme) {
        case SchemeId::ie: return step_ie(problem, grid, kappa);
        case SchemeId::cn: return step_cn(problem, grid, kappa);
        case SchemeId::bdf2: return step_bdf2(problem, grid, kappa);
        default: throw DomainError("run_ode_scheme: scheme has no scalar form");
    }
}

} // namespace singstep
