#pragma once

#include <cmath>
#include <vector>

#include "singstep/core_model.hpp"
#include "singstep/errors.hpp"
#include "singstep/tridiagonal.hpp"

namespace singstep {

// Uniform spatial mesh on (0, L) with M cells; the M-1 interior nodes carry
// the unknowns, boundary values are identically zero.
struct SpaceGrid {
    int cells = 0;   // M
    double length = 0;
    double h = 0;

    SpaceGrid(int m, double len) : cells(m), length(len), h(len / m) {
        if (m < 4) throw DomainError("SpaceGrid: need at least 4 cells");
        if (!(len > 0.0)) throw DomainError("SpaceGrid: length must be positive");
    }

    int interior() const { return cells - 1; }
    double node(int i) const { return i * h; }
};

struct FieldTrace {
    SpaceGrid space;
    TimeGrid time;
    // frames[n][i-1] holds the value at (t_n, x_i), i = 1..M-1.
    std::vector<std::vector<double>> frames;
    SchemeId scheme;
};

// Second-order 3-point Laplacian plus the reaction term: diagonal
// -2/h^2 + kappa, off-diagonals 1/h^2.
inline TridiagonalOperator assemble_operator(const SpaceGrid& space, double kappa) {
    const double h2 = space.h * space.h;
    return {space.interior(), -2.0 / h2 + kappa, 1.0 / h2};
}

namespace detail {
inline std::vector<double> sample_initial(const ManufacturedProblem& problem,
                                          const SpaceGrid& space) {
    std::vector<double> u(space.interior());
    for (int i = 1; i < space.cells; ++i) u[i - 1] = problem.initial(space.node(i));
    return u;
}
inline void add_forcing(const ManufacturedProblem& problem, const SpaceGrid& space, double t,
                        double weight, std::vector<double>& rhs) {
    for (int i = 1; i < space.cells; ++i) rhs[i - 1] += weight * problem.forcing(t, space.node(i));
}
}  // namespace detail

// Fully discrete solve of u_t = u_xx + kappa u + f on (0, L) with zero
// Dirichlet boundaries. Each step is one tridiagonal solve:
//   IE:    (I - tau A) U^n       = U^{n-1} + tau f^n
//   CN:    (I - tau A / 2) U^n   = (I + tau A / 2) U^{n-1} + tau f^{n-1/2}
//   BDF2:  (3/2 I - tau A) U^n   = 2 U^{n-1} - U^{n-2}/2 + tau f^n   (IE first step)
// with A = Delta_h + kappa I.
inline FieldTrace solve_pde(const ManufacturedProblem& problem, const SpaceGrid& space,
                            const TimeGrid& time, double kappa, SchemeId scheme) {
    const double tau = time.tau;
    const double lambda1 = problem.params.lambda1;
    const double shifted = kappa - lambda1;  // step-size guard uses the least-damped mode
    const TridiagonalOperator op = assemble_operator(space, kappa);
    FieldTrace trace{space, time, {}, scheme};
    trace.frames.reserve(time.steps + 1);
    trace.frames.push_back(detail::sample_initial(problem, space));

    const int m = space.interior();
    std::vector<double> rhs(m), work(m);

    switch (scheme) {
        case SchemeId::ie: {
            if (shifted * tau >= 1.0) throw StepSizeViolation("implicit Euler: (kappa-lambda1)*tau >= 1");
            TridiagonalSolver solver(1.0, tau, op);
            for (int n = 1; n <= time.steps; ++n) {
                rhs = trace.frames.back();
                detail::add_forcing(problem, space, time.node(n), tau, rhs);
                solver.solve_in_place(rhs);
                trace.frames.push_back(rhs);
            }
            break;
        }
        case SchemeId::cn: {
            if (shifted * tau / 2.0 >= 1.0) throw StepSizeViolation("Crank-Nicolson: (kappa-lambda1)*tau/2 >= 1");
            TridiagonalSolver solver(1.0, tau / 2.0, op);
            for (int n = 1; n <= time.steps; ++n) {
                const std::vector<double>& prev = trace.frames.back();
                op.apply(prev, work);
                for (int i = 0; i < m; ++i) rhs[i] = prev[i] + 0.5 * tau * work[i];
                detail::add_forcing(problem, space, time.half_node(n), tau, rhs);
                solver.solve_in_place(rhs);
                trace.frames.push_back(rhs);
            }
            break;
        }
        case SchemeId::bdf2: {
            if (shifted * tau >= 1.5) throw StepSizeViolation("BDF2: (kappa-lambda1)*tau >= 3/2");
            TridiagonalSolver euler(1.0, tau, op);
            rhs = trace.frames.back();
            detail::add_forcing(problem, space, time.node(1), tau, rhs);
            euler.solve_in_place(rhs);
            trace.frames.push_back(rhs);
            TridiagonalSolver solver(1.5, tau, op);
            for (int n = 2; n <= time.steps; ++n) {
                const std::vector<double>& u1 = trace.frames[n - 1];
                const std::vector<double>& u2 = trace.frames[n - 2];
                for (int i = 0; i < m; ++i) rhs[i] = 2.0 * u1[i] - 0.5 * u2[i];
                detail::add_forcing(problem, space, time.node(n), tau, rhs);
                solver.solve_in_place(rhs);
                trace.frames.push_back(rhs);
            }
            break;
        }
        default:
            throw DomainError("solve_pde: scheme must be one of ie, cn, bdf2");
    }
    return trace;
}

// Discrete L2 error sqrt(h sum_i (U^n_i - u(t_n, x_i))^2) for every frame.
inline std::vector<double> discrete_l2_error(const FieldTrace& trace,
                                             const ManufacturedProblem& problem) {
    std::vector<double> errors(trace.frames.size());
    for (std::size_t n = 0; n < trace.frames.size(); ++n) {
        const double t = trace.time.node(static_cast<int>(n));
        double acc = 0.0;
        for (int i = 1; i < trace.space.cells; ++i) {
            const double d = trace.frames[n][i - 1] - problem.exact(t, trace.space.node(i));
            acc += d * d;
        }
        errors[n] = std::sqrt(trace.space.h * acc);
    }
    return errors;
}

} // namespace singstep
