#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "singstep/core_model.hpp"
#include "singstep/errors.hpp"
#include "singstep/pde_solver.hpp"
#include "singstep/special_functions.hpp"

namespace singstep {

// Piecewise-linear quadrature weights for the Caputo derivative of order
// alpha: A_i = (i+1)^(1-alpha) - i^(1-alpha), prefactor tau^-alpha/Gamma(2-alpha).
// The weights telescope: sum_{i<n} A_i = n^(1-alpha), which makes the rule
// exact on functions linear in t.
struct L1Weights {
    double alpha = 0;
    double tau = 0;
    std::vector<double> a;
    double prefactor = 0;

    L1Weights(double alpha_, double tau_, int count) : alpha(alpha_), tau(tau_), a(count) {
        if (!(alpha_ > 0.0 && alpha_ < 1.0)) throw DomainError("L1Weights: alpha must lie in (0,1)");
        if (!(tau_ > 0.0)) throw DomainError("L1Weights: tau must be positive");
        const double p = 1.0 - alpha_;
        for (int i = 0; i < count; ++i) {
            a[i] = std::pow(i + 1.0, p) - std::pow(static_cast<double>(i), p);
        }
        prefactor = std::pow(tau_, -alpha_) / sf::gamma_fn(2.0 - alpha_);
    }
};

// Applies the discrete Caputo derivative to a history U^0..U^n:
//   tau^-alpha/Gamma(2-alpha) * sum_{j=1}^n A_{n-j} (U^j - U^{j-1}).
inline double l1_caputo_apply(std::span<const double> history, const L1Weights& weights) {
    const int n = static_cast<int>(history.size()) - 1;
    if (n < 1) throw DomainError("l1_caputo_apply: need at least two history values");
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) {
        acc += weights.a[n - j] * (history[j] - history[j - 1]);
    }
    return weights.prefactor * acc;
}

// L1 time stepping for the reaction-subdiffusion problem on (0, L) with zero
// Dirichlet boundaries. With mu = Gamma(2-alpha) tau^alpha the step solves
//   (I - mu (Delta_h + kappa I)) U^n
//       = U^{n-1} - sum_{j=1}^{n-1} A_{n-j} (U^j - U^{j-1}) + mu f^n.
// The history convolution is the plain O(N^2) sum; frames are retained, so
// memory is O(N M).
inline FieldTrace solve_l1(const ManufacturedProblem& problem, const SpaceGrid& space,
                           const TimeGrid& time, double kappa) {
    if (!problem.fractional) {
        throw DomainError("solve_l1: problem must carry a Caputo time derivative");
    }
    const double alpha = problem.params.alpha;
    const double tau = time.tau;
    const double mu = sf::gamma_fn(2.0 - alpha) * std::pow(tau, alpha);
    if (kappa >= problem.params.lambda1 + 1.0 / mu) {
        throw StepSizeViolation("L1: kappa too large for this tau, system may be singular");
    }
    L1Weights weights(alpha, tau, time.steps);
    const TridiagonalOperator op = assemble_operator(space, kappa);
    TridiagonalSolver solver(1.0, mu, op);

    const int m = space.interior();
    FieldTrace trace{space, time, {}, SchemeId::l1};
    trace.frames.reserve(time.steps + 1);
    trace.frames.push_back(detail::sample_initial(problem, space));

    std::vector<std::vector<double>> diffs;  // diffs[j-1] = U^j - U^{j-1}
    diffs.reserve(time.steps);
    std::vector<double> rhs(m);

    for (int n = 1; n <= time.steps; ++n) {
        rhs = trace.frames.back();
        for (int j = 1; j < n; ++j) {
            const double w = weights.a[n - j];
            const std::vector<double>& d = diffs[j - 1];
            for (int i = 0; i < m; ++i) rhs[i] -= w * d[i];
        }
        detail::add_forcing(problem, space, time.node(n), mu, rhs);
        solver.solve_in_place(rhs);
        std::vector<double> diff(m);
        const std::vector<double>& prev = trace.frames.back();
        for (int i = 0; i < m; ++i) diff[i] = rhs[i] - prev[i];
        diffs.push_back(std::move(diff));
        trace.frames.push_back(rhs);
    }
    return trace;
}

} // namespace singstep
