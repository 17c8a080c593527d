#pragma once

#include <cmath>
#include <string>

#include "singstep/core_model.hpp"
#include "singstep/errors.hpp"
#include "singstep/mittag_leffler.hpp"

namespace singstep {

// The six decay-preserving error bounds: one per (scheme, equation) pair.
// Every bound has the shape
//   |e^n| <= init_decay |e^0|
//            + factor * C_{u,alpha} (coeff_exp exp_weight tau^alpha
//                                    + coeff_alg t_power tau^k)
// where exp_weight decays exponentially in (lambda1 - kappa) t_n, and
// coeff_alg switches on only past a parameter-dependent time threshold.
enum class BoundKind { ie_ode, cn_ode, bdf2_ode, ie_pde, cn_pde, bdf2_pde };

inline const char* bound_name(BoundKind k) {
    switch (k) {
        case BoundKind::ie_ode: return "ie_ode";
        case BoundKind::cn_ode: return "cn_ode";
        case BoundKind::bdf2_ode: return "bdf2_ode";
        case BoundKind::ie_pde: return "ie_pde";
        case BoundKind::cn_pde: return "cn_pde";
        case BoundKind::bdf2_pde: return "bdf2_pde";
    }
    return "?";
}

struct BoundTerms {
    BoundKind kind;
    int k = 1;                  // tau power of the algebraic term
    double leading_factor = 1;  // multiplies C_{u,alpha}(...) as a whole
    double c_u_alpha = 0;
    double coeff_exp = 0;       // constant in front of the exponential term
    double coeff_alg = 0;       // constant in front of the algebraic term; 0 below threshold
    double threshold_time = 0;  // t_n cutoff that switches coeff_alg on
    double init_term = 0;       // decayed |e^0|
    double exp_term = 0;        // coeff_exp * exp weight * tau^alpha
    double alg_term = 0;        // coeff_alg * t power * tau^k

    double total() const { return init_term + leading_factor * c_u_alpha * (exp_term + alg_term); }
};

namespace bound_detail {

inline bool is_ode_kind(BoundKind k) {
    return k == BoundKind::ie_ode || k == BoundKind::cn_ode || k == BoundKind::bdf2_ode;
}

inline void check_hypotheses(BoundKind kind, const ModelParams& params, double tau) {
    const double kappa = params.kappa;
    const double lambda1 = params.lambda1;
    if (is_ode_kind(kind)) {
        if (!(kappa < 0.0)) throw HypothesisViolation("scalar bounds require kappa < 0");
    } else {
        if (!(kappa < lambda1)) throw HypothesisViolation("diffusion bounds require kappa < lambda1");
    }
    switch (kind) {
        case BoundKind::ie_ode:
        case BoundKind::cn_ode:
            if (!(-kappa * tau < 1.0)) throw HypothesisViolation("requires -kappa*tau < 1");
            break;
        case BoundKind::bdf2_ode:
            if (!(-4.0 * kappa * tau < 1.0)) throw HypothesisViolation("requires -4*kappa*tau < 1");
            break;
        case BoundKind::ie_pde:
        case BoundKind::cn_pde:
            if (!(tau < 1.0 / (lambda1 - kappa)))
                throw HypothesisViolation("requires tau < 1/(lambda1-kappa)");
            break;
        case BoundKind::bdf2_pde:
            if (!(tau < 1.0 / (4.0 * lambda1 - kappa)))
                throw HypothesisViolation("requires tau < 1/(4*lambda1-kappa)");
            break;
    }
}

}  // namespace bound_detail

// Evaluates the chosen bound at step n with initial error e0. The decay rate
// is r = lambda1 - kappa (lambda1 = 0 for the scalar problem).
inline BoundTerms bound_rhs(BoundKind kind, const ManufacturedProblem& problem,
                            const TimeGrid& grid, int n, double e0) {
    if (n < 1 || n > grid.steps) throw DomainError("bound_rhs: step index out of range");
    const ModelParams& params = problem.params;
    const double tau = grid.tau;
    bound_detail::check_hypotheses(kind, params, tau);

    const double alpha = params.alpha;
    const double r = params.lambda1 - params.kappa;  // > 0 under the hypotheses
    const double t_n = grid.node(n);
    const double t_nm1 = grid.node(n - 1);

    BoundTerms b;
    b.kind = kind;
    b.c_u_alpha = problem.c_u_alpha;

    double init_rate = 0, exp_rate = 0, alg_rate = 0;
    double t_power = 0;
    switch (kind) {
        case BoundKind::ie_ode:
        case BoundKind::ie_pde:
            b.k = 1;
            b.leading_factor = 1.0;
            init_rate = 0.5;
            exp_rate = 0.25;
            b.coeff_exp = 2.0 / (1.0 - alpha) + 3.0 * std::exp(-r * t_n / 4.0);
            b.threshold_time = -(4.0 / r) * std::log(1.0 - std::pow(2.0, alpha - 1.0));
            alg_rate = 0.25;
            if (t_n > b.threshold_time) {
                b.coeff_alg = (std::pow(2.0, 1.0 - alpha) * (1.0 - std::exp(-alg_rate * r * t_n)) - 1.0) /
                              (1.0 - alpha);
            }
            t_power = detail::singular_power(t_nm1, alpha - 1.0);
            break;
        case BoundKind::cn_ode:
        case BoundKind::cn_pde:
            b.k = 2;
            b.leading_factor = 1.0;
            init_rate = 1.0;
            exp_rate = 0.5;
            b.coeff_exp = 9.0 / (2.0 - alpha) + 12.0 * std::exp(-r * t_n / 2.0);
            b.threshold_time = -(12.0 / (7.0 * r)) * std::log(1.0 - std::pow(2.0, alpha - 2.0));
            alg_rate = 7.0 / 12.0;
            if (t_n > b.threshold_time) {
                b.coeff_alg = (std::pow(2.0, 2.0 - alpha) * (1.0 - std::exp(-alg_rate * r * t_n)) - 1.0) /
                              (2.0 - alpha);
            }
            t_power = detail::singular_power(t_n, alpha - 2.0);
            break;
        case BoundKind::bdf2_ode:
        case BoundKind::bdf2_pde:
            b.k = 2;
            b.leading_factor = 2.0;
            init_rate = 0.5;
            exp_rate = 0.5;
            b.coeff_exp = 2.0 / (2.0 - alpha) + 4.0 * std::exp(-r * t_n / 4.0);
            b.threshold_time = -(2.0 / r) * std::log(1.0 - std::pow(2.0, alpha - 2.0));
            alg_rate = 0.5;
            if (t_n > b.threshold_time) {
                b.coeff_alg = (std::pow(2.0, 2.0 - alpha) * (1.0 - std::exp(-alg_rate * r * t_n)) - 1.0) /
                              (2.0 - alpha);
            }
            // the scalar variant is stated with t_{n-1}, the diffusion one with t_n
            t_power = (kind == BoundKind::bdf2_ode)
                          ? detail::singular_power(t_nm1, alpha - 2.0)
                          : detail::singular_power(t_n, alpha - 2.0);
            break;
    }
    b.init_term = std::exp(-init_rate * r * t_n) * std::abs(e0);
    b.exp_term = b.coeff_exp * std::exp(-exp_rate * r * t_n) * std::pow(tau, alpha);
    b.alg_term = (b.coeff_alg == 0.0) ? 0.0 : b.coeff_alg * t_power * std::pow(tau, b.k);
    return b;
}

inline BoundKind bound_kind_for(SchemeId scheme, bool ode) {
    switch (scheme) {
        case SchemeId::ie: return ode ? BoundKind::ie_ode : BoundKind::ie_pde;
        case SchemeId::cn: return ode ? BoundKind::cn_ode : BoundKind::cn_pde;
        case SchemeId::bdf2: return ode ? BoundKind::bdf2_ode : BoundKind::bdf2_pde;
        default: throw DomainError("no closed-form error bound for this scheme");
    }
}

// ---------------------------------------------------------------------------
// Inequality probes for the building blocks of the bounds.

struct SumBoundProbe {
    double sum = 0;
    double bound = 0;
    bool pass = false;
};

// Exponentially weighted singular sum I_n = sum_{k=2}^{n-1} tau rho^-(n-k-1) t_k^beta
// against its two-scale estimate, for rho > 1, beta < -1, n >= 4.
inline SumBoundProbe kernel_sum_bound_probe(double rho, double beta, double tau, int n) {
    if (!(rho > 1.0)) throw HypothesisViolation("kernel_sum_bound_probe: requires rho > 1");
    if (!(beta < -1.0)) throw HypothesisViolation("kernel_sum_bound_probe: requires beta < -1");
    if (n < 4) throw HypothesisViolation("kernel_sum_bound_probe: requires n >= 4");
    SumBoundProbe probe;
    for (int k = 2; k <= n - 1; ++k) {
        probe.sum += tau * std::pow(rho, -(n - k - 1)) * std::pow(k * tau, beta);
    }
    const double half_n = 0.5 * n;
    probe.bound = (-1.0 / (beta + 1.0)) *
                  ((std::pow(2.0, -(beta + 1.0)) * (1.0 - std::pow(rho, -(half_n - 1.0))) - 1.0) *
                       std::pow((n - 1) * tau, beta + 1.0) +
                   std::pow(rho, -(half_n - 2.0)) * std::pow(tau, beta + 1.0));
    probe.pass = probe.sum <= probe.bound * (1.0 + 1e-12);
    return probe;
}

struct RatioProbe {
    double lower = 0;
    double value = 0;
    double upper = 0;
    bool pass = false;
};

// exp(kappa v tau) <= (1 - kappa tau)^-v <= exp(kappa v tau / 2)
// for kappa < 0, 0 < tau <= -1/kappa, v >= 0.
inline RatioProbe euler_ratio_probe(double kappa, double tau, double upsilon) {
    if (!(kappa < 0.0 && tau > 0.0 && tau <= -1.0 / kappa)) {
        throw HypothesisViolation("euler_ratio_probe: requires 0 < tau <= -1/kappa");
    }
    if (!(upsilon >= 0.0)) throw HypothesisViolation("euler_ratio_probe: requires upsilon >= 0");
    RatioProbe probe;
    probe.lower = std::exp(kappa * upsilon * tau);
    probe.value = std::pow(1.0 - kappa * tau, -upsilon);
    probe.upper = std::exp(kappa * upsilon * tau / 2.0);
    const double slack = 1e-12 * (1.0 + probe.value);
    probe.pass = probe.lower <= probe.value + slack && probe.value <= probe.upper + slack;
    return probe;
}

// exp(7 kappa v tau / 6) <= psi^-v <= exp(kappa v tau) with
// psi = (1 - kappa tau/2)/(1 + kappa tau/2), for 0 < -kappa tau <= 1.
inline RatioProbe cn_ratio_probe(double kappa, double tau, double upsilon) {
    const double kt = kappa * tau;
    if (!(-kt > 0.0 && -kt <= 1.0)) {
        throw HypothesisViolation("cn_ratio_probe: requires 0 < -kappa*tau <= 1");
    }
    if (!(upsilon >= 0.0)) throw HypothesisViolation("cn_ratio_probe: requires upsilon >= 0");
    RatioProbe probe;
    const double psi = (1.0 - kt / 2.0) / (1.0 + kt / 2.0);
    probe.lower = std::exp(7.0 * kappa * upsilon * tau / 6.0);
    probe.value = std::pow(psi, -upsilon);
    probe.upper = std::exp(kappa * upsilon * tau);
    const double slack = 1e-12 * (1.0 + probe.value);
    probe.pass = probe.lower <= probe.value + slack && probe.value <= probe.upper + slack;
    return probe;
}

// ---------------------------------------------------------------------------
// Order formulas.

// log2 of the error ratio under halving.
inline double empirical_order(double error_half, double error_full) {
    if (!(error_half > 1e-300) || !(error_full > 1e-300) || !std::isfinite(error_half) ||
        !std::isfinite(error_full)) {
        throw DegenerateError("empirical_order: error underflowed or is not positive");
    }
    return std::log2(error_half / error_full);
}

// Order predicted by the two-term estimate under halving at fixed T:
//   log2( 2^k / (1 + (2^(k-alpha)-1) / (1 + 2^(k-alpha) e^(C r T) / N^(k-alpha))) )
// with r = lambda1 - kappa. Rises from alpha to k as the exponential term dies.
inline double predicted_order(const ModelParams& params, int n_steps, int k, double fitted_c = 1.0) {
    if (k != 1 && k != 2) throw DomainError("predicted_order: k must be 1 or 2");
    if (n_steps % 2 != 0) throw DomainError("predicted_order: N must be even");
    const double alpha = params.alpha;
    const double r = params.lambda1 - params.kappa;
    const double pow2 = std::pow(2.0, k - alpha);
    const double growth = std::exp(fitted_c * r * params.t_final) / std::pow(n_steps, k - alpha);
    return std::log2(std::pow(2.0, k) / (1.0 + (pow2 - 1.0) / (1.0 + pow2 * growth)));
}

// Right-hand side of the decay-preserving estimate for the L1 scheme:
//   C_{u,alpha} t_n^(alpha-1) (E'_alpha(-C (lambda1-kappa) t_n^alpha) tau + tau^(2-alpha)).
struct ConjectureRhs {
    double value = 0;
    bool accuracy_warning = false;
};

inline ConjectureRhs conjecture_rhs(const ManufacturedProblem& problem, const TimeGrid& grid,
                                    int n, double fitted_c = 1.0) {
    const ModelParams& params = problem.params;
    if (!(params.kappa < params.lambda1)) {
        throw HypothesisViolation("conjecture_rhs: requires kappa < lambda1");
    }
    if (n < 1 || n > grid.steps) throw DomainError("conjecture_rhs: step index out of range");
    const double alpha = params.alpha;
    const double t_n = grid.node(n);
    const double tau = grid.tau;
    const MittagLefflerEval ml =
        mittag_leffler(alpha, -fitted_c * (params.lambda1 - params.kappa) * std::pow(t_n, alpha));
    ConjectureRhs out;
    out.value = problem.c_u_alpha * std::pow(t_n, alpha - 1.0) *
                (ml.derivative * tau + std::pow(tau, 2.0 - alpha));
    out.accuracy_warning = ml.accuracy_warning;
    return out;
}

} // namespace singstep
