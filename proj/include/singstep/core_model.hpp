#pragma once

#include <cmath>
#include <functional>
#include <variant>

#include "singstep/errors.hpp"
#include "singstep/special_functions.hpp"

namespace singstep {

inline constexpr double kPi = 3.14159265358979323846;

// Uniform time mesh t_n = n*tau on [0, T]. Nodes are always computed
// multiplicatively so they are bit-stable and free of accumulation drift.
struct TimeGrid {
    int steps = 0;       // N
    double t_final = 0;  // T
    double tau = 0;      // T / N

    TimeGrid(int n, double T) : steps(n), t_final(T), tau(T / n) {
        if (n < 2) throw DomainError("TimeGrid: need at least 2 steps");
        if (!(T > 0.0)) throw DomainError("TimeGrid: final time must be positive");
    }

    double node(int n) const { return n * tau; }
    double half_node(int n) const { return (n - 0.5) * tau; }
};

struct OdeDomain {};
struct IntervalDomain {
    double length;  // L of (0, L)
};

using Domain = std::variant<OdeDomain, IntervalDomain>;

// Minimal Dirichlet Laplacian eigenvalue of (0, L).
inline double min_eigenvalue(double length) {
    if (!(length > 0.0)) throw DomainError("min_eigenvalue: length must be positive");
    return (kPi / length) * (kPi / length);
}

// One experiment's model parameters: singularity exponent alpha, reaction
// coefficient kappa, domain, final time. lambda1 is 0 for the scalar problem
// and (pi/L)^2 on an interval.
struct ModelParams {
    double alpha;
    double kappa;
    Domain domain;
    double lambda1;
    double t_final;

    bool is_ode() const { return std::holds_alternative<OdeDomain>(domain); }
    double interval_length() const { return std::get<IntervalDomain>(domain).length; }
};

inline ModelParams ode_params(double alpha, double kappa, double t_final) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    if (!(t_final > 0.0)) throw DomainError("final time must be positive");
    return {alpha, kappa, OdeDomain{}, 0.0, t_final};
}

inline ModelParams interval_params(double alpha, double kappa, double length, double t_final) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    if (!(t_final > 0.0)) throw DomainError("final time must be positive");
    return {alpha, kappa, IntervalDomain{length}, min_eigenvalue(length), t_final};
}

// A benchmark problem with a known exact solution, the analytically matching
// forcing term, and the regularity constant sup_t t^(k-alpha) |d^k u/dt^k|
// (measured in the norm the solver errors use).
struct ManufacturedProblem {
    ModelParams params;
    bool fractional = false;  // Caputo time derivative of order alpha instead of d/dt

    std::function<double(double, double)> exact;    // (t, x); x ignored for the scalar problem
    std::function<double(double, double)> forcing;  // (t, x)
    std::function<double(double)> initial;          // u0(x)
    std::function<double(double, double)> du_dt;
    std::function<double(double, double)> d2u_dt2;
    std::function<double(double, double)> d3u_dt3;
    double c_u_alpha = 0;
};

namespace detail {
inline double singular_power(double t, double p) {
    // t^p with the t = 0, p < 0 case pinned to +inf rather than NaN
    if (t == 0.0 && p < 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(t, p);
}
inline double regularity_constant(double alpha) {
    const double p1 = alpha;
    const double p2 = alpha * (1.0 - alpha);
    const double p3 = alpha * (1.0 - alpha) * (2.0 - alpha);
    return std::max(p1, std::max(p2, p3));
}
}  // namespace detail

// Scalar benchmark u(t) = 10 + t^alpha for u' = kappa u + f.
inline ManufacturedProblem make_ode_benchmark(double alpha, double kappa, double t_final) {
    ManufacturedProblem p;
    p.params = ode_params(alpha, kappa, t_final);
    p.fractional = false;
    p.exact = [alpha](double t, double) { return 10.0 + std::pow(t, alpha); };
    p.forcing = [alpha, kappa](double t, double) {
        return alpha * detail::singular_power(t, alpha - 1.0) - kappa * (10.0 + std::pow(t, alpha));
    };
    p.initial = [](double) { return 10.0; };
    p.du_dt = [alpha](double t, double) { return alpha * detail::singular_power(t, alpha - 1.0); };
    p.d2u_dt2 = [alpha](double t, double) {
        return alpha * (alpha - 1.0) * detail::singular_power(t, alpha - 2.0);
    };
    p.d3u_dt3 = [alpha](double t, double) {
        return alpha * (alpha - 1.0) * (alpha - 2.0) * detail::singular_power(t, alpha - 3.0);
    };
    p.c_u_alpha = detail::regularity_constant(alpha);
    return p;
}

// Interval benchmark u(t,x) = t^alpha sin(pi x / L) with homogeneous Dirichlet
// boundaries. classical: u_t - u_xx = kappa u + f; fractional: the Caputo
// derivative of t^alpha is Gamma(alpha+1), a constant in time.
inline ManufacturedProblem make_pde_benchmark(double alpha, double kappa, double length,
                                              double t_final, bool fractional) {
    ManufacturedProblem p;
    p.params = interval_params(alpha, kappa, length, t_final);
    p.fractional = fractional;
    const double lambda1 = p.params.lambda1;
    const double freq = kPi / length;
    p.exact = [alpha, freq](double t, double x) { return std::pow(t, alpha) * std::sin(freq * x); };
    if (fractional) {
        const double gamma_a1 = sf::gamma_fn(alpha + 1.0);
        p.forcing = [alpha, kappa, lambda1, freq, gamma_a1](double t, double x) {
            return (gamma_a1 + (lambda1 - kappa) * std::pow(t, alpha)) * std::sin(freq * x);
        };
    } else {
        p.forcing = [alpha, kappa, lambda1, freq](double t, double x) {
            return (alpha * detail::singular_power(t, alpha - 1.0) +
                    (lambda1 - kappa) * std::pow(t, alpha)) *
                   std::sin(freq * x);
        };
    }
    p.initial = [](double) { return 0.0; };
    p.du_dt = [alpha, freq](double t, double x) {
        return alpha * detail::singular_power(t, alpha - 1.0) * std::sin(freq * x);
    };
    p.d2u_dt2 = [alpha, freq](double t, double x) {
        return alpha * (alpha - 1.0) * detail::singular_power(t, alpha - 2.0) * std::sin(freq * x);
    };
    p.d3u_dt3 = [alpha, freq](double t, double x) {
        return alpha * (alpha - 1.0) * (alpha - 2.0) * detail::singular_power(t, alpha - 3.0) *
               std::sin(freq * x);
    };
    // L2 norm of the spatial profile enters the regularity constant because
    // the solver errors are measured in the discrete L2 norm.
    p.c_u_alpha = detail::regularity_constant(alpha) * std::sqrt(length / 2.0);
    return p;
}

enum class SchemeId { ie, cn, bdf2, l1 };

inline const char* scheme_name(SchemeId s) {
    switch (s) {
        case SchemeId::ie: return "ie";
        case SchemeId::cn: return "cn";
        case SchemeId::bdf2: return "bdf2";
        case SchemeId::l1: return "l1";
    }
    return "?";
}

} // namespace singstep
