#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "singstep/bounds.hpp"
#include "singstep/core_model.hpp"
#include "singstep/ode_steppers.hpp"

using namespace singstep;

namespace {

// minimal scalar problem with hand-chosen exact solution and forcing
ManufacturedProblem custom_ode(double kappa, std::function<double(double)> exact,
                               std::function<double(double)> forcing) {
    ManufacturedProblem p;
    p.params = ode_params(0.5, kappa, 1.0);
    p.exact = [exact](double t, double) { return exact(t); };
    p.forcing = [forcing](double t, double) { return forcing(t); };
    p.initial = [exact](double) { return exact(0.0); };
    return p;
}

double final_error(SchemeId scheme, double alpha, double kappa, double T, int N) {
    const auto problem = make_ode_benchmark(alpha, kappa, T);
    const TimeGrid grid(N, T);
    const auto trace = run_ode_scheme(scheme, problem, grid, kappa);
    return std::abs(problem.exact(T, 0.0) - trace.values[N]);
}

double order_at(SchemeId scheme, double alpha, double kappa, double T, int N) {
    return empirical_order(final_error(scheme, alpha, kappa, T, N / 2),
                           final_error(scheme, alpha, kappa, T, N));
}

}  // namespace

TEST_CASE("implicit Euler basics") {
    SECTION("zero dynamics stays zero") {
        auto p = custom_ode(0.0, [](double) { return 0.0; }, [](double) { return 0.0; });
        const auto trace = step_ie(p, TimeGrid(16, 1.0), 0.0);
        for (double v : trace.values) REQUIRE(v == 0.0);
    }
    SECTION("geometric decay closed form") {
        auto p = custom_ode(-1.0, [](double t) { return std::exp(-t); }, [](double) { return 0.0; });
        p.initial = [](double) { return 1.0; };
        const auto trace = step_ie(p, TimeGrid(2, 1.0), -1.0);
        REQUIRE(trace.values[2] == Catch::Approx(4.0 / 9.0).epsilon(1e-15));
    }
    SECTION("discrete solution matches the explicit geometric sum") {
        const double kappa = -5.0;
        const auto problem = make_ode_benchmark(0.5, kappa, 1.0);
        const TimeGrid grid(64, 1.0);
        const auto trace = step_ie(problem, grid, kappa);
        const double tau = grid.tau;
        const double rho = 1.0 - kappa * tau;
        for (int n : {1, 7, 33, 64}) {
            double expected = std::pow(rho, -n) * 10.0;
            for (int k = 1; k <= n; ++k) {
                expected += tau * std::pow(rho, -(n + 1 - k)) * problem.forcing(grid.node(k), 0.0);
            }
            REQUIRE(trace.values[n] == Catch::Approx(expected).epsilon(1e-12));
        }
    }
    SECTION("step size guard") {
        auto p = custom_ode(2.0, [](double) { return 0.0; }, [](double) { return 0.0; });
        REQUIRE_THROWS_AS(step_ie(p, TimeGrid(2, 1.0), 2.0), StepSizeViolation);
    }
}

TEST_CASE("Crank-Nicolson basics") {
    SECTION("exact for constant forcing with kappa = 0") {
        auto p = custom_ode(0.0, [](double t) { return 2.0 + 3.0 * t; },
                            [](double) { return 3.0; });
        const auto trace = step_cn(p, TimeGrid(37, 2.0), 0.0);
        REQUIRE(trace.values.back() == Catch::Approx(8.0).epsilon(1e-14));
    }
    SECTION("exact on quadratics with kappa = 0") {
        auto p = custom_ode(0.0, [](double t) { return t * t; }, [](double t) { return 2.0 * t; });
        p.initial = [](double) { return 0.0; };
        const auto trace = step_cn(p, TimeGrid(64, 1.0), 0.0);
        for (int n = 0; n <= 64; ++n) {
            const double t = trace.grid.node(n);
            REQUIRE(trace.values[n] == Catch::Approx(t * t).margin(1e-14));
        }
    }
    SECTION("step size guard") {
        auto p = custom_ode(4.0, [](double) { return 0.0; }, [](double) { return 0.0; });
        REQUIRE_THROWS_AS(step_cn(p, TimeGrid(2, 1.0), 4.0), StepSizeViolation);
    }
}

TEST_CASE("BDF2 basics") {
    SECTION("constants are reproduced exactly") {
        auto p = custom_ode(0.0, [](double) { return 1.0; }, [](double) { return 0.0; });
        const auto trace = step_bdf2(p, TimeGrid(32, 1.0), 0.0);
        for (double v : trace.values) REQUIRE(v == 1.0);
    }
    SECTION("quadratic error is fully explained by the Euler first step") {
        // with u = t^2, kappa = 0: e^0 = 0, e^1 = -tau^2, and the two-step
        // recursion is exact, so e^n = (3/2) tau^2 (3^-n - 1)
        auto p = custom_ode(0.0, [](double t) { return t * t; }, [](double t) { return 2.0 * t; });
        p.initial = [](double) { return 0.0; };
        const TimeGrid grid(48, 1.0);
        const auto trace = step_bdf2(p, grid, 0.0);
        const double tau2 = grid.tau * grid.tau;
        for (int n = 1; n <= 48; ++n) {
            const double t = grid.node(n);
            const double expected_error = 1.5 * tau2 * (std::pow(3.0, -n) - 1.0);
            REQUIRE(t * t - trace.values[n] == Catch::Approx(expected_error).margin(1e-13));
        }
    }
    SECTION("step size guard") {
        auto p = custom_ode(3.0, [](double) { return 0.0; }, [](double) { return 0.0; });
        REQUIRE_THROWS_AS(step_bdf2(p, TimeGrid(2, 1.0), 3.0), StepSizeViolation);
    }
}

TEST_CASE("linear solutions are reproduced exactly by IE and CN") {
    const double a = 1.5, b = -2.0;
    for (double kappa : {0.0, -2.0, 0.7}) {
        auto p = custom_ode(kappa, [=](double t) { return a + b * t; },
                            [=](double t) { return b - kappa * (a + b * t); });
        for (auto scheme : {SchemeId::ie, SchemeId::cn}) {
            const auto trace = run_ode_scheme(scheme, p, TimeGrid(32, 1.0), kappa);
            for (int n = 0; n <= 32; ++n) {
                const double t = trace.grid.node(n);
                REQUIRE(trace.values[n] == Catch::Approx(a + b * t).epsilon(1e-12).margin(1e-12));
            }
        }
    }
}

TEST_CASE("unforced decay") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> kt(0.01, 0.99);

    SECTION("IE magnitudes nonincreasing for kappa < 0") {
        for (int i = 0; i < 20; ++i) {
            const double tau = 0.25;
            const double kappa = -kt(rng) / tau;
            auto p = custom_ode(kappa, [](double) { return 0.0; }, [](double) { return 0.0; });
            p.initial = [](double) { return 1.0; };
            const auto trace = step_ie(p, TimeGrid(16, 4.0), kappa);
            for (int n = 1; n <= 16; ++n) {
                REQUIRE(std::abs(trace.values[n]) <= std::abs(trace.values[n - 1]));
            }
        }
    }
    SECTION("CN magnitudes nonincreasing while -kappa*tau <= 2") {
        for (double minus_kt : {0.5, 1.0, 1.7, 2.0}) {
            const double tau = 0.25;
            const double kappa = -minus_kt / tau;
            auto p = custom_ode(kappa, [](double) { return 0.0; }, [](double) { return 0.0; });
            p.initial = [](double) { return 1.0; };
            const auto trace = step_cn(p, TimeGrid(16, 4.0), kappa);
            for (int n = 1; n <= 16; ++n) {
                REQUIRE(std::abs(trace.values[n]) <= std::abs(trace.values[n - 1]) + 1e-15);
            }
        }
    }
    SECTION("BDF2 magnitudes stay within 3x the initial value") {
        for (double minus_kt : {0.01, 0.1, 0.3, 1.0}) {
            const double tau = 0.125;
            const double kappa = -minus_kt / tau;
            auto p = custom_ode(kappa, [](double) { return 0.0; }, [](double) { return 0.0; });
            p.initial = [](double) { return 1.0; };
            const auto trace = step_bdf2(p, TimeGrid(64, 8.0), kappa);
            for (double v : trace.values) REQUIRE(std::abs(v) <= 3.0);
        }
    }
}

TEST_CASE("benchmark convergence orders at reference parameters") {
    SECTION("IE settles to first order for strongly damped runs") {
        REQUIRE(order_at(SchemeId::ie, 0.5, -20.0, 1.0, 256) == Catch::Approx(1.00).margin(0.02));
    }
    SECTION("CN alpha-order regime") {
        REQUIRE(order_at(SchemeId::cn, 0.5, -5.0, 1.0, 2048) == Catch::Approx(0.50).margin(0.02));
    }
    SECTION("CN kink produces a negative order") {
        REQUIRE(order_at(SchemeId::cn, 0.5, -10.0, 1.0, 512) == Catch::Approx(-0.63).margin(0.15));
    }
    SECTION("BDF2 second-order regime") {
        REQUIRE(order_at(SchemeId::bdf2, 0.5, -20.0, 1.0, 512) == Catch::Approx(2.01).margin(0.03));
    }
    SECTION("BDF2 kink produces a negative order") {
        REQUIRE(order_at(SchemeId::bdf2, 0.5, -10.0, 1.0, 256) ==
                Catch::Approx(-0.55).margin(0.15));
    }
    SECTION("IE orders drift down toward alpha as N grows at kappa = -5") {
        REQUIRE(order_at(SchemeId::ie, 0.5, -5.0, 1.0, 2048) == Catch::Approx(0.59).margin(0.03));
    }
}
