#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "singstep/bounds.hpp"
#include "singstep/core_model.hpp"
#include "singstep/ode_steppers.hpp"
#include "singstep/special_functions.hpp"

using namespace singstep;

TEST_CASE("bound structure for the implicit Euler estimate") {
    SECTION("vanishing damping switches the algebraic term off") {
        const auto p = make_ode_benchmark(0.5, -1e-9, 1.0);
        const TimeGrid grid(64, 1.0);
        const auto b = bound_rhs(BoundKind::ie_ode, p, grid, 64, 0.0);
        REQUIRE(b.coeff_alg == 0.0);
        REQUIRE(b.alg_term == 0.0);
        // coefficient tends to 2/(1-alpha) + 3 = 7, times c = 0.5 and tau^alpha
        const double expected = 0.5 * 7.0 * std::pow(grid.tau, 0.5);
        REQUIRE(b.total() == Catch::Approx(expected).epsilon(1e-6));
    }
    SECTION("algebraic term takes over at strong damping") {
        // at kappa = -20 the exponential weight e^(-5) pushes the tau^alpha
        // term below the algebraic one (measured ratio ~0.5 at N = 256),
        // which is what moves the observed order to 1
        const auto p = make_ode_benchmark(0.5, -20.0, 1.0);
        const TimeGrid grid(256, 1.0);
        const auto b = bound_rhs(BoundKind::ie_ode, p, grid, 256, 0.0);
        REQUIRE(b.exp_term < b.alg_term);
        // at weak damping the same comparison flips
        const auto weak = make_ode_benchmark(0.5, -1.0, 1.0);
        const auto bw = bound_rhs(BoundKind::ie_ode, weak, grid, 256, 0.0);
        REQUIRE(bw.alg_term < bw.exp_term);
    }
    SECTION("below the switch time the constant is exactly zero") {
        // threshold for alpha = 0.5, kappa = -1 sits near t = 4.91
        const auto p = make_ode_benchmark(0.5, -1.0, 1.0);
        const TimeGrid grid(64, 1.0);
        const auto b = bound_rhs(BoundKind::ie_ode, p, grid, 64, 0.0);
        REQUIRE(b.threshold_time == Catch::Approx(4.911788709198063).epsilon(1e-12));
        REQUIRE(b.coeff_alg == 0.0);
    }
    SECTION("initial error decays exponentially") {
        const auto p = make_ode_benchmark(0.5, -4.0, 1.0);
        const TimeGrid grid(64, 1.0);
        const auto b = bound_rhs(BoundKind::ie_ode, p, grid, 64, 2.0);
        REQUIRE(b.init_term == Catch::Approx(2.0 * std::exp(-4.0 / 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("threshold time of the diffusion Crank-Nicolson estimate") {
    const auto p = make_pde_benchmark(0.5, 0.0, kPi, 1.0, false);  // lambda1 = 1
    const TimeGrid grid(64, 1.0);
    const auto b = bound_rhs(BoundKind::cn_pde, p, grid, 64, 0.0);
    REQUIRE(b.threshold_time == Catch::Approx(0.7478822884082238).epsilon(1e-12));
    REQUIRE(b.coeff_alg > 0.0);  // T = 1 lies past the switch
}

TEST_CASE("bound terms never increase with N") {
    const auto p = make_ode_benchmark(0.5, -2.0, 2.0);
    double prev_exp = 1e300, prev_alg = 1e300;
    for (int N : {64, 128, 256, 512, 1024}) {
        const TimeGrid grid(N, 2.0);
        const auto b = bound_rhs(BoundKind::bdf2_ode, p, grid, N, 0.0);
        REQUIRE(b.exp_term <= prev_exp);
        REQUIRE(b.alg_term <= prev_alg);
        REQUIRE(b.coeff_exp >= 0.0);
        REQUIRE(b.coeff_alg >= 0.0);
        prev_exp = b.exp_term;
        prev_alg = b.alg_term;
    }
}

TEST_CASE("hypothesis checks") {
    const TimeGrid grid(64, 1.0);
    const auto positive = make_ode_benchmark(0.5, 1.0, 1.0);
    REQUIRE_THROWS_AS(bound_rhs(BoundKind::ie_ode, positive, grid, 64, 0.0), HypothesisViolation);

    const auto strong = make_ode_benchmark(0.5, -20.0, 1.0);
    const TimeGrid coarse(64, 1.0);  // -4 kappa tau = 1.25
    REQUIRE_THROWS_AS(bound_rhs(BoundKind::bdf2_ode, strong, coarse, 64, 0.0),
                      HypothesisViolation);
    REQUIRE_NOTHROW(bound_rhs(BoundKind::ie_ode, strong, coarse, 64, 0.0));

    const auto pde = make_pde_benchmark(0.5, -20.0, kPi, 1.0, false);
    const TimeGrid pde_coarse(16, 1.0);  // tau = 1/16 >= 1/(lambda1 - kappa) = 1/21
    REQUIRE_THROWS_AS(bound_rhs(BoundKind::cn_pde, pde, pde_coarse, 16, 0.0),
                      HypothesisViolation);
    const auto wrong_sign = make_pde_benchmark(0.5, 2.0, kPi, 1.0, false);  // kappa > lambda1
    REQUIRE_THROWS_AS(bound_rhs(BoundKind::ie_pde, wrong_sign, grid, 64, 0.0),
                      HypothesisViolation);
}

TEST_CASE("fitted multiplier stays modest on the scalar benchmark") {
    for (auto [scheme, kind] : {std::pair{SchemeId::ie, BoundKind::ie_ode},
                                {SchemeId::cn, BoundKind::cn_ode},
                                {SchemeId::bdf2, BoundKind::bdf2_ode}}) {
        double worst = 0.0;
        for (double kappa : {-1.0, -20.0}) {
            for (int N : {64, 256}) {
                const auto p = make_ode_benchmark(0.5, kappa, 1.0);
                const TimeGrid grid(N, 1.0);
                if (kind == BoundKind::bdf2_ode && -4.0 * kappa * grid.tau >= 1.0) continue;
                const auto trace = run_ode_scheme(scheme, p, grid, kappa);
                for (int n = 1; n <= N; ++n) {
                    const double err = std::abs(p.exact(grid.node(n), 0.0) - trace.values[n]);
                    const double rhs = bound_rhs(kind, p, grid, n, 0.0).total();
                    if (rhs > 0.0 && std::isfinite(rhs)) worst = std::max(worst, err / rhs);
                }
            }
        }
        REQUIRE(worst <= 10.0);
        REQUIRE(worst > 1e-3);  // the two-term shape is not vacuously loose
    }
}

TEST_CASE("weighted-sum probe") {
    SECTION("holds across the sampled hypothesis box") {
        for (double rho : {1.05, 1.1, 1.5, 2.0}) {
            for (double beta : {-1.5, -2.5}) {
                for (int n : {4, 7, 32, 111, 200}) {
                    const auto probe = kernel_sum_bound_probe(rho, beta, 0.1, n);
                    REQUIRE(probe.pass);
                    REQUIRE(probe.sum <= probe.bound);
                }
            }
        }
    }
    SECTION("hypotheses enforced") {
        REQUIRE_THROWS_AS(kernel_sum_bound_probe(1.0, -1.5, 0.1, 10), HypothesisViolation);
        REQUIRE_THROWS_AS(kernel_sum_bound_probe(1.1, -0.5, 0.1, 10), HypothesisViolation);
        REQUIRE_THROWS_AS(kernel_sum_bound_probe(1.1, -1.5, 0.1, 3), HypothesisViolation);
    }
}

TEST_CASE("growth-ratio probes") {
    SECTION("hand-checked point") {
        const auto probe = euler_ratio_probe(-1.0, 1.0, 3.0);
        REQUIRE(probe.lower == Catch::Approx(0.04978706836786394).epsilon(1e-14));
        REQUIRE(probe.value == Catch::Approx(0.125).epsilon(1e-14));
        REQUIRE(probe.upper == Catch::Approx(0.22313016014842982).epsilon(1e-14));
        REQUIRE(probe.pass);
    }
    SECTION("upsilon = 0 collapses to equalities") {
        const auto e = euler_ratio_probe(-2.0, 0.25, 0.0);
        REQUIRE(e.lower == 1.0);
        REQUIRE(e.value == 1.0);
        REQUIRE(e.upper == 1.0);
        REQUIRE(e.pass);
        const auto c = cn_ratio_probe(-2.0, 0.25, 0.0);
        REQUIRE(c.value == 1.0);
        REQUIRE(c.pass);
    }
    SECTION("random in-hypothesis samples") {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> ks(-30.0, -0.1), us(0.0, 50.0), fs(0.0, 1.0);
        for (int i = 0; i < 2000; ++i) {
            const double kappa = ks(rng);
            const double tau = std::max(1e-6, fs(rng)) * (-1.0 / kappa);
            REQUIRE(euler_ratio_probe(kappa, tau, us(rng)).pass);
            REQUIRE(cn_ratio_probe(kappa, tau, us(rng)).pass);
        }
    }
    SECTION("hypotheses enforced") {
        REQUIRE_THROWS_AS(euler_ratio_probe(-1.0, 1.5, 1.0), HypothesisViolation);
        REQUIRE_THROWS_AS(euler_ratio_probe(1.0, 0.5, 1.0), HypothesisViolation);
        REQUIRE_THROWS_AS(cn_ratio_probe(-1.0, 1.5, 1.0), HypothesisViolation);
        REQUIRE_THROWS_AS(euler_ratio_probe(-1.0, 0.5, -1.0), HypothesisViolation);
    }
}

TEST_CASE("empirical order") {
    REQUIRE(empirical_order(0.2, 0.1) == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(empirical_order(0.1, 0.2) == Catch::Approx(-1.0).epsilon(1e-14));
    REQUIRE_THROWS_AS(empirical_order(0.0, 0.1), DegenerateError);
    REQUIRE_THROWS_AS(empirical_order(0.1, 0.0), DegenerateError);
    REQUIRE_THROWS_AS(empirical_order(0.1, -0.2), DegenerateError);
}

TEST_CASE("predicted order") {
    SECTION("limits") {
        const auto fast = ode_params(0.5, -31.0, 200.0);
        REQUIRE(predicted_order(fast, 64, 1) >= 1.0 - 0.02);
        REQUIRE(predicted_order(fast, 64, 2) >= 2.0 - 0.02);
        const auto slow = ode_params(0.5, -1e-9, 1e-6);
        REQUIRE(predicted_order(slow, 1 << 25, 1) <= 0.5 + 0.02);
        REQUIRE(predicted_order(slow, 1 << 25, 1) >= 0.5 - 1e-9);
    }
    SECTION("dropping N raises the order") {
        const auto p = ode_params(0.5, -1.0, 10.0);
        REQUIRE(predicted_order(p, 128, 1) >= predicted_order(p, 256, 1));
    }
    SECTION("monotone along every parameter axis") {
        for (int k : {1, 2}) {
            double prev = -1.0;
            for (double T : {0.1, 1.0, 5.0, 20.0, 100.0}) {
                const double v = predicted_order(ode_params(0.5, -2.0, T), 256, k);
                REQUIRE(v >= prev - 1e-12);
                prev = v;
            }
            prev = 3.0;
            for (double kappa : {-20.0, -10.0, -5.0, -1.0, -0.1}) {
                const double v = predicted_order(ode_params(0.5, kappa, 5.0), 256, k);
                REQUIRE(v <= prev + 1e-12);
                prev = v;
            }
            prev = -1.0;
            for (double L : {5.0, 3.0, 2.0, 1.0, 0.5}) {  // shrinking L raises lambda1
                const double v = predicted_order(interval_params(0.5, 0.0, L, 5.0), 256, k);
                REQUIRE(v >= prev - 1e-12);
                prev = v;
            }
        }
    }
    SECTION("preconditions") {
        const auto p = ode_params(0.5, -1.0, 1.0);
        REQUIRE_THROWS_AS(predicted_order(p, 256, 3), DomainError);
        REQUIRE_THROWS_AS(predicted_order(p, 255, 1), DomainError);
    }
}

TEST_CASE("conjectured estimate for the L1 scheme") {
    SECTION("undamped limit reduces to the power envelope") {
        // kappa -> lambda1 makes the Mittag-Leffler slope 1/Gamma(1+alpha)
        const auto p = make_pde_benchmark(0.5, 1.0 - 1e-12, kPi, 1.0, true);
        const TimeGrid grid(64, 1.0);
        const auto rhs = conjecture_rhs(p, grid, 64, 1.0);
        const double envelope = p.c_u_alpha *
                                (grid.tau / sf::gamma_fn(1.5) + std::pow(grid.tau, 1.5));
        REQUIRE(rhs.value == Catch::Approx(envelope).epsilon(1e-6));
    }
    SECTION("raising the fitted constant shrinks the leading coefficient") {
        const auto p = make_pde_benchmark(0.5, -10.0, kPi, 10.0, true);
        const TimeGrid grid(128, 10.0);
        double prev = 1e300;
        for (double c : {0.5, 1.0, 2.0}) {
            const auto rhs = conjecture_rhs(p, grid, 128, c);
            REQUIRE(rhs.value < prev);
            REQUIRE_FALSE(rhs.accuracy_warning);
            prev = rhs.value;
        }
    }
    SECTION("requires kappa < lambda1") {
        const auto p = make_pde_benchmark(0.5, 2.0, kPi, 1.0, true);
        const TimeGrid grid(64, 1.0);
        REQUIRE_THROWS_AS(conjecture_rhs(p, grid, 64, 1.0), HypothesisViolation);
    }
}
