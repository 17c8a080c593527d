#pragma once

#include <cmath>
#include <limits>
#include <quadmath.h>

#include "singstep/errors.hpp"
#include "singstep/special_functions.hpp"

namespace singstep {

// E_alpha(z) = sum_j z^j / Gamma(alpha j + 1) and its derivative, for real
// z <= 10 and alpha in (0, 1].
//
// The defining series suffers catastrophic cancellation for negative z: the
// largest partial sums grow like exp(s)/s with s = |z|^(1/alpha) while the
// value decays algebraically. The series is therefore accumulated in binary128
// (compensated summation taken to its conclusion), which keeps the absolute
// error near eps128 * exp(s) and is reliable up to s ~ 54. Beyond that the
// algebraic asymptotic expansion with smallest-term truncation takes over; on
// the negative real axis its optimal truncation error is ~exp(-s), so the two
// regimes overlap with ~1e-12 to spare at the crossover.
struct MittagLefflerEval {
    double alpha = 0;
    double z = 0;
    double value = 0;
    double derivative = 0;
    bool accuracy_warning = false;   // estimated absolute error above 1e-10
    double est_error = 0;
};

namespace ml_detail {

inline constexpr double kSeriesMaxS = 54.0;   // series usable while |z|^(1/alpha) <= this
inline constexpr double kWarnThreshold = 1e-10;
inline constexpr double kEps128 = 1.93e-34;

// sin(pi x) with exact argument reduction; keeps precision for large |x|.
inline double sin_pi(double x) {
    const double m = std::nearbyint(x);
    const double r = x - m;
    const double s = std::sin(3.14159265358979323846 * r);
    return (static_cast<long long>(m) % 2 == 0) ? s : -s;
}

struct SeriesResult {
    double value, derivative, est_error;
    bool ok;
};

inline SeriesResult series_sum(double alpha, double z) {
    const __float128 aq = alpha;
    const __float128 zq = z;
    __float128 sum = 0, dsum = 0;
    __float128 power = 1;  // z^j
    __float128 peak = 0;
    const __float128 tiny = 1e-300;
    const __float128 rel_stop = 1e-40;
    for (int j = 0; j <= 100000; ++j) {
        // direct division keeps the term error at a few eps128; going through
        // exp(lgamma) would scale the ulp error by ln Gamma and cost ~3 digits
        const __float128 arg = aq * j + 1;
        const __float128 g =
            arg <= 1700 ? 1 / tgammaq(arg) : expq(-lgammaq(arg));
        const __float128 term = power * g;
        if (isinfq(term) || isnanq(term) || isinfq(power)) {
            // far positive arguments: the value itself overflows
            return {std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(), false};
        }
        sum += term;
        if (j >= 1) dsum += j * (power / zq) * g;
        const __float128 mag = fabsq(term);
        if (mag > peak) peak = mag;
        if (j > 2 && mag < rel_stop * (fabsq(sum) + tiny)) break;
        power *= zq;
    }
    const double est = 3.0 * kEps128 * static_cast<double>(peak);
    return {static_cast<double>(sum), static_cast<double>(dsum), est, true};
}

// -sum_k z^{-k} / Gamma(1 - k alpha), terms formed in log space so the
// Gamma growth cannot overflow; stops at the smallest term. The stopping
// rule tracks the smooth envelope |z|^-k Gamma(k alpha) / pi: the |sin|
// factor of the reflection formula passes near zero whenever k alpha comes
// close to an integer and would otherwise fake an early minimum.
inline SeriesResult asymptotic_sum(double alpha, double z) {
    const double log_abs_z = std::log(-z);
    static constexpr double kLogPi = 1.1447298858494002;
    double sum = 0, dsum = 0;
    double prev_env = std::numeric_limits<double>::infinity();
    double est = 0;
    for (int k = 1; k <= 1000; ++k) {
        // 1/Gamma(1 - k alpha) = sin(pi (1 - k alpha)) Gamma(k alpha) / pi
        const double sp = sin_pi(1.0 - k * alpha);
        const double lt = -k * log_abs_z + std::lgamma(k * alpha) - kLogPi;
        const double env = std::exp(lt);
        if (env > prev_env) {  // past the envelope minimum
            est = env;
            break;
        }
        // -z^{-k} = (-1)^{k+1} |z|^{-k} for z < 0
        const double sign = (k % 2 == 0) ? -1.0 : 1.0;
        const double term = sign * sp * env;
        sum += term;
        dsum += -term * k / z;
        prev_env = env;
        est = env;
        if (env < 1e-18 * std::abs(sum)) break;
    }
    return {sum, dsum, est, true};
}

}  // namespace ml_detail

inline MittagLefflerEval mittag_leffler(double alpha, double z) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("mittag_leffler: alpha must lie in (0, 1]");
    }
    if (!(z <= 10.0)) {
        throw DomainError("mittag_leffler: argument restricted to z <= 10");
    }
    MittagLefflerEval out;
    out.alpha = alpha;
    out.z = z;
    if (alpha == 1.0) {  // E_1 = exp, evaluated directly
        out.value = std::exp(z);
        out.derivative = out.value;
        return out;
    }
    if (z == 0.0) {
        out.value = 1.0;
        out.derivative = 1.0 / sf::gamma_fn(alpha + 1.0);
        return out;
    }
    const double s = std::pow(std::abs(z), 1.0 / alpha);
    ml_detail::SeriesResult r{};
    if (z > 0.0 || s <= ml_detail::kSeriesMaxS) {
        r = ml_detail::series_sum(alpha, z);
    } else {
        r = ml_detail::asymptotic_sum(alpha, z);
    }
    out.value = r.value;
    out.derivative = r.derivative;
    out.est_error = r.est_error;
    out.accuracy_warning = !r.ok || !(r.est_error <= ml_detail::kWarnThreshold);
    return out;
}

} // namespace singstep
