#pragma once

#include <cmath>
#include <vector>

#include "singstep/errors.hpp"

namespace singstep {

// Discrete orthogonal convolution inverses theta of the BDF2 convolution
// kernels A. The BDF2 kernels for a run with an Euler first step are
//   A^(1)_0 = 1 - kt,  and for l >= 2:  A^(l)_0 = 3/2 - kt, A^(l)_1 = -2,
//   A^(l)_2 = 1/2, higher entries zero            (kt = kappa*tau).
// theta is defined by sum_{j=k}^n theta_{n-j} A^(j)_{j-k} = delta_{nk}.
struct DocKernelSet {
    int n = 0;
    double kappa_tau = 0;
    // theta[k] = theta^{(n)}_{n-k} for k = 1..n; theta[0] unused.
    std::vector<double> theta;
};

inline double bdf2_kernel_a0(int level, double kappa_tau) {
    return level == 1 ? 1.0 - kappa_tau : 1.5 - kappa_tau;
}

// Solves the lower-triangular orthogonality system by back substitution.
// This is the ground-truth definition of the kernels.
inline DocKernelSet doc_recursive_oracle(int n, double kappa_tau) {
    if (n < 1) throw DomainError("doc_recursive_oracle: n must be positive");
    if (bdf2_kernel_a0(1, kappa_tau) == 0.0 || bdf2_kernel_a0(2, kappa_tau) == 0.0) {
        throw SingularKernel("doc_recursive_oracle: vanishing leading kernel coefficient");
    }
    DocKernelSet set{n, kappa_tau, std::vector<double>(n + 1, 0.0)};
    // Index by the kernel level j (theta[k] pairs with A^(j), j = k):
    //   theta_n     A^(n)_0 = 1
    //   theta_{n-1} A^(n-1)_0 = 2 theta_n
    //   theta_j     A^(j)_0 = 2 theta_{j+1} - theta_{j+2}/2,   j <= n-2.
    set.theta[n] = 1.0 / bdf2_kernel_a0(n, kappa_tau);
    if (n >= 2) set.theta[n - 1] = 2.0 * set.theta[n] / bdf2_kernel_a0(n - 1, kappa_tau);
    for (int j = n - 2; j >= 1; --j) {
        set.theta[j] =
            (2.0 * set.theta[j + 1] - 0.5 * set.theta[j + 2]) / bdf2_kernel_a0(j, kappa_tau);
    }
    return set;
}

// Closed form of the DOC kernels, valid for 0 < -kappa*tau < 1/2. With
// s = sqrt(1 + 2 kt) and m = n - k + 1:
//   theta^{(n)}_{n-k} = ((2-s)^{-m} - (2+s)^{-m}) / s            for k >= 2.
// The k = 1 kernel divides by the Euler first-step coefficient 1 - kt instead
// of 3/2 - kt, which contributes the extra prefactor (3-2kt)/(2-2kt).
inline DocKernelSet doc_closed_form(int n, double kappa_tau) {
    if (n < 1) throw DomainError("doc_closed_form: n must be positive");
    const double minus_kt = -kappa_tau;
    if (!(minus_kt > 0.0 && minus_kt < 0.5)) {
        throw DomainError("doc_closed_form: requires 0 < -kappa*tau < 1/2");
    }
    const double s = std::sqrt(1.0 + 2.0 * kappa_tau);
    const double lo = 1.0 / (2.0 - s);  // > 1/2, root with the larger modulus inverse
    const double hi = 1.0 / (2.0 + s);
    DocKernelSet set{n, kappa_tau, std::vector<double>(n + 1, 0.0)};
    for (int k = 1; k <= n; ++k) {
        const int m = n - k + 1;
        double value = (std::pow(lo, m) - std::pow(hi, m)) / s;
        if (k == 1) value *= (3.0 - 2.0 * kappa_tau) / (2.0 - 2.0 * kappa_tau);
        set.theta[k] = value;
    }
    return set;
}

struct DocBoundReport {
    double max_ratio = 0;   // max_k theta_{n-k} (1-kt)^{n-k+1}
    bool all_positive = true;
    bool pass = false;      // positivity and max_ratio <= 2
};

// Checks 0 < theta^{(n)}_{n-k} <= 2 (1-kt)^{-(n-k+1)}, which requires
// 0 < -kappa*tau < 1/4.
inline DocBoundReport doc_bound_check(const DocKernelSet& set) {
    const double minus_kt = -set.kappa_tau;
    if (!(minus_kt > 0.0 && minus_kt < 0.25)) {
        throw DomainError("doc_bound_check: requires 0 < -kappa*tau < 1/4");
    }
    DocBoundReport report;
    const double decay = 1.0 - set.kappa_tau;
    for (int k = 1; k <= set.n; ++k) {
        const double th = set.theta[k];
        if (!(th > 0.0)) report.all_positive = false;
        report.max_ratio = std::max(report.max_ratio, th * std::pow(decay, set.n - k + 1));
    }
    report.pass = report.all_positive && report.max_ratio <= 2.0;
    return report;
}

} // namespace singstep
