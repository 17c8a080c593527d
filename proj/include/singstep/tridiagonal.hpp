#pragma once

#include <cmath>
#include <vector>

#include "singstep/errors.hpp"

namespace singstep {

// Constant-coefficient symmetric tridiagonal operator: diag on the main
// diagonal, off on both neighbours. Realizes Delta_h + kappa I on the
// interior unknowns of a Dirichlet interval problem.
struct TridiagonalOperator {
    int size = 0;
    double diag = 0;
    double off = 0;

    // y = A x with zero Dirichlet values outside the range.
    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        for (int i = 0; i < size; ++i) {
            double v = diag * x[i];
            if (i > 0) v += off * x[i - 1];
            if (i + 1 < size) v += off * x[i + 1];
            y[i] = v;
        }
    }
};

// Two-sweep Thomas elimination for (a I - b A) x = rhs with a constant-
// coefficient A. The elimination multipliers are precomputed once and reused
// across all time steps of a solve.
class TridiagonalSolver {
  public:
    TridiagonalSolver(double shift, double scale, const TridiagonalOperator& op)
        : size_(op.size),
          e_(-scale * op.off),
          cprime_(op.size),
          pivots_inv_(op.size) {
        const double d = shift - scale * op.diag;
        double pivot = d;
        for (int i = 0; i < size_; ++i) {
            if (std::abs(pivot) < 1e-300) {
                throw LinearSolveFailure("tridiagonal elimination hit a zero pivot");
            }
            pivots_inv_[i] = 1.0 / pivot;
            cprime_[i] = e_ / pivot;
            pivot = d - e_ * cprime_[i];
        }
    }

    void solve_in_place(std::vector<double>& rhs) const {
        rhs[0] *= pivots_inv_[0];
        for (int i = 1; i < size_; ++i) {
            rhs[i] = (rhs[i] - e_ * rhs[i - 1]) * pivots_inv_[i];
        }
        for (int i = size_ - 2; i >= 0; --i) {
            rhs[i] -= cprime_[i] * rhs[i + 1];
        }
    }

  private:
    int size_;
    double e_;
    std::vector<double> cprime_;
    std::vector<double> pivots_inv_;
};

} // namespace singstep
