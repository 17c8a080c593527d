#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "singstep/bounds.hpp"
#include "singstep/config.hpp"
#include "singstep/core_model.hpp"
#include "singstep/l1_subdiffusion.hpp"
#include "singstep/ode_steppers.hpp"
#include "singstep/pde_solver.hpp"

namespace singstep {

struct ExperimentCell {
    SchemeId scheme;
    double alpha;
    double kappa;
    std::optional<double> length;  // empty for the scalar problem
    double t_final;
    int n_steps;
    int cells;  // M

    auto key() const {
        return std::tuple(static_cast<int>(scheme), kappa, length.value_or(-1.0), t_final, n_steps);
    }
};

struct CellResult {
    bool ok = false;
    std::string message;             // failure reason when !ok
    double final_error = 0;
    std::vector<double> step_errors; // |e^n| for n = 0..N (kept for bound fitting)
};

struct TableRow {
    SchemeId scheme;
    double alpha;
    double kappa;
    std::optional<double> length;
    double lambda1;
    double t_final;
    std::optional<int> cells;
    int n_steps;
    std::optional<double> final_error;
    std::optional<double> order;
    std::optional<double> exp_term;
    std::optional<double> alg_term;
    std::optional<double> predicted;
    std::string status = "ok";
    // populated when bound evaluation is requested
    std::optional<BoundTerms> bound;
    std::optional<double> lambda_star;
    std::optional<double> conjecture_value;
    bool conjecture_warning = false;
};

struct ConvergenceTable {
    double alpha = 0;
    int cells = 0;
    std::string timestamp;  // informational only; never serialized into the CSVs
    std::vector<TableRow> rows;
};

namespace run_detail {

inline ManufacturedProblem cell_problem(const ExperimentCell& cell) {
    if (!cell.length) return make_ode_benchmark(cell.alpha, cell.kappa, cell.t_final);
    return make_pde_benchmark(cell.alpha, cell.kappa, *cell.length, cell.t_final,
                              cell.scheme == SchemeId::l1);
}

inline CellResult run_cell(const ExperimentCell& cell, bool keep_steps) {
    CellResult result;
    try {
        const ManufacturedProblem problem = cell_problem(cell);
        const TimeGrid grid(cell.n_steps, cell.t_final);
        if (!cell.length) {
            const SolutionTrace trace = run_ode_scheme(cell.scheme, problem, grid, cell.kappa);
            if (keep_steps) {
                result.step_errors.resize(grid.steps + 1);
                for (int n = 0; n <= grid.steps; ++n) {
                    result.step_errors[n] =
                        std::abs(problem.exact(grid.node(n), 0.0) - trace.values[n]);
                }
            }
            result.final_error =
                std::abs(problem.exact(grid.t_final, 0.0) - trace.values[grid.steps]);
        } else {
            const SpaceGrid space(cell.cells, *cell.length);
            const FieldTrace trace =
                cell.scheme == SchemeId::l1
                    ? solve_l1(problem, space, grid, cell.kappa)
                    : solve_pde(problem, space, grid, cell.kappa, cell.scheme);
            const std::vector<double> errors = discrete_l2_error(trace, problem);
            if (keep_steps) result.step_errors = errors;
            result.final_error = errors.back();
        }
        result.ok = true;
    } catch (const Error& e) {
        result.message = e.what();
    }
    return result;
}

template <class F>
inline void parallel_for(std::size_t count, int jobs, F&& body) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(jobs, count);
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Fits the smallest multiplier lambda with lambda * rhs(n) >= |e^n| for all n.
inline std::optional<double> fit_lambda_star(const ManufacturedProblem& problem,
                                             const TimeGrid& grid, BoundKind kind,
                                             const std::vector<double>& step_errors) {
    try {
        double worst = 0.0;
        for (int n = 1; n <= grid.steps; ++n) {
            const BoundTerms b = bound_rhs(kind, problem, grid, n, 0.0);
            const double rhs = b.total();
            if (rhs > 0.0 && std::isfinite(rhs)) {
                worst = std::max(worst, step_errors[n] / rhs);
            }
        }
        return worst;
    } catch (const HypothesisViolation&) {
        return std::nullopt;
    }
}

}  // namespace run_detail

inline int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs the full experiment grid (plus the halved step counts needed for
// orders), in parallel, and merges the results into deterministic sorted rows.
inline ConvergenceTable build_table(const ExperimentConfig& config, int jobs = default_jobs()) {
    // expand the grid; a map keyed by cell parameters deduplicates halves
    std::map<decltype(std::declval<ExperimentCell>().key()), ExperimentCell> cells;
    auto add_cell = [&](SchemeId s, double kappa, std::optional<double> length, double T, int n) {
        ExperimentCell cell{s, config.alpha, kappa, length, T, n, config.cells};
        cells.emplace(cell.key(), cell);
    };
    for (SchemeId s : config.schemes) {
        for (double kappa : config.kappas) {
            for (double T : config.t_finals) {
                std::vector<std::optional<double>> lengths;
                if (config.ode) {
                    lengths.push_back(std::nullopt);
                } else {
                    for (double l : config.lengths) lengths.emplace_back(l);
                }
                for (const auto& len : lengths) {
                    for (int n : config.steps) {
                        add_cell(s, kappa, len, T, n);
                        if (n % 2 == 0 && n / 2 >= 2) add_cell(s, kappa, len, T, n / 2);
                    }
                }
            }
        }
    }

    std::vector<ExperimentCell> flat;
    flat.reserve(cells.size());
    for (const auto& [key, cell] : cells) flat.push_back(cell);
    std::vector<CellResult> results(flat.size());
    run_detail::parallel_for(flat.size(), jobs, [&](std::size_t i) {
        results[i] = run_detail::run_cell(flat[i], config.bounds);
    });

    std::map<decltype(std::declval<ExperimentCell>().key()), const CellResult*> by_key;
    for (std::size_t i = 0; i < flat.size(); ++i) by_key[flat[i].key()] = &results[i];

    ConvergenceTable table;
    table.alpha = config.alpha;
    table.cells = config.cells;
    {
        char buf[32];
        const std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        table.timestamp = buf;
    }
    for (std::size_t i = 0; i < flat.size(); ++i) {
        const ExperimentCell& cell = flat[i];
        const CellResult& res = results[i];
        TableRow row;
        row.scheme = cell.scheme;
        row.alpha = cell.alpha;
        row.kappa = cell.kappa;
        row.length = cell.length;
        row.lambda1 = cell.length ? min_eigenvalue(*cell.length) : 0.0;
        row.t_final = cell.t_final;
        if (cell.length) row.cells = cell.cells;
        row.n_steps = cell.n_steps;
        if (!res.ok) {
            row.status = res.message;
            table.rows.push_back(std::move(row));
            continue;
        }
        row.final_error = res.final_error;
        // order against the run at N/2, when present and usable
        ExperimentCell half = cell;
        half.n_steps = cell.n_steps / 2;
        if (cell.n_steps % 2 == 0) {
            auto it = by_key.find(half.key());
            if (it != by_key.end() && it->second->ok) {
                try {
                    row.order = empirical_order(it->second->final_error, res.final_error);
                } catch (const DegenerateError&) {
                    row.order = std::nullopt;
                }
            }
        }
        const ManufacturedProblem problem = run_detail::cell_problem(cell);
        const TimeGrid grid(cell.n_steps, cell.t_final);
        if (cell.scheme != SchemeId::l1) {
            const BoundKind kind = bound_kind_for(cell.scheme, !cell.length.has_value());
            try {
                const BoundTerms b = bound_rhs(kind, problem, grid, grid.steps, 0.0);
                row.exp_term = b.exp_term;
                row.alg_term = b.alg_term;
                if (config.bounds) {
                    row.bound = b;
                    row.lambda_star =
                        run_detail::fit_lambda_star(problem, grid, kind, res.step_errors);
                }
            } catch (const HypothesisViolation&) {
                // outside the bound's hypothesis range: leave the columns empty
            }
            const int k = cell.scheme == SchemeId::ie ? 1 : 2;
            row.predicted = predicted_order(problem.params, cell.n_steps, k, config.conjecture_c);
        } else if (config.bounds) {
            try {
                const ConjectureRhs rhs = conjecture_rhs(problem, grid, grid.steps, config.conjecture_c);
                row.conjecture_value = rhs.value;
                row.conjecture_warning = rhs.accuracy_warning;
            } catch (const HypothesisViolation&) {
            }
        }
        table.rows.push_back(std::move(row));
    }

    std::sort(table.rows.begin(), table.rows.end(), [](const TableRow& a, const TableRow& b) {
        return std::tuple(static_cast<int>(a.scheme), a.kappa, a.length.value_or(-1.0), a.t_final,
                          a.n_steps) < std::tuple(static_cast<int>(b.scheme), b.kappa,
                                                  b.length.value_or(-1.0), b.t_final, b.n_steps);
    });
    return table;
}

} // namespace singstep
