#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "singstep/convergence.hpp"
#include "singstep/config.hpp"

namespace singstep {

namespace fmt_detail {

inline std::string real6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}
inline std::string real17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}
inline std::string order2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}
template <class T, class F>
inline std::string opt(const std::optional<T>& v, F format) {
    return v ? format(*v) : std::string();
}

}  // namespace fmt_detail

inline const char* kTableHeader =
    "scheme,alpha,kappa,L,lambda1,T,M,N,final_error,order,exp_term,alg_term,predicted_order";

// Fixed-format row: errors with 6 significant digits, orders with 2 decimals.
inline std::string csv_row(const TableRow& r) {
    using namespace fmt_detail;
    std::string out;
    out += scheme_name(r.scheme);
    out += ',';
    out += real6(r.alpha);
    out += ',';
    out += real6(r.kappa);
    out += ',';
    out += opt(r.length, real6);
    out += ',';
    out += real6(r.lambda1);
    out += ',';
    out += real6(r.t_final);
    out += ',';
    out += r.cells ? std::to_string(*r.cells) : std::string();
    out += ',';
    out += std::to_string(r.n_steps);
    out += ',';
    out += opt(r.final_error, real6);
    out += ',';
    out += opt(r.order, order2);
    out += ',';
    out += opt(r.exp_term, real6);
    out += ',';
    out += opt(r.alg_term, real6);
    out += ',';
    out += opt(r.predicted, order2);
    return out;
}

inline std::string table_csv(const ConvergenceTable& table) {
    std::string out = kTableHeader;
    out += '\n';
    for (const TableRow& r : table.rows) {
        out += csv_row(r);
        out += '\n';
    }
    return out;
}

// Full-precision variant, plus a status column carrying per-cell failures.
inline std::string table_raw_csv(const ConvergenceTable& table) {
    using namespace fmt_detail;
    std::string out = std::string(kTableHeader) + ",status\n";
    for (const TableRow& r : table.rows) {
        std::string row;
        row += scheme_name(r.scheme);
        row += ',';
        row += real17(r.alpha);
        row += ',';
        row += real17(r.kappa);
        row += ',';
        row += opt(r.length, real17);
        row += ',';
        row += real17(r.lambda1);
        row += ',';
        row += real17(r.t_final);
        row += ',';
        row += r.cells ? std::to_string(*r.cells) : std::string();
        row += ',';
        row += std::to_string(r.n_steps);
        row += ',';
        row += opt(r.final_error, real17);
        row += ',';
        row += opt(r.order, real17);
        row += ',';
        row += opt(r.exp_term, real17);
        row += ',';
        row += opt(r.alg_term, real17);
        row += ',';
        row += opt(r.predicted, real17);
        row += ',';
        row += r.status;
        out += row + "\n";
    }
    return out;
}

inline std::string table_markdown(const ConvergenceTable& table) {
    std::string out =
        "| scheme | alpha | kappa | L | lambda1 | T | M | N | final_error | order | exp_term | "
        "alg_term | predicted_order |\n"
        "|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const TableRow& r : table.rows) {
        std::string row = csv_row(r);
        std::string md = "| ";
        for (char ch : row) {
            if (ch == ',') md += " | ";
            else md += ch;
        }
        md += " |\n";
        out += md;
    }
    return out;
}

inline std::string bounds_csv(const ConvergenceTable& table, double conjecture_c) {
    using namespace fmt_detail;
    std::string out =
        "scheme,alpha,kappa,L,lambda1,T,M,N,bound,c_u_alpha,k,threshold_time,init_term,exp_term,"
        "alg_term,total,lambda_star,conjecture_C,conjecture_rhs\n";
    for (const TableRow& r : table.rows) {
        if (!r.bound && !r.conjecture_value) continue;
        std::string row;
        row += scheme_name(r.scheme);
        row += ',' + real6(r.alpha);
        row += ',' + real6(r.kappa);
        row += ',' + opt(r.length, real6);
        row += ',' + real6(r.lambda1);
        row += ',' + real6(r.t_final);
        row += ',';
        row += r.cells ? std::to_string(*r.cells) : std::string();
        row += ',' + std::to_string(r.n_steps);
        if (r.bound) {
            const BoundTerms& b = *r.bound;
            row += ',';
            row += bound_name(b.kind);
            row += ',' + real6(b.c_u_alpha);
            row += ',' + std::to_string(b.k);
            row += ',' + real6(b.threshold_time);
            row += ',' + real6(b.init_term);
            row += ',' + real6(b.exp_term);
            row += ',' + real6(b.alg_term);
            row += ',' + real6(b.total());
            row += ',' + opt(r.lambda_star, real6);
            row += ",,";
        } else {
            row += ",,,,,,,,,";
            row += ',' + real6(conjecture_c);
            row += ',' + opt(r.conjecture_value, real6);
        }
        out += row + "\n";
    }
    return out;
}

inline std::string kinkscan_csv(const ConvergenceTable& table) {
    using namespace fmt_detail;
    std::string out = "scheme,alpha,kappa,L,lambda1,T,M,N,final_error,order\n";
    for (const TableRow& r : table.rows) {
        std::string row;
        row += scheme_name(r.scheme);
        row += ',' + real6(r.alpha);
        row += ',' + real6(r.kappa);
        row += ',' + opt(r.length, real6);
        row += ',' + real6(r.lambda1);
        row += ',' + real6(r.t_final);
        row += ',';
        row += r.cells ? std::to_string(*r.cells) : std::string();
        row += ',' + std::to_string(r.n_steps);
        row += ',' + opt(r.final_error, real6);
        row += ',' + opt(r.order, order2);
        out += row + "\n";
    }
    return out;
}

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 2 when some cell failed
    ConvergenceTable table;
};

inline RunOutcome run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                 int jobs = default_jobs()) {
    namespace fs = std::filesystem;
    validate_config(config);
    RunOutcome outcome;
    outcome.table = build_table(config, jobs);
    fs::create_directories(out_dir);
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
        f << content;
    };
    write("table.csv", table_csv(outcome.table));
    write("table_raw.csv", table_raw_csv(outcome.table));
    for (OutputFormat f : config.formats) {
        if (f == OutputFormat::markdown) write("table.md", table_markdown(outcome.table));
    }
    if (config.bounds) write("bounds.csv", bounds_csv(outcome.table, config.conjecture_c));
    if (config.kink) write("kinkscan.csv", kinkscan_csv(outcome.table));
    write("config.txt", serialize_config(config));
    {
        std::string info;
        if (config.preset_name) info += "preset: " + *config.preset_name + "\n";
        if (!config.ode) {
            info += "M: " + std::to_string(config.cells) +
                    " (desk-scale default; raise M for finer spatial resolution)\n";
        }
        info += "generated: " + outcome.table.timestamp + "\n";
        write("run_info.txt", info);
    }
    for (const TableRow& r : outcome.table.rows) {
        if (r.status != "ok") {
            outcome.exit_code = 2;
            break;
        }
    }
    return outcome;
}

} // namespace singstep
