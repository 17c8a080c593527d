// Command-line front end: experiment runs, canned table presets, pointwise
// Mittag-Leffler evaluation, and DOC kernel self-checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "singstep/singstep.hpp"

namespace {

int run_config(const singstep::ExperimentConfig& config, const std::string& out_dir, int jobs) {
    const singstep::RunOutcome outcome = singstep::run_experiment(config, out_dir, jobs);
    int failed = 0;
    for (const auto& row : outcome.table.rows) {
        if (row.status != "ok") ++failed;
    }
    std::cout << "wrote " << out_dir << "/table.csv (" << outcome.table.rows.size() << " rows";
    if (failed > 0) std::cout << ", " << failed << " failed";
    std::cout << ")\n";
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-stepping convergence studies for problems with a weak initial singularity"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment described by a config file");
    std::string config_path;
    std::string out_dir = "out";
    int jobs = singstep::default_jobs();
    run->add_option("--config", config_path, "key=value config file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--jobs", jobs, "worker threads");

    auto* preset_cmd = app.add_subcommand("preset", "run a canned experiment grid");
    std::string preset_name;
    std::string preset_out;
    int preset_jobs = singstep::default_jobs();
    preset_cmd->add_option("name", preset_name, "preset name")->required();
    preset_cmd->add_option("--out", preset_out, "output directory (default: out/<name>)");
    preset_cmd->add_option("--jobs", preset_jobs, "worker threads");
    double conjecture_c = 1.0;
    preset_cmd->add_option("--conjecture-C", conjecture_c,
                           "constant inside the Mittag-Leffler argument");
    bool with_bounds = false;
    preset_cmd->add_flag("--bounds", with_bounds, "also write bounds.csv");

    auto* mlf = app.add_subcommand("mlf", "evaluate the Mittag-Leffler function");
    double ml_alpha = 0.5, ml_z = 0.0;
    mlf->add_option("--alpha", ml_alpha, "order in (0,1]")->required();
    mlf->add_option("--z", ml_z, "argument (z <= 10)")->required();

    auto* doc = app.add_subcommand("doc-check", "compare DOC kernel closed form to the recursion");
    int doc_n = 50;
    double doc_kt = -0.1;
    doc->add_option("--n", doc_n, "kernel count")->required();
    doc->add_option("--kappa-tau", doc_kt, "kappa*tau (negative)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            std::ifstream f(config_path);
            if (!f) {
                std::cerr << "error: cannot open config file '" << config_path << "'\n";
                return 1;
            }
            std::stringstream buf;
            buf << f.rdbuf();
            const auto config = singstep::parse_config(buf.str());
            return run_config(config, out_dir, jobs);
        }
        if (*preset_cmd) {
            auto config = singstep::preset(preset_name);
            config.conjecture_c = conjecture_c;
            config.bounds = with_bounds;
            if (preset_out.empty()) preset_out = "out/" + preset_name;
            return run_config(config, preset_out, preset_jobs);
        }
        if (*mlf) {
            const auto eval = singstep::mittag_leffler(ml_alpha, ml_z);
            std::printf("E_alpha(z)  = %.15g\n", eval.value);
            std::printf("E_alpha'(z) = %.15g\n", eval.derivative);
            if (eval.accuracy_warning) {
                std::printf("warning: estimated absolute error %.3g exceeds 1e-10\n",
                            eval.est_error);
            }
            return 0;
        }
        if (*doc) {
            const auto oracle = singstep::doc_recursive_oracle(doc_n, doc_kt);
            const auto closed = singstep::doc_closed_form(doc_n, doc_kt);
            double max_diff = 0.0;
            for (int k = 1; k <= doc_n; ++k) {
                max_diff = std::max(max_diff, std::abs(oracle.theta[k] - closed.theta[k]));
            }
            std::printf("max |closed - recursive| = %.3e\n", max_diff);
            if (-doc_kt < 0.25) {
                const auto report = singstep::doc_bound_check(closed);
                std::printf("decay bound ratio = %.6f (max 2), positive = %s, pass = %s\n",
                            report.max_ratio, report.all_positive ? "yes" : "no",
                            report.pass ? "yes" : "no");
            } else {
                std::printf("decay bound check skipped: requires 0 < -kappa*tau < 1/4\n");
            }
            return max_diff <= 1e-12 ? 0 : 2;
        }
    } catch (const singstep::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const singstep::UnknownPreset& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const singstep::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
