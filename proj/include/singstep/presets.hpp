#pragma once

#include <string>
#include <vector>

#include "singstep/config.hpp"
#include "singstep/errors.hpp"

namespace singstep {

// Canned experiment grids reproducing the benchmark study tables at desk
// scale (M = 2000; reference runs used much finer space grids).
inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "table1", "table2", "table3", "table5",  "table6",  "table7",   "table8",
        "table9", "table10", "table11", "table12", "table13", "kink-ode", "kink-pde"};
    return names;
}

inline ExperimentConfig preset(const std::string& name) {
    const double pi = kPi;
    const std::vector<int> n_ode{64, 128, 256, 512, 1024, 2048};
    const std::vector<int> n_pde{128, 256, 512, 1024, 2048};
    const std::vector<int> n_l1{64, 128, 256, 512};
    const std::vector<int> n_scan{64,  96,   128,  192,  256,  384,  512, 768,
                                  1024, 1536, 2048, 3072, 4096, 6144, 8192};
    const std::vector<SchemeId> classical{SchemeId::ie, SchemeId::cn, SchemeId::bdf2};

    ExperimentConfig c;
    c.preset_name = name;
    if (name == "table1") {
        c.schemes = {SchemeId::l1};
        c.lengths = {1.0, pi};
        c.kappas = {1.0, 0.0, -8.0};
        c.t_finals = {1.0, 10.0};
        c.steps = n_l1;
    } else if (name == "table2") {
        c.schemes = {SchemeId::ie};
        c.lengths = {1.0, pi};
        c.kappas = {1.0, 0.0, -1.0};
        c.t_finals = {1.0, 10.0};
        c.steps = {64, 128, 256, 512};
    } else if (name == "table3") {
        c.schemes = classical;
        c.ode = true;
        c.kappas = {-1.0, -5.0, -10.0, -15.0, -20.0};
        c.t_finals = {1.0};
        c.steps = n_ode;
    } else if (name == "table5") {
        c.schemes = classical;
        c.ode = true;
        c.kappas = {0.0, 0.5};
        c.t_finals = {1.0, 5.0};
        c.steps = n_ode;
    } else if (name == "table6") {
        c.schemes = classical;
        c.lengths = {pi};
        c.kappas = {0.0, -5.0, -10.0, -15.0, -20.0};
        c.t_finals = {1.0};
        c.steps = n_pde;
    } else if (name == "table7") {
        c.schemes = classical;
        c.lengths = {1.0, 2.0, 3.0, 4.0, 5.0};
        c.kappas = {0.0};
        c.t_finals = {10.0};
        c.steps = n_pde;
    } else if (name == "table8") {
        c.schemes = classical;
        c.lengths = {pi};
        c.kappas = {0.0};
        c.t_finals = {1.0, 5.0, 10.0, 15.0, 20.0};
        c.steps = n_pde;
    } else if (name == "table9") {
        c.schemes = classical;
        c.lengths = {pi, 4.0};
        c.kappas = {1.0, 1.5};
        c.t_finals = {5.0};
        c.steps = n_pde;
    } else if (name == "table10") {
        c.schemes = {SchemeId::l1};
        c.lengths = {pi};
        c.kappas = {0.0, -5.0, -10.0, -20.0, -50.0};
        c.t_finals = {1.0};
        c.steps = n_l1;
    } else if (name == "table11") {
        c.schemes = {SchemeId::l1};
        c.lengths = {1.0, 2.0, 3.0, 4.0, 5.0};
        c.kappas = {0.0};
        c.t_finals = {10.0};
        c.steps = n_l1;
    } else if (name == "table12") {
        c.schemes = {SchemeId::l1};
        c.lengths = {pi};
        c.kappas = {0.0};
        c.t_finals = {1.0, 10.0, 20.0, 50.0, 100.0};
        c.steps = n_l1;
    } else if (name == "table13") {
        c.schemes = {SchemeId::l1};
        c.lengths = {pi, 4.0};
        c.kappas = {1.0, 1.5};
        c.t_finals = {5.0};
        c.steps = n_l1;
    } else if (name == "kink-ode") {
        c.schemes = {SchemeId::cn, SchemeId::bdf2};
        c.ode = true;
        c.kappas = {-1.0};
        c.t_finals = {14.0};
        c.steps = n_scan;
        c.kink = true;
    } else if (name == "kink-pde") {
        c.schemes = {SchemeId::cn, SchemeId::bdf2};
        c.lengths = {pi};
        c.kappas = {0.0};
        c.t_finals = {12.0};
        c.steps = n_scan;
        c.kink = true;
    } else {
        std::string known;
        for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
        throw UnknownPreset("unknown preset '" + name + "'; available: " + known);
    }
    validate_config(c);
    return c;
}

} // namespace singstep
