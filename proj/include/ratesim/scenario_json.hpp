// JSON scenario and sweep configs.
//
// All numbers in config files are decimal strings, parsed straight into the
// fixed-point kernel so binary floating point never touches the inputs.
// Unknown keys are rejected.
#pragma once

#include <string>
#include <vector>

#include "ratesim/sim.hpp"

namespace ratesim {

Scenario scenario_from_json_text(const std::string& text);
Scenario scenario_from_json_file(const std::string& path);

struct SweepConfig {
    std::vector<Fixed> ratios;
    Fixed target_years;
    Fixed tol_years;
    Fixed held_weight;
    Fixed dt;
    int workers = 1;
    ControllerConfig controller_cfg;

    static SweepConfig defaults();
};

SweepConfig sweep_from_json_text(const std::string& text);
SweepConfig sweep_from_json_file(const std::string& path);

// "start:stop:step" -> inclusive list of fixed-point values.
std::vector<Fixed> parse_range(const std::string& text);

}  // namespace ratesim
