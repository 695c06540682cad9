// Deterministic discrete-time scenario engine.
//
// Each step reads the scheduled pool weight, updates the controller, then
// accrues interest on the CDP system for one timestep. Identical scenarios
// produce bit-identical results.
#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ratesim/cdp.hpp"
#include "ratesim/controller.hpp"

namespace ratesim {

struct ConstantWeight {
    Fixed w;
};

// Weight moves from w_start toward w_end by step_increment per timestep,
// then holds at w_end.
struct RampHold {
    Fixed w_start;
    Fixed w_end;
    Fixed step_increment;
};

// Right-open step function: the weight of the latest point at or before t.
// Points must start at t = 0 and increase strictly in t.
struct WeightPoint {
    Fixed t;
    Fixed w;
};

using WeightSchedule = std::variant<ConstantWeight, RampHold, std::vector<WeightPoint>>;

struct Scenario {
    ControllerConfig controller_cfg;
    Fixed initial_ratio;
    Fixed initial_debt;
    Fixed dt;        // timestep, years
    Fixed duration;  // years
    WeightSchedule weight_schedule;
};

// 12 hours, the default timestep.
Fixed default_dt();

// Throws std::invalid_argument on an inconsistent scenario.
void validate(const Scenario& scenario);

Fixed weight_at(const WeightSchedule& schedule, std::int64_t step, Fixed t);

struct SimRow {
    std::int64_t step;
    Fixed t;
    Fixed weight;
    RateUpdate update;
    Fixed tcr_mcr;  // leverage the controller saw at this step
    Fixed debt;
};

struct SimResult {
    std::vector<SimRow> rows;
    bool terminated_early = false;      // full leverage reached
    std::optional<Fixed> t_terminal;    // set when terminated_early
};

// Runs the scenario until duration elapses or the system is fully levered.
// The first row with tcr_mcr <= 1 is the last row.
SimResult run(const Scenario& scenario);

// Terminal time of a constant-weight run under the phi strategy, or nullopt
// if full leverage is not reached within a 10-year horizon.
std::optional<Fixed> time_to_full_leverage(Fixed phi, Fixed initial_ratio,
                                           Fixed held_weight,
                                           const ControllerConfig& cfg, Fixed dt);

struct SweepPoint {
    Fixed ratio;
    Fixed phi_star;
};

// For each starting ratio, bisects phi in [0, phi_hi] (phi_hi doubled until
// the target is bracketed, capped at 1e4) until
// |time_to_full_leverage(phi) - target| <= tol. Ratios must exceed 1.1.
// workers > 1 evaluates ratios concurrently; the table is merged in input
// order and identical to the serial one. Throws std::runtime_error naming
// the offending ratio when the target cannot be bracketed.
std::vector<SweepPoint> sweep_phi(const std::vector<Fixed>& ratios, Fixed target,
                                  Fixed held_weight, const ControllerConfig& cfg,
                                  Fixed dt, Fixed tol, int workers = 1);

}  // namespace ratesim
