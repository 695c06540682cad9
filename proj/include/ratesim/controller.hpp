// PID money-supply controller.
//
// Normalizes the pool-weight error, maintains the time-weighted cumulative
// error (TWCE) and its delayed derivative buckets, weights the integral by a
// leverage-dependent gain, and maps the combined controller error through a
// rational transfer function to an annualized interest rate.
//
// Time is measured in years throughout. The proportional gain is identically
// one: the transfer function's denominator already anchors the asymptote, so
// a separate gain would cancel out of the curve; alpha plays the
// pseudo-proportional role.
#pragma once

#include <optional>

#include "ratesim/fixed.hpp"

namespace ratesim {

struct ControllerConfig {
    Fixed w_r;                       // reference pool weight, in (0, 1)
    Fixed alpha;                     // transfer scaling, annualized-rate units
    Fixed phi;                       // integral gain scale vs (TCR/MCR - 1)
    std::optional<Fixed> k_i_fixed;  // constant integral gain override
    Fixed k_d;                       // derivative gain
    Fixed period;                    // derivative lookback, years, > 0
    Fixed e_i_floor;                 // lower bound on integral accumulator, <= 0
    Fixed e_ctrl_max;                // controller error clamp, in (0, 1)

    // w_r 0.5, alpha 0.15, phi 4, k_d 0, period 7/365, e_i_floor -0.5,
    // e_ctrl_max 1 - 1e-6.
    static ControllerConfig defaults();
};

// Throws std::invalid_argument when a field is outside its legal range.
void validate(const ControllerConfig& cfg);

struct ControllerState {
    Fixed twce;            // raw time-weighted cumulative error, error-years
    Fixed e_i_acc;         // gain-weighted integral accumulator
    Fixed last_t;          // timestamp of last update, years
    bool started = false;  // false until the first update

    // Derivative buckets: TWCE snapshots one lookback period apart.
    Fixed twce_delayed, t_delayed;
    Fixed twce_prev, t_prev;
    int bucket_count = 0;  // 0, 1, or 2
};

struct RateUpdate {
    Fixed e_raw;   // w - w_r
    Fixed e_norm;  // normalized error, in (-1, 1)
    Fixed e_p;     // proportional component (equals e_norm; gain is one)
    Fixed e_i;     // integral component
    Fixed e_d;     // derivative component
    Fixed e_ctrl;  // min(e_p + e_i + e_d, e_ctrl_max)
    Fixed rate;    // annualized interest rate
};

// w - w_r. Throws std::domain_error unless 0 < w < 1.
Fixed weight_error(Fixed w, Fixed w_r);

// e/w_r for e <= 0, e/(1 - w_r) otherwise; maps (-w_r, 1-w_r) onto (-1, 1).
Fixed normalize_error(Fixed e, Fixed w_r);

// max(0, phi * (tcr_mcr - 1)): leverage below one must not reward imbalance.
Fixed k_i_from_phi(Fixed phi, Fixed tcr_mcr);

// alpha * e_ctrl / (1 - e_ctrl). Strictly increasing, bounded below by
// -alpha, asymptotic at e_ctrl -> 1. Requires e_ctrl < 1.
Fixed transfer(Fixed e_ctrl, Fixed alpha);

// Advances the controller to time t with pool weight w and system leverage
// tcr_mcr. dt is zero on the first update, so the first rate is purely
// proportional. Throws std::domain_error on time regression or w out of
// (0, 1).
RateUpdate update(ControllerState& state, const ControllerConfig& cfg,
                  Fixed w, Fixed t, Fixed tcr_mcr);

}  // namespace ratesim
