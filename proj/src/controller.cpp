#include "ratesim/controller.hpp"

#include <stdexcept>

namespace ratesim {

ControllerConfig ControllerConfig::defaults() {
    ControllerConfig cfg;
    cfg.w_r = Fixed::from_decimal_string("0.5");
    cfg.alpha = Fixed::from_decimal_string("0.15");
    cfg.phi = Fixed::from_int(4);
    cfg.k_i_fixed = std::nullopt;
    cfg.k_d = Fixed::zero();
    cfg.period = Fixed::from_int(7) / Fixed::from_int(365);
    cfg.e_i_floor = Fixed::from_decimal_string("-0.5");
    cfg.e_ctrl_max = Fixed::one() - Fixed::from_decimal_string("0.000001");
    return cfg;
}

void validate(const ControllerConfig& cfg) {
    if (cfg.w_r <= Fixed::zero() || cfg.w_r >= Fixed::one()) {
        throw std::invalid_argument("controller: w_r must be in (0, 1)");
    }
    if (cfg.alpha <= Fixed::zero()) {
        throw std::invalid_argument("controller: alpha must be positive");
    }
    if (cfg.period <= Fixed::zero()) {
        throw std::invalid_argument("controller: period must be positive");
    }
    if (cfg.e_i_floor > Fixed::zero()) {
        throw std::invalid_argument("controller: e_i_floor must be <= 0");
    }
    if (cfg.e_ctrl_max <= Fixed::zero() || cfg.e_ctrl_max >= Fixed::one()) {
        throw std::invalid_argument("controller: e_ctrl_max must be in (0, 1)");
    }
}

Fixed weight_error(Fixed w, Fixed w_r) {
    if (w <= Fixed::zero() || w >= Fixed::one()) {
        throw std::domain_error("controller: weight must be in (0, 1)");
    }
    return w - w_r;
}

Fixed normalize_error(Fixed e, Fixed w_r) {
    if (e <= Fixed::zero()) return e / w_r;
    return e / (Fixed::one() - w_r);
}

Fixed k_i_from_phi(Fixed phi, Fixed tcr_mcr) {
    if (tcr_mcr < Fixed::zero()) {
        throw std::domain_error("controller: tcr_mcr must be non-negative");
    }
    return max(Fixed::zero(), phi * (tcr_mcr - Fixed::one()));
}

Fixed transfer(Fixed e_ctrl, Fixed alpha) {
    if (e_ctrl >= Fixed::one()) {
        throw std::domain_error("controller: transfer input must be below 1");
    }
    return alpha * e_ctrl / (Fixed::one() - e_ctrl);
}

RateUpdate update(ControllerState& state, const ControllerConfig& cfg,
                  Fixed w, Fixed t, Fixed tcr_mcr) {
    if (state.started && t < state.last_t) {
        throw std::domain_error("controller: time regression");
    }
    const Fixed dt = state.started ? t - state.last_t : Fixed::zero();

    RateUpdate out;
    out.e_raw = weight_error(w, cfg.w_r);
    out.e_norm = normalize_error(out.e_raw, cfg.w_r);
    out.e_p = out.e_norm;  // K_P == 1

    const Fixed k_i =
        cfg.k_i_fixed ? *cfg.k_i_fixed : k_i_from_phi(cfg.phi, tcr_mcr);
    const Fixed weighted = out.e_norm * dt;
    state.twce += weighted;
    state.e_i_acc = max(cfg.e_i_floor, state.e_i_acc + k_i * weighted);
    out.e_i = state.e_i_acc;

    // Bucket rotation: once a full lookback period separates the current
    // update from the delayed snapshot, the delayed pair becomes the previous
    // pair and the current TWCE becomes the delayed pair.
    if (state.bucket_count == 0) {
        state.twce_delayed = state.twce;
        state.t_delayed = t;
        state.bucket_count = 1;
    } else if (t - state.t_delayed >= cfg.period) {
        state.twce_prev = state.twce_delayed;
        state.t_prev = state.t_delayed;
        state.twce_delayed = state.twce;
        state.t_delayed = t;
        state.bucket_count = 2;
    }
    out.e_d = Fixed::zero();
    if (state.bucket_count == 2 && !cfg.k_d.is_zero()) {
        Fixed slope = (state.twce_delayed - state.twce_prev) /
                      (state.t_delayed - state.t_prev);
        out.e_d = cfg.k_d * slope;
    }

    out.e_ctrl = min(out.e_p + out.e_i + out.e_d, cfg.e_ctrl_max);
    out.rate = transfer(out.e_ctrl, cfg.alpha);

    state.last_t = t;
    state.started = true;
    return out;
}

}  // namespace ratesim
