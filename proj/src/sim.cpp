#include "ratesim/sim.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace ratesim {

namespace {

const Fixed kHorizon = Fixed::from_int(10);
const Fixed kPhiCap = Fixed::from_int(10000);

struct ScheduleChecker {
    void operator()(const ConstantWeight& c) const { check_weight(c.w); }
    void operator()(const RampHold& r) const {
        check_weight(r.w_start);
        check_weight(r.w_end);
        if (r.step_increment <= Fixed::zero()) {
            throw std::invalid_argument("scenario: step_increment must be positive");
        }
    }
    void operator()(const std::vector<WeightPoint>& pts) const {
        if (pts.empty() || !pts.front().t.is_zero()) {
            throw std::invalid_argument("scenario: points must start at t = 0");
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            check_weight(pts[i].w);
            if (i > 0 && pts[i].t <= pts[i - 1].t) {
                throw std::invalid_argument("scenario: point times must increase");
            }
        }
    }
    static void check_weight(Fixed w) {
        if (w <= Fixed::zero() || w >= Fixed::one()) {
            throw std::invalid_argument("scenario: weights must be in (0, 1)");
        }
    }
};

}  // namespace

Fixed default_dt() {
    return Fixed::from_decimal_string("0.5") / Fixed::from_decimal_string("365.25");
}

void validate(const Scenario& scenario) {
    validate(scenario.controller_cfg);
    if (scenario.dt <= Fixed::zero()) {
        throw std::invalid_argument("scenario: dt must be positive");
    }
    if (scenario.duration < scenario.dt) {
        throw std::invalid_argument("scenario: duration must cover at least one step");
    }
    if (scenario.initial_ratio < Fixed::zero()) {
        throw std::invalid_argument("scenario: initial_ratio must be non-negative");
    }
    if (scenario.initial_debt <= Fixed::zero()) {
        throw std::invalid_argument("scenario: initial_debt must be positive");
    }
    std::visit(ScheduleChecker{}, scenario.weight_schedule);
}

Fixed weight_at(const WeightSchedule& schedule, std::int64_t step, Fixed t) {
    if (const auto* c = std::get_if<ConstantWeight>(&schedule)) {
        return c->w;
    }
    if (const auto* r = std::get_if<RampHold>(&schedule)) {
        if (r->w_end >= r->w_start) {
            return min(r->w_start + r->step_increment * step, r->w_end);
        }
        return max(r->w_start - r->step_increment * step, r->w_end);
    }
    const auto& pts = std::get<std::vector<WeightPoint>>(schedule);
    Fixed w = pts.front().w;
    for (const auto& p : pts) {
        if (p.t > t) break;
        w = p.w;
    }
    return w;
}

SimResult run(const Scenario& scenario) {
    validate(scenario);

    SimResult result;
    ControllerState ctl;
    CdpSystemState cdp = make_cdp(scenario.initial_ratio, scenario.initial_debt);

    for (std::int64_t step = 0;; ++step) {
        Fixed t = scenario.dt * step;
        if (t > scenario.duration) break;

        Fixed w = weight_at(scenario.weight_schedule, step, t);
        RateUpdate upd = update(ctl, scenario.controller_cfg, w, t, cdp.tcr_mcr);
        result.rows.push_back(SimRow{step, t, w, upd, cdp.tcr_mcr, cdp.debt});

        if (is_fully_levered(cdp)) {
            result.terminated_early = true;
            result.t_terminal = t;
            break;
        }
        cdp = accrue(cdp, upd.rate, scenario.dt);
    }
    return result;
}

std::optional<Fixed> time_to_full_leverage(Fixed phi, Fixed initial_ratio,
                                           Fixed held_weight,
                                           const ControllerConfig& cfg, Fixed dt) {
    ControllerConfig run_cfg = cfg;
    run_cfg.phi = phi;
    run_cfg.k_i_fixed = std::nullopt;
    validate(run_cfg);

    ControllerState ctl;
    CdpSystemState cdp = make_cdp(initial_ratio, Fixed::one());
    for (std::int64_t step = 0;; ++step) {
        Fixed t = dt * step;
        if (t > kHorizon) return std::nullopt;
        RateUpdate upd = update(ctl, run_cfg, held_weight, t, cdp.tcr_mcr);
        if (is_fully_levered(cdp)) return t;
        cdp = accrue(cdp, upd.rate, dt);
    }
}

namespace {

SweepPoint sweep_one(Fixed ratio, Fixed target, Fixed held_weight,
                     const ControllerConfig& cfg, Fixed dt, Fixed tol) {
    const auto miss = [&](const std::optional<Fixed>& t) {
        return !t || abs(*t - target) > tol;
    };
    const auto overshoots = [&](const std::optional<Fixed>& t) {
        return t && *t < target - tol;
    };

    auto t_zero = time_to_full_leverage(Fixed::zero(), ratio, held_weight, cfg, dt);
    if (!miss(t_zero)) return SweepPoint{ratio, Fixed::zero()};
    if (overshoots(t_zero)) {
        throw std::runtime_error("sweep: target infeasible at ratio " +
                                 ratio.to_decimal_string() +
                                 " (base rate alone is faster than the target)");
    }

    Fixed lo = Fixed::zero();
    Fixed hi = Fixed::one();
    for (;;) {
        auto t_hi = time_to_full_leverage(hi, ratio, held_weight, cfg, dt);
        if (!miss(t_hi)) return SweepPoint{ratio, hi};
        if (overshoots(t_hi)) break;
        hi = hi * 2;
        if (hi > kPhiCap) {
            throw std::runtime_error("sweep: could not bracket target at ratio " +
                                     ratio.to_decimal_string());
        }
    }

    for (int it = 0; it < 200; ++it) {
        Fixed mid = (lo + hi) / Fixed::from_int(2);
        auto t_mid = time_to_full_leverage(mid, ratio, held_weight, cfg, dt);
        if (!miss(t_mid)) return SweepPoint{ratio, mid};
        if (overshoots(t_mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    throw std::runtime_error("sweep: bisection did not settle at ratio " +
                             ratio.to_decimal_string());
}

}  // namespace

std::vector<SweepPoint> sweep_phi(const std::vector<Fixed>& ratios, Fixed target,
                                  Fixed held_weight, const ControllerConfig& cfg,
                                  Fixed dt, Fixed tol, int workers) {
    if (target <= Fixed::zero() || tol <= Fixed::zero()) {
        throw std::invalid_argument("sweep: target and tol must be positive");
    }
    const Fixed min_ratio = Fixed::from_decimal_string("1.1");
    for (Fixed r : ratios) {
        if (r <= min_ratio) {
            throw std::invalid_argument(
                "sweep: ratios must exceed 1.1 (the base rate alone meets the "
                "target there)");
        }
    }

    std::vector<SweepPoint> table(ratios.size());
    if (workers <= 1 || ratios.size() <= 1) {
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            table[i] = sweep_one(ratios[i], target, held_weight, cfg, dt, tol);
        }
        return table;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(ratios.size());
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ratios.size()) return;
            try {
                table[i] = sweep_one(ratios[i], target, held_weight, cfg, dt, tol);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(workers, ratios.size());
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    return table;
}

}  // namespace ratesim
