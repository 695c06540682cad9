#include "ratesim/stableswap.hpp"

#include <stdexcept>

namespace ratesim {

namespace {

constexpr int kMaxIterations = 255;

const Fixed kTwo = Fixed::from_int(2);
const Fixed kThree = Fixed::from_int(3);
const Fixed kFour = Fixed::from_int(4);

Fixed ann(const PoolState& pool) { return pool.amp * kTwo; }

// Successive Newton iterates settle once they differ by at most one raw unit
// per 1e18 of magnitude (the iteration's own rounding floor).
bool converged(Fixed a, Fixed b) {
    Fixed diff = abs(a - b);
    return diff.raw() <= abs(a).raw() / Fixed::kScale + 1;
}

}  // namespace

PoolState make_pool(Fixed amp, Fixed bal_stable, Fixed bal_counter) {
    if (amp <= Fixed::zero()) {
        throw std::invalid_argument("pool: amp must be positive");
    }
    if (bal_stable <= Fixed::zero() || bal_counter <= Fixed::zero()) {
        throw std::invalid_argument("pool: balances must be positive");
    }
    return PoolState{amp, bal_stable, bal_counter};
}

Fixed invariant_d(const PoolState& pool) {
    const Fixed x = pool.bal_stable;
    const Fixed y = pool.bal_counter;
    const Fixed a = ann(pool);
    const Fixed s = x + y;

    Fixed d = s;
    for (int it = 0; it < kMaxIterations; ++it) {
        // d_p = d^3 / (4xy), kept in range by dividing between the multiplies
        Fixed d_p = d * d / (x * kTwo) * d / (y * kTwo);
        Fixed numer = a * s + d_p * kTwo;
        Fixed denom = (a - Fixed::one()) * d + d_p * kThree;
        Fixed next = numer * d / denom;
        if (converged(next, d)) return next;
        d = next;
    }
    throw std::runtime_error("pool: invariant solver did not converge");
}

Fixed invariant_residual(const PoolState& pool, Fixed d) {
    const Fixed x = pool.bal_stable;
    const Fixed y = pool.bal_counter;
    const Fixed a = ann(pool);
    Fixed d_cubed_term = d * d / (x * kFour) * d / y;
    Fixed lhs = a * (x + y) + d;
    Fixed rhs = a * d + d_cubed_term;
    return (lhs - rhs) / d;
}

namespace {

// Solves the output-side balance for the invariant at fixed d after the
// input side moved to x_new:  y^2 + y*(b - d) = c.
Fixed solve_y(Fixed a, Fixed x_new, Fixed d) {
    Fixed c = d * d / (x_new * kTwo) * d / (a * kTwo);
    Fixed b = x_new + d / a;

    Fixed y = d;
    for (int it = 0; it < kMaxIterations; ++it) {
        Fixed next = (y * y + c) / (y * kTwo + b - d);
        if (converged(next, y)) return next;
        y = next;
    }
    throw std::runtime_error("pool: swap solver did not converge");
}

}  // namespace

Fixed get_dy(const PoolState& pool, Fixed dx) {
    return get_dy(pool, dx, SwapDirection::kStableIn);
}

Fixed get_dy(const PoolState& pool, Fixed dx, SwapDirection direction) {
    if (dx <= Fixed::zero()) {
        throw std::invalid_argument("pool: swap amount must be positive");
    }
    const bool stable_in = direction == SwapDirection::kStableIn;
    const Fixed x_old = stable_in ? pool.bal_stable : pool.bal_counter;
    const Fixed y_old = stable_in ? pool.bal_counter : pool.bal_stable;

    Fixed d = invariant_d(pool);
    Fixed y_new = solve_y(ann(pool), x_old + dx, d);
    if (y_new <= Fixed::zero() || y_new >= y_old) {
        throw std::runtime_error("pool: swap output out of range");
    }
    return y_old - y_new;
}

PoolState apply_swap(const PoolState& pool, Fixed dx, SwapDirection direction) {
    Fixed dy = get_dy(pool, dx, direction);
    PoolState next = pool;
    if (direction == SwapDirection::kStableIn) {
        next.bal_stable += dx;
        next.bal_counter -= dy;
    } else {
        next.bal_counter += dx;
        next.bal_stable -= dy;
    }

    Fixed residual = abs(invariant_residual(next, invariant_d(pool)));
    if (residual > Fixed::from_decimal_string("0.000000000001")) {
        throw std::runtime_error("pool: post-swap invariant residual too large");
    }
    return next;
}

Fixed spot_price(const PoolState& pool) {
    const Fixed x = pool.bal_stable;
    const Fixed y = pool.bal_counter;
    Fixed d = invariant_d(pool);

    Fixed dx_ratio = d / x;
    Fixed dy_ratio = d / y;
    Fixed term_x = dx_ratio * dx_ratio * dy_ratio / kFour;  // d^3 / (4 x^2 y)
    Fixed term_y = dx_ratio * dy_ratio * dy_ratio / kFour;  // d^3 / (4 x y^2)
    Fixed amp4 = pool.amp * kFour;
    return (amp4 + term_x) / (amp4 + term_y);
}

Fixed weight(const PoolState& pool) {
    return pool.bal_stable / (pool.bal_stable + pool.bal_counter);
}

std::vector<CurvePoint> price_curve(Fixed amp, Fixed d, const std::vector<Fixed>& weights) {
    if (d <= Fixed::zero()) {
        throw std::invalid_argument("pool: d must be positive");
    }
    std::vector<CurvePoint> curve;
    curve.reserve(weights.size());
    for (Fixed w : weights) {
        if (w <= Fixed::zero() || w >= Fixed::one()) {
            throw std::invalid_argument("pool: curve weights must be in (0, 1)");
        }
        // The invariant is homogeneous of degree one, so the pool with the
        // requested weight at invariant d is the unit pool (w, 1-w) scaled by
        // d / D(w, 1-w).
        PoolState unit = make_pool(amp, w, Fixed::one() - w);
        Fixed scale = d / invariant_d(unit);
        PoolState scaled = make_pool(amp, w * scale, (Fixed::one() - w) * scale);
        curve.push_back(CurvePoint{w, spot_price(scaled)});
    }
    return curve;
}

}  // namespace ratesim
