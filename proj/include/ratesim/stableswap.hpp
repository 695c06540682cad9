// Two-token StableSwap pool model.
//
// The pool supplies the controller's input signal (the stablecoin weight)
// and the swap/price machinery used to construct scenarios. The solver uses
// the Curve contract convention: the invariant coefficient is Ann = A*n, so
// an amplification of A = 100 on a balanced 1,000,000/1,000,000 pool prices
// a 400,000 swap at ~398,132 out.
#pragma once

#include <vector>

#include "ratesim/fixed.hpp"

namespace ratesim {

struct PoolState {
    Fixed amp;          // amplification coefficient A, > 0
    Fixed bal_stable;   // system stablecoin balance, > 0
    Fixed bal_counter;  // counterasset balance, > 0

    static constexpr int kTokens = 2;
};

enum class SwapDirection {
    kStableIn,   // dx stablecoin enters, counterasset leaves
    kStableOut,  // dx counterasset enters, stablecoin leaves
};

// Throws std::invalid_argument unless amp and both balances are positive.
PoolState make_pool(Fixed amp, Fixed bal_stable, Fixed bal_counter);

// D solving Ann*(x+y) + D = Ann*D + D^3/(4xy), by Newton from D0 = x + y.
// Throws std::runtime_error on non-convergence. The solver keeps Ann*S*D
// inside the widened 128-bit range, which admits pools up to roughly
// Ann * (x+y)^2 <= 1.7e20; larger pools signal overflow rather than degrade.
Fixed invariant_d(const PoolState& pool);

// Signed residual F(x, y, d) / d of the invariant at the given d.
Fixed invariant_residual(const PoolState& pool, Fixed d);

// Output amount for a stable-in swap of dx, holding D fixed (no fee).
Fixed get_dy(const PoolState& pool, Fixed dx);
Fixed get_dy(const PoolState& pool, Fixed dx, SwapDirection direction);

// New pool state after swapping dx in the given direction.
PoolState apply_swap(const PoolState& pool, Fixed dx, SwapDirection direction);

// Marginal price of the stablecoin in counterasset units:
//   (4A + D^3/(4 x^2 y)) / (4A + D^3/(4 x y^2)),  x = bal_stable.
Fixed spot_price(const PoolState& pool);

// bal_stable / (bal_stable + bal_counter), in (0, 1).
Fixed weight(const PoolState& pool);

struct CurvePoint {
    Fixed weight;
    Fixed price;
};

// For each weight, the balances on the invariant surface with that weight at
// fixed d, and the spot price there.
std::vector<CurvePoint> price_curve(Fixed amp, Fixed d, const std::vector<Fixed>& weights);

}  // namespace ratesim
