#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "ratesim/stableswap.hpp"

using namespace ratesim;

namespace {

Fixed fx(const char* s) { return Fixed::from_decimal_string(s); }

const Fixed kTol12 = fx("0.000000000001");

PoolState base_pool() {
    return make_pool(Fixed::from_int(100), Fixed::from_int(1000000),
                     Fixed::from_int(1000000));
}

// long double reference solver, same contract convention (Ann = 2A)
long double ref_d(long double amp, long double x, long double y) {
    long double ann = 2.0L * amp;
    long double s = x + y;
    long double d = s;
    for (int i = 0; i < 256; ++i) {
        long double d_p = d * d * d / (4.0L * x * y);
        long double prev = d;
        d = (ann * s + 2.0L * d_p) * d / ((ann - 1.0L) * d + 3.0L * d_p);
        if (fabsl(d - prev) <= 1e-15L * d) break;
    }
    return d;
}

long double ref_y(long double amp, long double x_new, long double d) {
    long double ann = 2.0L * amp;
    long double c = d * d * d / (4.0L * x_new * ann);
    long double b = x_new + d / ann;
    long double y = d;
    for (int i = 0; i < 256; ++i) {
        long double prev = y;
        y = (y * y + c) / (2.0L * y + b - d);
        if (fabsl(y - prev) <= 1e-15L * y) break;
    }
    return y;
}

// marginal price of the implemented invariant, for solver validation
long double ref_marginal(long double amp, long double x, long double y,
                         long double d) {
    long double ann = 2.0L * amp;
    long double tx = d * d * d / (4.0L * x * x * y);
    long double ty = d * d * d / (4.0L * x * y * y);
    return (ann + tx) / (ann + ty);
}

}  // namespace

TEST_CASE("balanced pool invariant equals the balance sum") {
    CHECK(invariant_d(base_pool()) == Fixed::from_int(2000000));
    CHECK(abs(invariant_residual(base_pool(), Fixed::from_int(2000000))) <= kTol12);
}

TEST_CASE("invariant of the worked-example post-swap state") {
    PoolState pool = make_pool(Fixed::from_int(100), Fixed::from_int(1400000),
                               Fixed::from_int(601868));
    Fixed d = invariant_d(pool);
    CHECK(abs(d - Fixed::from_int(2000000)) <= Fixed::one());
    CHECK(abs(invariant_residual(pool, d)) <= kTol12);
}

TEST_CASE("very large amplification forces the constant-sum limit") {
    PoolState pool = make_pool(Fixed::from_int(1000000), Fixed::from_int(300000),
                               Fixed::from_int(1700000));
    Fixed d = invariant_d(pool);
    CHECK(abs(d - Fixed::from_int(2000000)) <=
          Fixed::from_int(2000000) * fx("0.00001"));
}

TEST_CASE("base swap reproduces the worked example") {
    Fixed dy = get_dy(base_pool(), Fixed::from_int(400000));
    CHECK(abs(dy - Fixed::from_int(398132)) <= fx("398.132"));  // 0.1%

    PoolState after = apply_swap(base_pool(), Fixed::from_int(400000),
                                 SwapDirection::kStableIn);
    CHECK(abs(weight(after) - fx("0.7")) <= fx("0.005"));
    CHECK(abs(spot_price(after) - fx("0.995")) <= fx("0.001"));
}

TEST_CASE("swap validation") {
    CHECK_THROWS_AS(get_dy(base_pool(), Fixed::zero()), std::invalid_argument);
    CHECK_THROWS_AS(get_dy(base_pool(), fx("-1")), std::invalid_argument);
    // absurd size rounds the output side to nothing
    CHECK_THROWS_AS(get_dy(base_pool(), Fixed::from_int(1000000) * 1000000000000LL),
                    std::runtime_error);
}

TEST_CASE("tiny swap on the balanced pool trades at par") {
    Fixed dx = fx("0.000001");
    Fixed dy = get_dy(base_pool(), dx);
    CHECK(abs(dy / dx - Fixed::one()) <= fx("0.0001"));
}

TEST_CASE("execution price degrades with size") {
    // dy strictly increasing, dy/dx strictly decreasing
    Fixed prev_dy = Fixed::zero();
    Fixed prev_price = Fixed::from_int(2);
    for (int k = 1; k <= 16; ++k) {
        Fixed dx = Fixed::from_int(50000) * k;
        Fixed dy = get_dy(base_pool(), dx);
        Fixed price = dy / dx;
        CHECK(dy > prev_dy);
        CHECK(price < prev_price);
        prev_dy = dy;
        prev_price = price;
    }
}

TEST_CASE("get_dy matches the analytic marginal price in the small-trade limit") {
    for (const auto& [xs, ys] : std::vector<std::pair<const char*, const char*>>{
             {"1000000", "1000000"}, {"1400000", "601868"}, {"700000", "1500000"}}) {
        PoolState pool = make_pool(Fixed::from_int(100), fx(xs), fx(ys));
        Fixed d = invariant_d(pool);
        Fixed dx = d * fx("0.000001");
        long double fd = (get_dy(pool, dx) / dx).to_long_double();
        long double analytic = ref_marginal(100.0L, pool.bal_stable.to_long_double(),
                                            pool.bal_counter.to_long_double(),
                                            d.to_long_double());
        CHECK(fabsl(fd - analytic) / analytic < 1e-6L);
    }
}

TEST_CASE("round trip of opposite swaps is path dependent but consistent") {
    Fixed dx = Fixed::from_int(400000);
    PoolState p1 = apply_swap(base_pool(), dx, SwapDirection::kStableIn);
    PoolState p2 = apply_swap(p1, dx, SwapDirection::kStableOut);
    CHECK(p2.bal_stable != base_pool().bal_stable);
    CHECK(abs(invariant_residual(p2, invariant_d(p2))) <= kTol12);
}

TEST_CASE("spot price is exactly one at balance") {
    CHECK(abs(spot_price(base_pool()) - Fixed::one()) <= Fixed::from_raw(1));
}

TEST_CASE("spot price sign tracks the weight imbalance") {
    for (int stable = 1; stable <= 19; ++stable) {
        PoolState pool = make_pool(Fixed::from_int(100),
                                   Fixed::from_int(100000) * stable,
                                   Fixed::from_int(100000) * (20 - stable));
        Fixed w = weight(pool);
        Fixed p = spot_price(pool);
        if (w > fx("0.5")) CHECK(p < Fixed::one());
        if (w < fx("0.5")) CHECK(p > Fixed::one());
    }
}

TEST_CASE("weight") {
    CHECK(weight(base_pool()) == fx("0.5"));
    PoolState skew = make_pool(Fixed::from_int(100), Fixed::from_int(1400000),
                               Fixed::from_int(601868));
    CHECK(abs(weight(skew) - fx("0.6994")) <= fx("0.0001"));

    // complementary weights sum to one
    PoolState flip = make_pool(skew.amp, skew.bal_counter, skew.bal_stable);
    CHECK(abs(weight(skew) + weight(flip) - Fixed::one()) <= Fixed::from_raw(2));
}

TEST_CASE("pool validation") {
    CHECK_THROWS_AS(make_pool(Fixed::zero(), Fixed::one(), Fixed::one()),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_pool(Fixed::one(), Fixed::zero(), Fixed::one()),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_pool(Fixed::one(), Fixed::one(), fx("-2")),
                    std::invalid_argument);
}

TEST_CASE("price curve shape") {
    std::vector<Fixed> weights;
    for (int k = 5; k <= 95; ++k) weights.push_back(fx("0.01") * k);
    auto curve = price_curve(Fixed::from_int(100), Fixed::from_int(2000000), weights);

    REQUIRE(curve.size() == weights.size());
    Fixed at_half, at_07;
    Fixed prev = Fixed::from_int(10);
    for (const auto& pt : curve) {
        CHECK(pt.price < prev);  // monotone decreasing in weight
        prev = pt.price;
        if (pt.weight == fx("0.5")) at_half = pt.price;
        if (pt.weight == fx("0.7")) at_07 = pt.price;
    }
    CHECK(abs(at_half - Fixed::one()) <= Fixed::from_raw(2));
    CHECK(abs(at_07 - fx("0.995")) <= fx("0.001"));

    // higher amplification flattens the curve
    auto flat = price_curve(Fixed::from_int(1000), Fixed::from_int(2000000),
                            {fx("0.7")});
    CHECK(abs(flat[0].price - Fixed::one()) < abs(at_07 - Fixed::one()));
}

TEST_CASE("price curve rejects degenerate weights") {
    CHECK_THROWS_AS(price_curve(Fixed::from_int(100), Fixed::from_int(2000000),
                                {Fixed::one()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(price_curve(Fixed::from_int(100), Fixed::zero(), {fx("0.5")}),
                    std::invalid_argument);
}

TEST_CASE("fixed point agrees with the long double reference") {
    std::mt19937_64 rng(0xa11ce);
    std::uniform_int_distribution<int> amp_pick(1, 5000);
    std::uniform_int_distribution<int> bal_exp(2, 6);
    std::uniform_int_distribution<int> mantissa(100, 999);

    for (int i = 0; i < 200; ++i) {
        Fixed amp = Fixed::from_int(amp_pick(rng));
        auto balance = [&] {
            std::int64_t scale = 1;
            for (int e = bal_exp(rng); e > 2; --e) scale *= 10;
            return Fixed::from_int(mantissa(rng) * scale);
        };
        PoolState pool = make_pool(amp, balance(), balance());

        long double a = amp.to_long_double();
        long double x = pool.bal_stable.to_long_double();
        long double y = pool.bal_counter.to_long_double();

        Fixed d = invariant_d(pool);
        long double dr = ref_d(a, x, y);
        CHECK(fabsl(d.to_long_double() - dr) / dr < 1e-9L);

        Fixed dx = pool.bal_stable / Fixed::from_int(10);
        Fixed dy = get_dy(pool, dx);
        long double dyr = y - ref_y(a, x + dx.to_long_double(), dr);
        CHECK(fabsl(dy.to_long_double() - dyr) / dyr < 1e-9L);

        long double wr = x / (x + y);
        CHECK(fabsl(weight(pool).to_long_double() - wr) / wr < 1e-9L);

        long double tx = dr * dr * dr / (4.0L * x * x * y);
        long double ty = dr * dr * dr / (4.0L * x * y * y);
        long double pr = (4.0L * a + tx) / (4.0L * a + ty);
        CHECK(fabsl(spot_price(pool).to_long_double() - pr) / pr < 1e-9L);
    }
}
