#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "ratesim/cdp.hpp"

using namespace ratesim;
using boost::multiprecision::int256_t;

namespace {

Fixed fx(const char* s) { return Fixed::from_decimal_string(s); }

}  // namespace

TEST_CASE("zero rate leaves the system unchanged") {
    CdpSystemState s = make_cdp(fx("1.4"), fx("1000000"));
    CdpSystemState next = accrue(s, Fixed::zero(), Fixed::one());
    CHECK(next.tcr_mcr == s.tcr_mcr);
    CHECK(next.debt == s.debt);
}

TEST_CASE("one year at ten percent") {
    CdpSystemState s = make_cdp(fx("1.2"), Fixed::one());
    CdpSystemState next = accrue(s, fx("0.1"), Fixed::one());
    CHECK(next.debt == fx("1.1"));
    CHECK(next.tcr_mcr == fx("1.090909090909090909"));  // 1.2/1.1 to nearest
}

TEST_CASE("accrual is monotone in rate and time") {
    CdpSystemState s = make_cdp(fx("1.5"), Fixed::one());
    CHECK(accrue(s, fx("0.2"), fx("0.1")).tcr_mcr <
          accrue(s, fx("0.1"), fx("0.1")).tcr_mcr);
    CHECK(accrue(s, fx("0.1"), fx("0.2")).tcr_mcr <
          accrue(s, fx("0.1"), fx("0.1")).tcr_mcr);
}

TEST_CASE("negative rates expand the ratio") {
    CdpSystemState s = make_cdp(fx("1.2"), Fixed::one());
    CHECK(accrue(s, fx("-0.1"), Fixed::one()).tcr_mcr > s.tcr_mcr);
}

TEST_CASE("implied collateral value is conserved") {
    // at unit-scale debt the product debt * tcr_mcr moves by at most 2 raw
    CdpSystemState s = make_cdp(fx("1.37"), fx("0.8"));
    Fixed before = s.debt * s.tcr_mcr;
    for (int k = 0; k < 50; ++k) {
        s = accrue(s, fx("0.13"), fx("0.01"));
        Fixed after = s.debt * s.tcr_mcr;
        CHECK(abs(after - before) <= Fixed::from_raw(2));
        before = after;
    }

    // at large debt the bound scales with the magnitudes involved
    CdpSystemState big = make_cdp(fx("1.37"), fx("1000000"));
    Fixed prod0 = big.debt * big.tcr_mcr;
    CdpSystemState big1 = accrue(big, fx("0.13"), fx("0.01"));
    Fixed prod1 = big1.debt * big1.tcr_mcr;
    CHECK(abs(prod1 - prod0) <= big.debt * Fixed::from_raw(2) + Fixed::from_raw(2));
}

TEST_CASE("per step accrual matches the exact rational oracle") {
    using boost::multiprecision::cpp_int;
    const Fixed rate = fx("0.1");
    const Fixed dt = fx("0.5") / fx("365.25");
    const Fixed factor = Fixed::one() + rate * dt;

    CdpSystemState s = make_cdp(fx("1.5"), Fixed::one());
    // exact ratio after k steps is ratio0 * scale^k / factor_raw^k
    cpp_int num(static_cast<std::int64_t>(fx("1.5").raw()));
    cpp_int den(1);
    const cpp_int f(static_cast<std::int64_t>(factor.raw()));

    for (int k = 1; k <= 400; ++k) {
        s = accrue(s, rate, dt);
        num *= Fixed::kScale;
        den *= f;
        cpp_int oracle = (2 * num + den) / (2 * den);  // round to nearest
        cpp_int got(static_cast<std::int64_t>(s.tcr_mcr.raw()));
        CHECK(abs(got - oracle) <= 2 * k);
    }
}

TEST_CASE("small steps approach continuous discounting") {
    const long double r = 0.1L;
    const int n = 10000;
    const Fixed dt = Fixed::one() / Fixed::from_int(n);
    CdpSystemState s = make_cdp(fx("1.5"), Fixed::one());
    for (int k = 0; k < n; ++k) s = accrue(s, fx("0.1"), dt);
    long double expect = 1.5L * expl(-r);
    CHECK(fabsl(s.tcr_mcr.to_long_double() - expect) / expect < 1e-3L);
}

TEST_CASE("full leverage boundary") {
    CHECK(is_fully_levered(make_cdp(Fixed::one(), Fixed::one())));
    CHECK(is_fully_levered(make_cdp(fx("0.8"), Fixed::one())));
    CHECK(!is_fully_levered(make_cdp(fx("1.6"), Fixed::one())));
}

TEST_CASE("constant rate reaches full leverage at the analytic time") {
    const Fixed rate = fx("0.1");
    const Fixed dt = fx("0.5") / fx("365.25");
    CdpSystemState s = make_cdp(fx("1.2"), Fixed::one());
    int steps = 0;
    while (!is_fully_levered(s)) {
        s = accrue(s, rate, dt);
        ++steps;
    }
    long double t_star = logl(1.2L) / 0.1L;  // 1.8232...
    long double t_sim = dt.to_long_double() * steps;
    CHECK(fabsl(t_sim - t_star) <= 2.0L * dt.to_long_double());
}

TEST_CASE("validation and the accrual precondition") {
    CHECK_THROWS_AS(make_cdp(fx("1.2"), Fixed::zero()), std::invalid_argument);
    CHECK_THROWS_AS(make_cdp(fx("-0.1"), Fixed::one()), std::invalid_argument);
    CdpSystemState s = make_cdp(fx("1.2"), Fixed::one());
    CHECK_THROWS_AS(accrue(s, fx("-200"), fx("0.01")), std::domain_error);
    CHECK_THROWS_AS(accrue(s, fx("-100"), fx("0.01")), std::domain_error);  // exactly zero
}
