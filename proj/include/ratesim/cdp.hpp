// Aggregate CDP system: leverage (TCR/MCR) and debt under interest accrual.
//
// Accrual compounds once per step and holds the implied collateral value
// constant, so debt and the leverage ratio move inversely.
#pragma once

#include "ratesim/fixed.hpp"

namespace ratesim {

struct CdpSystemState {
    Fixed tcr_mcr;  // total/minimum collateral ratio, >= 0
    Fixed debt;     // outstanding stablecoin debt, > 0
};

// Throws std::invalid_argument unless debt > 0 and tcr_mcr >= 0.
CdpSystemState make_cdp(Fixed tcr_mcr, Fixed debt);

// debt' = debt * (1 + rate*dt), tcr_mcr' = tcr_mcr / (1 + rate*dt).
// Throws std::domain_error when 1 + rate*dt is not positive.
CdpSystemState accrue(const CdpSystemState& state, Fixed rate, Fixed dt);

// True iff tcr_mcr <= 1.
bool is_fully_levered(const CdpSystemState& state);

}  // namespace ratesim
