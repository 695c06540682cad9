#include "ratesim/cdp.hpp"

#include <stdexcept>

namespace ratesim {

CdpSystemState make_cdp(Fixed tcr_mcr, Fixed debt) {
    if (debt <= Fixed::zero()) {
        throw std::invalid_argument("cdp: debt must be positive");
    }
    if (tcr_mcr < Fixed::zero()) {
        throw std::invalid_argument("cdp: tcr_mcr must be non-negative");
    }
    return CdpSystemState{tcr_mcr, debt};
}

CdpSystemState accrue(const CdpSystemState& state, Fixed rate, Fixed dt) {
    Fixed factor = Fixed::one() + rate * dt;
    if (factor <= Fixed::zero()) {
        throw std::domain_error("cdp: accrual factor must stay positive");
    }
    return CdpSystemState{state.tcr_mcr / factor, state.debt * factor};
}

bool is_fully_levered(const CdpSystemState& state) {
    return state.tcr_mcr <= Fixed::one();
}

}  // namespace ratesim
