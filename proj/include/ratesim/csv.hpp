// CSV artifacts. Values are rendered by Fixed::to_decimal_string at full
// precision, so outputs for identical inputs are byte-identical. Files are
// written to a temp path and renamed into place; nothing partial is left
// behind on failure.
#pragma once

#include <string>
#include <vector>

#include "ratesim/sim.hpp"
#include "ratesim/stableswap.hpp"

namespace ratesim {

inline constexpr const char* kSimCsvHeader =
    "step,t_years,weight,e_norm,e_p,e_i,e_d,e_ctrl,rate,tcr_mcr,debt";

std::string sim_result_csv(const SimResult& result);
std::string sweep_csv(const std::vector<SweepPoint>& table);
std::string curve_csv(const std::vector<CurvePoint>& curve);

// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace ratesim
