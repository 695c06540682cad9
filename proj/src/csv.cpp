#include "ratesim/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ratesim {

std::string sim_result_csv(const SimResult& result) {
    std::string out = kSimCsvHeader;
    out.push_back('\n');
    for (const SimRow& row : result.rows) {
        out += std::to_string(row.step);
        out.push_back(',');
        out += row.t.to_decimal_string();
        out.push_back(',');
        out += row.weight.to_decimal_string();
        out.push_back(',');
        out += row.update.e_norm.to_decimal_string();
        out.push_back(',');
        out += row.update.e_p.to_decimal_string();
        out.push_back(',');
        out += row.update.e_i.to_decimal_string();
        out.push_back(',');
        out += row.update.e_d.to_decimal_string();
        out.push_back(',');
        out += row.update.e_ctrl.to_decimal_string();
        out.push_back(',');
        out += row.update.rate.to_decimal_string();
        out.push_back(',');
        out += row.tcr_mcr.to_decimal_string();
        out.push_back(',');
        out += row.debt.to_decimal_string();
        out.push_back('\n');
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& table) {
    std::string out = "ratio,phi_star\n";
    for (const SweepPoint& p : table) {
        out += p.ratio.to_decimal_string();
        out.push_back(',');
        out += p.phi_star.to_decimal_string();
        out.push_back('\n');
    }
    return out;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::string out = "weight,price\n";
    for (const CurvePoint& p : curve) {
        out += p.weight.to_decimal_string();
        out.push_back(',');
        out += p.price.to_decimal_string();
        out.push_back('\n');
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            out.close();
            std::remove(tmp.c_str());
            throw std::runtime_error("short write to '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move output into '" + path + "': " + ec.message());
    }
}

}  // namespace ratesim
