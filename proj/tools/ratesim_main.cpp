// ratesim: deterministic simulator for a PID-controlled stablecoin
// interest rate. Subcommands: simulate, sweep-phi, pool-curve.
//
// Exit codes: 0 success, 1 usage/config error, 2 computational error.
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ratesim/csv.hpp"
#include "ratesim/scenario_json.hpp"
#include "ratesim/sim.hpp"
#include "ratesim/stableswap.hpp"
#include "ratesim/svg.hpp"

namespace {

using namespace ratesim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCompute = 2;

int run_simulate(const std::string& config_path, const std::string& out_csv,
                 const std::string& plot_path) {
    Scenario scenario = scenario_from_json_file(config_path);
    SimResult result = run(scenario);

    write_file_atomic(out_csv, sim_result_csv(result));
    if (!plot_path.empty()) {
        Series rate{"rate", {}, {}};
        Series ratio{"tcr_mcr", {}, {}};
        for (const SimRow& row : result.rows) {
            rate.x.push_back(row.t.to_double());
            rate.y.push_back(row.update.rate.to_double());
            ratio.x.push_back(row.t.to_double());
            ratio.y.push_back(row.tcr_mcr.to_double());
        }
        write_file_atomic(plot_path, line_chart_svg("simulation", "t (years)",
                                                    {rate, ratio}));
    }

    std::cout << "simulate: rows=" << result.rows.size()
              << " terminated_early=" << (result.terminated_early ? "true" : "false");
    if (result.t_terminal) {
        std::cout << " t_terminal=" << result.t_terminal->to_decimal_string();
    }
    std::cout << " out=" << out_csv << '\n';
    return kExitOk;
}

int run_sweep(const SweepConfig& cfg, const std::string& out_csv,
              const std::string& plot_path) {
    std::vector<SweepPoint> table =
        sweep_phi(cfg.ratios, cfg.target_years, cfg.held_weight, cfg.controller_cfg,
                  cfg.dt, cfg.tol_years, cfg.workers);

    write_file_atomic(out_csv, sweep_csv(table));
    if (!plot_path.empty()) {
        Series s{"phi_star", {}, {}};
        for (const SweepPoint& p : table) {
            s.x.push_back(p.ratio.to_double());
            s.y.push_back(p.phi_star.to_double());
        }
        write_file_atomic(plot_path, line_chart_svg("phi sweep", "TCR/MCR", {s}));
    }
    std::cout << "sweep-phi: ratios=" << table.size() << " out=" << out_csv << '\n';
    return kExitOk;
}

int run_pool_curve(const std::string& amp_text, const std::string& d_text,
                   const std::string& weights_text, const std::string& out_csv,
                   const std::string& plot_path) {
    Fixed amp = Fixed::from_decimal_string(amp_text);
    Fixed d = Fixed::from_decimal_string(d_text);
    std::vector<Fixed> weights = parse_range(weights_text);
    std::vector<CurvePoint> curve = price_curve(amp, d, weights);

    write_file_atomic(out_csv, curve_csv(curve));
    if (!plot_path.empty()) {
        Series s{"price", {}, {}};
        for (const CurvePoint& p : curve) {
            s.x.push_back(p.weight.to_double());
            s.y.push_back(p.price.to_double());
        }
        write_file_atomic(plot_path, line_chart_svg("pool price curve", "weight", {s}));
    }
    std::cout << "pool-curve: rows=" << curve.size() << " out=" << out_csv << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic PID interest-rate simulator"};
    app.require_subcommand(1);

    auto* sim_cmd = app.add_subcommand("simulate", "Run a scenario config");
    std::string sim_config, sim_out, sim_plot;
    sim_cmd->add_option("--config", sim_config, "Scenario JSON path")->required();
    sim_cmd->add_option("--out", sim_out, "Output CSV path")->required();
    sim_cmd->add_option("--plot", sim_plot, "Optional SVG path");

    auto* sweep_cmd = app.add_subcommand("sweep-phi", "Calibrate phi per starting ratio");
    std::string sweep_config, sweep_out, sweep_plot;
    std::string sweep_ratios, sweep_target, sweep_tol, sweep_held, sweep_dt;
    int sweep_workers = 0;
    sweep_cmd->add_option("--config", sweep_config, "Sweep JSON path");
    sweep_cmd->add_option("--ratios", sweep_ratios, "start:stop:step");
    sweep_cmd->add_option("--target-years", sweep_target, "Recovery target, years");
    sweep_cmd->add_option("--tol-years", sweep_tol, "Replay tolerance, years");
    sweep_cmd->add_option("--held-weight", sweep_held, "Held pool weight");
    sweep_cmd->add_option("--dt", sweep_dt, "Timestep, years");
    sweep_cmd->add_option("--workers", sweep_workers, "Parallel workers");
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path")->required();
    sweep_cmd->add_option("--plot", sweep_plot, "Optional SVG path");

    auto* curve_cmd = app.add_subcommand("pool-curve", "Emit weight/price curve");
    std::string curve_amp, curve_d = "2000000", curve_weights = "0.05:0.95:0.01";
    std::string curve_out, curve_plot;
    curve_cmd->add_option("--amp", curve_amp, "Amplification A")->required();
    curve_cmd->add_option("--d", curve_d, "Pool invariant D");
    curve_cmd->add_option("--weights", curve_weights, "start:stop:step");
    curve_cmd->add_option("--out", curve_out, "Output CSV path")->required();
    curve_cmd->add_option("--plot", curve_plot, "Optional SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim_cmd->parsed()) {
            return run_simulate(sim_config, sim_out, sim_plot);
        }
        if (sweep_cmd->parsed()) {
            SweepConfig cfg = sweep_config.empty() ? SweepConfig::defaults()
                                                   : sweep_from_json_file(sweep_config);
            if (!sweep_ratios.empty()) cfg.ratios = parse_range(sweep_ratios);
            if (!sweep_target.empty()) cfg.target_years = Fixed::from_decimal_string(sweep_target);
            if (!sweep_tol.empty()) cfg.tol_years = Fixed::from_decimal_string(sweep_tol);
            if (!sweep_held.empty()) cfg.held_weight = Fixed::from_decimal_string(sweep_held);
            if (!sweep_dt.empty()) cfg.dt = Fixed::from_decimal_string(sweep_dt);
            if (sweep_workers > 0) cfg.workers = sweep_workers;
            if (cfg.ratios.empty()) {
                throw std::invalid_argument("sweep-phi needs --ratios or a config file");
            }
            return run_sweep(cfg, sweep_out, sweep_plot);
        }
        if (curve_cmd->parsed()) {
            return run_pool_curve(curve_amp, curve_d, curve_weights, curve_out, curve_plot);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCompute;
    }
    return kExitUsage;
}
