#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridcharge/charging.hpp"
#include "gridcharge/emissions.hpp"
#include "gridcharge/scenarios.hpp"
#include "gridcharge/ucp.hpp"

namespace gridcharge {

struct ExperimentConfig {
    double capacity_mw = kVietnamPMaxMw;
    std::filesystem::path demand_csv;
    std::filesystem::path wind_manifest;
    std::filesystem::path source_table;  // empty -> bundled Vietnam table
    std::filesystem::path prices_csv;
    std::string price_currency = "EUR";
    std::string base_currency = "VND";
    std::map<std::string, double> exchange_rates = {{"EUR", 27890.625},
                                                    {"USD", 25500.0},
                                                    {"VND", 1.0}};
    double carbon_price_per_ton = kDefaultCarbonPriceVndPerTon;
    std::vector<double> lambda_values = {0.1, 1.0, 10.0};
    int n_runs = 100;
    std::uint64_t master_seed = 1;
    FleetParams fleet;
    double fine_step_hours = 1.0 / 6.0;
    std::string price_mode = "sample";  // "sample" | "mean"
    bool resample_inflows = true;
    double station_capacity_kw = 0.0;  // <= 0 -> N * socket power
    bool hydro_power_cap = true;

    // Paths in the file are resolved against its directory.
    static ExperimentConfig load(const std::filesystem::path& path);
    std::string canonical_json() const;
    std::uint64_t config_hash() const;
};

struct PolicyResult {
    std::string name;                 // "lambda_0.1", "power_allocation", "fifs"
    std::optional<double> lambda;     // empty for fifs
    ScheduleMetrics metrics;
};

struct RunReport {
    int run_index = 0;
    DispatchSchedule dispatch;
    IntensitySeries intensity;            // hourly
    EmissionPriceSeries emission_prices;  // hourly
    std::vector<double> price_profile;    // fine grid, base currency
    std::vector<EvSession> fleet;
    std::vector<PolicyResult> policies;
    std::vector<AllocationMatrix> allocations;  // parallel to policies
};

struct PolicyStats {
    std::string name;
    double mean_cost = 0.0, sd_cost = 0.0, min_cost = 0.0, max_cost = 0.0;
    double mean_emissions = 0.0, sd_emissions = 0.0, min_emissions = 0.0,
           max_emissions = 0.0;
    double delta_cost_vs_fifs = 0.0;       // (fifs - policy) / fifs
    double delta_emissions_vs_fifs = 0.0;
};

struct SummaryStats {
    int n_runs = 0;
    std::vector<PolicyStats> policies;
};

// Loads all data files once; individual runs are cheap and reproducible
// from (master_seed, run_index) alone.
class Experiment {
public:
    explicit Experiment(ExperimentConfig config);

    RunReport run_single(int run_index) const;
    SummaryStats run_monte_carlo() const;

    const ExperimentConfig& config() const { return cfg_; }
    const UcpInstance& base_instance() const { return base_; }
    const PriceSampler& price_sampler() const { return sampler_; }

    static SummaryStats summarize(const std::vector<RunReport>& runs);

private:
    ChargingInstance charging_instance(const RunReport& run,
                                       const std::vector<double>& fine_emission_price,
                                       double lambda) const;

    ExperimentConfig cfg_;
    UcpInstance base_;  // inflows filled per run
    PriceSampler sampler_;
    double price_fx_ = 1.0;
};

// Output emission. File contents are deterministic (no timestamps).
void emit_summary(const SummaryStats& stats, const ExperimentConfig& cfg,
                  const std::filesystem::path& out_dir);
void emit_run_outputs(const RunReport& run, const ExperimentConfig& cfg,
                      const std::filesystem::path& out_dir);
void emit_dispatch_outputs(const DispatchSchedule& dispatch,
                           const IntensitySeries& intensity,
                           const EmissionPriceSeries& prices,
                           const std::filesystem::path& out_dir);

}  // namespace gridcharge
