#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gridcharge/csv.hpp"

namespace gridcharge {

enum class AvailabilityKind { constant, profile, hydro };

// One row of the generation-mix table: share of installed capacity,
// emission rate in g CO2 per kWh, generation cost per kWh.
struct SourceSpec {
    std::string name;
    double mix_share = 0.0;
    double emission_rate = 0.0;  // g/kWh
    double unit_cost = 0.0;      // currency/kWh
    AvailabilityKind kind = AvailabilityKind::constant;
};

struct DemandProfile {
    std::vector<double> values;  // MW, one per step
    double step_hours = 1.0;
};

struct AvailabilityProfile {
    std::string source;
    std::vector<double> caps;  // MW, one per step
};

struct SystemCapacity {
    double p_max = 0.0;  // MW
};

inline constexpr double kVietnamPMaxMw = 46348.0;

// Bundled default mix table (Vietnam 2023).
std::vector<SourceSpec> vietnam_2023_sources();

// Parse and validate a source table from a config document of the form
// {"sources": {"coal": {"share":..,"emission_rate":..,"cost":..,
// "availability":"constant|profile|hydro"}, ...}}. Shares off from 1 by
// at most 1e-3 are renormalized; larger gaps are an error.
std::vector<SourceSpec> load_source_table(const nlohmann::json& config);

// Average 30-minute records within each hour, then across days per
// hour-of-day, producing a 24-value profile. Every half-hour slot of
// every covered day must be present exactly once.
DemandProfile hourly_demand_from_records(const std::vector<csv::MeterRecord>& records);

DemandProfile load_demand_csv(const std::filesystem::path& path);

// Gaussian daylight curve: weights exp(-(t-peak)^2 / (2 sigma^2)) on the
// in-window hours, zero elsewhere, normalized so the profile's energy
// equals daily_energy_mwh.
AvailabilityProfile pv_availability_profile(double peak_hour, double sigma_hours,
                                            std::pair<int, int> window,
                                            double daily_energy_mwh,
                                            double step_hours);

// Capacity-weighted aggregation of per-cluster capacity-factor series,
// scaled so the annual-equivalent energy of the aggregate equals
// annual_energy_mwh, then averaged by hour-of-day.
AvailabilityProfile wind_availability_profile(
    const std::vector<std::vector<double>>& cluster_factors,
    const std::vector<double>& cluster_mw, double annual_energy_mwh,
    double step_hours);

struct WindClusterData {
    std::vector<std::vector<double>> factors;
    std::vector<double> installed_mw;
};

// Manifest `cluster_id,installed_mw`; series files `<dir>/cluster_<id>.csv`.
WindClusterData load_wind_clusters(const std::filesystem::path& manifest);

AvailabilityProfile constant_availability(const SourceSpec& spec,
                                          SystemCapacity capacity, int horizon);

}  // namespace gridcharge
